#include "polaron/binding.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace polaron {

namespace {

// s-wave u-kernel of 2(-Delta + mu^2)^{-1}; continuous, kink on the diagonal
double swave_green(double mu, double r1, double r2) {
    double rl = std::min(r1, r2), rg = std::max(r1, r2);
    if (mu == 0) return 2 * rl;
    return (std::exp(-mu * (rg - rl)) - std::exp(-mu * (rg + rl))) / mu;
}

double kernel_norm_at(const PotentialSpec& V, double E, int n) {
    return bs_kernel(V, E, n).norm();
}

// two-grid Richardson for the midpoint Nystrom eigenvalue (observed order 2)
double kernel_norm_extrapolated(const PotentialSpec& V, double E, int n) {
    double x1 = kernel_norm_at(V, E, n / 2);
    double x2 = kernel_norm_at(V, E, n);
    return (4 * x2 - x1) / 3;
}

}  // namespace

PotentialSpec PotentialSpec::well(double V0, double R) {
    if (V0 <= 0 || R <= 0)
        throw Error(Error::InvalidInput, "potential well: need V0 > 0 and R > 0");
    PotentialSpec p;
    p.kind = SphericalWell;
    p.V0 = V0;
    p.R = R;
    return p;
}

PotentialSpec PotentialSpec::table(std::vector<double> r, std::vector<double> v) {
    if (r.size() != v.size() || r.size() < 2)
        throw Error(Error::InvalidInput, "tabulated potential: bad table");
    for (size_t i = 1; i < r.size(); ++i)
        if (r[i] <= r[i - 1])
            throw Error(Error::InvalidInput, "tabulated potential: r not increasing");
    for (double x : v)
        if (x > 0)
            throw Error(Error::InvalidInput, "tabulated potential: V must be <= 0");
    PotentialSpec p;
    p.kind = TabulatedRadial;
    p.grid = std::move(r);
    p.values = std::move(v);
    return p;
}

double PotentialSpec::operator()(double r) const {
    if (kind == SphericalWell) return r < R ? -V0 : 0.0;
    if (r <= grid.front()) return values.front();
    if (r >= grid.back()) return 0.0;
    auto it = std::upper_bound(grid.begin(), grid.end(), r);
    size_t i = it - grid.begin();
    double t = (r - grid[i - 1]) / (grid[i] - grid[i - 1]);
    return values[i - 1] + t * (values[i] - values[i - 1]);
}

double PotentialSpec::r_max() const {
    return kind == SphericalWell ? R : grid.back();
}

double PotentialSpec::norm_3_2(const Quadrature& q) const {
    if (kind == SphericalWell)
        return std::pow(std::pow(V0, 1.5) * (4 * M_PI / 3) * R * R * R, 2.0 / 3);
    double I = integrate(
        [&](double r) {
            return std::pow(std::abs((*this)(r)), 1.5) * 4 * M_PI * r * r;
        },
        0.0, r_max(), q);
    return std::pow(I, 2.0 / 3);
}

BSOperator bs_kernel(const PotentialSpec& V, double E, int grid_size) {
    if (E > 0) throw Error(Error::InvalidInput, "bs_kernel: E must be <= 0");
    if (grid_size < 8)
        throw Error(Error::GridTooCoarse, "bs_kernel: grid_size < 8");
    BSOperator K;
    K.E = E;
    double mu = std::sqrt(2 * std::abs(E));
    double h = V.r_max() / grid_size;
    K.r.resize(grid_size);
    K.w.assign(grid_size, h);
    std::vector<double> sv(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        K.r[i] = (i + 0.5) * h;
        sv[i] = std::sqrt(std::abs(V(K.r[i])) * h);
    }
    K.kernel.resize(grid_size, grid_size);
    for (int i = 0; i < grid_size; ++i)
        for (int j = 0; j <= i; ++j) {
            double v = sv[i] * sv[j] * swave_green(mu, K.r[i], K.r[j]);
            K.kernel(i, j) = v;
            K.kernel(j, i) = v;
        }
    return K;
}

double BSOperator::norm() const {
    if (kernel.norm() == 0.0) return 0.0;
    int n = static_cast<int>(kernel.rows());
    return op_norm([&](const Eigen::VectorXd& x) { return kernel * x; }, n, 1e-12);
}

int bs_count_above(const BSOperator& K, double threshold) {
    auto es = sym_eigen(K.kernel);
    int c = 0;
    for (int i = 0; i < es.values.size(); ++i)
        if (es.values[i] >= threshold) ++c;
    return c;
}

double bs_top_eigenvalue_3d(const PotentialSpec& V, double E, int n_per_R) {
    if (E > 0)
        throw Error(Error::InvalidInput, "bs_top_eigenvalue_3d: E must be <= 0");
    double mu = std::sqrt(2 * std::abs(E));
    double h = V.r_max() / n_per_R;
    long nmax = n_per_R;  // cube just covering the support
    std::vector<std::array<double, 3>> pts;
    std::vector<double> sv;
    for (long ix = -nmax; ix <= nmax; ++ix)
        for (long iy = -nmax; iy <= nmax; ++iy)
            for (long iz = -nmax; iz <= nmax; ++iz) {
                double x = (ix + 0.5) * h, y = (iy + 0.5) * h, z = (iz + 0.5) * h;
                double r = std::sqrt(x * x + y * y + z * z);
                double v = std::abs(V(r));
                if (v == 0.0) continue;
                pts.push_back({x, y, z});
                sv.push_back(std::sqrt(v * h * h * h));
            }
    int n = static_cast<int>(pts.size());
    Eigen::MatrixXd K(n, n);
    double rb = std::cbrt(3 * h * h * h / (4 * M_PI));  // equivalent-ball radius
    double diag = 3.0 / (4 * M_PI * rb);  // ball average of 1/(2 pi |x-y|)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double g;
            if (i == j) {
                g = diag;
            } else {
                double dx = pts[i][0] - pts[j][0], dy = pts[i][1] - pts[j][1],
                       dz = pts[i][2] - pts[j][2];
                double d = std::sqrt(dx * dx + dy * dy + dz * dz);
                g = std::exp(-mu * d) / (2 * M_PI * d);
            }
            K(i, j) = K(j, i) = sv[i] * sv[j] * g;
        }
    return op_norm([&](const Eigen::VectorXd& x) { return K * x; }, n, 1e-10);
}

int radial_bound_states(const PotentialSpec& V, double m, double e, double r_max,
                        int n) {
    double h = r_max / (n + 1);
    std::vector<double> diag(n), off(n - 1, -1.0 / (2 * m * h * h));
    for (int i = 0; i < n; ++i) diag[i] = 1.0 / (m * h * h) + V((i + 1) * h);
    return tridiag_count_below(diag, off, e);
}

CriticalMass critical_mass(const PotentialSpec& V, double eps, int grid_size) {
    if (eps < 0) throw Error(Error::InvalidInput, "critical_mass: eps < 0");
    CriticalMass out;
    out.norm0 = kernel_norm_extrapolated(V, 0.0, grid_size);
    out.m_c = 1.0 / out.norm0;
    if (eps == 0) {
        out.norm_eps = out.norm0;
        out.m_eps = out.m_c;
    } else {
        out.norm_eps = kernel_norm_extrapolated(V, -eps, grid_size);
        out.m_eps = 1.0 / out.norm_eps;
    }
    return out;
}

double lieb_bound(const PotentialSpec& V, const Quadrature& q) {
    double c = 3.0 / (std::sqrt(2.0) * std::pow(M_PI, 2.0 / 3) * std::pow(4.0, 5.0 / 3));
    double n = V.norm_3_2(q);
    return c / (n * n);
}

BindingReport coupling_window(const CutoffProfile& cut, const PotentialSpec& V,
                              double m, double eps, double alpha, int grid_size,
                              const Quadrature& q) {
    auto cm = critical_mass(V, eps, grid_size);
    if (m >= cm.m_c)
        throw Error(Error::MassAboveCritical,
                    "coupling_window: mass at or above the critical mass, the "
                    "coupling window is degenerate");
    double c = double(cut.d - 1) / cut.d;
    double W = weighted_norm(cut, 2, q);
    BindingReport rep;
    rep.m_c = cm.m_c;
    rep.m_eps = cm.m_eps;
    rep.alpha0 = std::sqrt((cm.m_c - m) / (c * W));
    rep.alpha_eps = std::sqrt((cm.m_eps - m) / (c * W));
    rep.m_eff = m + alpha * alpha * c * W;
    if (cut.kind == CutoffProfile::Sharp && alpha != 0)
        rep.Lambda_bound = (cm.m_c - m) / (alpha * alpha * c * W /
                                           (cut.Lambda - cut.lambda)) +
                           cut.lambda;
    else
        rep.Lambda_bound = std::numeric_limits<double>::infinity();
    double a = std::abs(alpha);
    if (a < rep.alpha0)
        rep.verdict = BindingReport::NoGroundState;
    else if (a > rep.alpha_eps)
        rep.verdict = BindingReport::GroundStateLargeScale;
    else
        rep.verdict = BindingReport::Undecided;
    return rep;
}

UvWindow uv_window(const PotentialSpec& V, double m, double alpha, double lambda,
                   int grid_size) {
    if (alpha == 0)
        throw Error(Error::InvalidInput, "uv_window: alpha must be nonzero");
    auto cm = critical_mass(V, 0.0, grid_size);
    if (m >= cm.m_c)
        throw Error(Error::MassAboveCritical,
                    "uv_window: mass at or above the critical mass");
    UvWindow out;
    // threshold from m + (8 pi / 3) alpha^2 (Lambda - lambda) < m_c
    out.Lambda_no_gs = (3.0 / (8 * M_PI)) * (cm.m_c - m) / (alpha * alpha) + lambda;
    out.note =
        "no ground state below this cutoff; the onset above it exists but is "
        "not estimated here";
    return out;
}

}  // namespace polaron
