#include "polaron/lattice.hpp"

#include <cmath>
#include <limits>

namespace polaron {

namespace {

struct LatticeSums {
    std::vector<double> h3phi2, omega_eps;
    double theta;
};

// integral of phi^2 over the cube cell centered at (cx,cy,cz) with side h,
// by recursive subdivision; sharp-band cells fully inside/outside are exact
double cell_mass(const CutoffProfile& cut, double cx, double cy, double cz, double h,
                 int depth) {
    double ax = std::abs(cx), ay = std::abs(cy), az = std::abs(cz);
    double dx = std::max(0.0, ax - h / 2), dy = std::max(0.0, ay - h / 2),
           dz = std::max(0.0, az - h / 2);
    double rmin = std::sqrt(dx * dx + dy * dy + dz * dz);
    double ux = ax + h / 2, uy = ay + h / 2, uz = az + h / 2;
    double rmax = std::sqrt(ux * ux + uy * uy + uz * uz);
    if (rmax < cut.support_lo() || rmin > cut.support_hi()) return 0.0;
    if (cut.kind == CutoffProfile::Sharp && cut.radial_exponent == 0.0 &&
        rmin >= cut.lambda && rmax <= cut.Lambda)
        return h * h * h * cut.normalization * cut.normalization;
    if (depth == 0) {
        double v = cut(std::sqrt(cx * cx + cy * cy + cz * cz));
        return h * h * h * v * v;
    }
    double m = 0, q = h / 4;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1})
                m += cell_mass(cut, cx + sx * q, cy + sy * q, cz + sz * q, h / 2,
                               depth - 1);
    return m;
}

LatticeSums lattice_sums(const CutoffProfile& cut, const LatticeConfig& cfg,
                         std::vector<std::array<double, 3>>* points = nullptr) {
    if (cfg.d != 3) throw Error(Error::InvalidInput, "lattice: d must be 3");
    if (cfg.eps_ph <= 0)
        throw Error(Error::InvalidInput, "lattice: eps_ph must be positive");
    if (cut(0.0) != 0.0)
        throw Error(Error::OriginInSupport,
                    "lattice: cutoff supported at l = 0 where polarization "
                    "vectors are undefined");
    double h = 2 * M_PI / cfg.a;
    long nmax = static_cast<long>(std::floor(cfg.a * cfg.L));
    // the profile vanishes beyond its support; no need to scan further
    long nhi = static_cast<long>(std::ceil(cut.support_hi() / h)) + 1;
    nmax = std::min(nmax, nhi);
    LatticeSums s;
    s.theta = 0;
    for (long nx = -nmax; nx <= nmax; ++nx)
        for (long ny = -nmax; ny <= nmax; ++ny)
            for (long nz = -nmax; nz <= nmax; ++nz) {
                if (nx == 0 && ny == 0 && nz == 0)
                    continue;  // polarization undefined at l = 0
                double lx = h * nx, ly = h * ny, lz = h * nz;
                double r = std::sqrt(lx * lx + ly * ly + lz * lz);
                double mass = cell_mass(cut, lx, ly, lz, h, 4);
                if (mass == 0.0) continue;
                s.h3phi2.push_back(mass);
                s.omega_eps.push_back(r + cfg.eps_ph);
                if (points) points->push_back({lx, ly, lz});
            }
    for (size_t i = 0; i < s.h3phi2.size(); ++i)
        s.theta += s.h3phi2[i] / (s.omega_eps[i] * s.omega_eps[i]);
    s.theta *= 2.0 / 3;
    return s;
}

// transverse polarization frame for l != 0
void polarization(const std::array<double, 3>& l, std::array<double, 3>& e1,
                  std::array<double, 3>& e2) {
    double rho = std::hypot(l[0], l[1]);
    double r = std::sqrt(l[0] * l[0] + l[1] * l[1] + l[2] * l[2]);
    if (rho < 1e-14 * r) {  // l along +-z
        e1 = {1, 0, 0};
        e2 = {0, 1, 0};
        return;
    }
    e1 = {l[1] / rho, -l[0] / rho, 0};  // (l x z)/|l x z|
    std::array<double, 3> lhat = {l[0] / r, l[1] / r, l[2] / r};
    e2 = {lhat[1] * e1[2] - lhat[2] * e1[1], lhat[2] * e1[0] - lhat[0] * e1[2],
          lhat[0] * e1[1] - lhat[1] * e1[0]};
}

double closed_energy_from_sums(const LatticeSums& s, double theta,
                               const ModelParams& prm, const Quadrature& q) {
    double p2 = 0;
    for (double pi : prm.p) p2 += pi * pi;
    double a2 = prm.alpha * prm.alpha;
    double kinetic = p2 / (2 * (prm.m + a2 * theta));
    if (a2 == 0) return kinetic;
    auto integrand = [&](double t) {
        double S2 = 0, zeta = 0;
        for (size_t i = 0; i < s.h3phi2.size(); ++i) {
            double den = t * t + s.omega_eps[i] * s.omega_eps[i];
            S2 += s.h3phi2[i] / (den * den);
            zeta += s.h3phi2[i] / den;
        }
        zeta *= 2.0 / 3;
        return a2 * t * t * S2 / (prm.m + a2 * zeta);
    };
    double trace =
        (2 / M_PI) *
        integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), q);
    return kinetic + trace;
}

}  // namespace

LatticeMatrices build(const CutoffProfile& cut, const ModelParams& prm,
                      const LatticeConfig& cfg) {
    LatticeMatrices M;
    LatticeSums s = lattice_sums(cut, cfg, &M.points);
    size_t npt = M.points.size();
    M.D = static_cast<int>(2 * npt);
    if (M.D > cfg.cap)
        throw Error(Error::LatticeTooLarge, "lattice: dimension exceeds the cap");
    M.h3phi2 = s.h3phi2;
    M.omega_eps = s.omega_eps;
    M.theta = s.theta;
    M.A0 = Eigen::MatrixXd::Zero(M.D, M.D);
    for (int mu = 0; mu < 3; ++mu) M.v[mu] = Eigen::VectorXd::Zero(M.D);
    for (size_t i = 0; i < npt; ++i) {
        std::array<double, 3> e1, e2;
        polarization(M.points[i], e1, e2);
        double w = std::sqrt(s.h3phi2[i]);  // sqrt(h^3) phi(|l|)
        double w2 = s.omega_eps[i] * s.omega_eps[i];
        M.A0(2 * i, 2 * i) = w2;
        M.A0(2 * i + 1, 2 * i + 1) = w2;
        for (int mu = 0; mu < 3; ++mu) {
            M.v[mu][2 * i] = w * e1[mu];
            M.v[mu][2 * i + 1] = w * e2[mu];
        }
    }
    M.P = Eigen::MatrixXd::Zero(M.D, M.D);
    for (int mu = 0; mu < 3; ++mu) M.P += M.v[mu] * M.v[mu].transpose();
    double a2m = prm.alpha * prm.alpha / prm.m;
    M.A = M.A0 + a2m * M.P;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(M.D);
    for (int mu = 0; mu < 3; ++mu) w += prm.p[mu] * M.v[mu];
    M.f = (prm.alpha / prm.m) * M.A.ldlt().solve(w);
    return M;
}

double energy_eigen(const LatticeMatrices& M, const ModelParams& prm) {
    double p2 = 0;
    for (double pi : prm.p) p2 += pi * pi;
    Eigen::MatrixXd rA = psd_sqrt(M.A), rA0 = psd_sqrt(M.A0);
    double trace = 0;
    for (int i = 0; i < M.D; ++i) trace += rA(i, i) - rA0(i, i);
    return p2 / (2 * prm.m) - 0.5 * M.f.dot(M.A * M.f) + 0.5 * trace;
}

double energy_closed(const LatticeMatrices& M, const ModelParams& prm,
                     const Quadrature& q) {
    LatticeSums s;
    s.h3phi2 = M.h3phi2;
    s.omega_eps = M.omega_eps;
    s.theta = M.theta;
    return closed_energy_from_sums(s, M.theta, prm, q);
}

Convergence converge_to_Ep(const CutoffProfile& cut, const ModelParams& prm,
                           const std::vector<LatticeConfig>& schedule,
                           const Quadrature& q) {
    Convergence out;
    auto eb = energy_breakdown(cut, prm, q);
    out.target = eb.E_p;
    for (const auto& cfg : schedule) {
        LatticeSums s = lattice_sums(cut, cfg);
        double e = closed_energy_from_sums(s, s.theta, prm, q);
        out.energies.push_back(e);
        out.gaps.push_back(std::abs(e - out.target));
    }
    return out;
}

double extrapolate_to_Ep(const CutoffProfile& cut, const ModelParams& prm,
                         const std::vector<double>& a_list,
                         const std::vector<double>& L_list,
                         const std::vector<double>& eps_list,
                         const Quadrature& q) {
    if (a_list.size() != L_list.size() || a_list.size() < 3 || eps_list.size() < 2)
        throw Error(Error::InvalidInput, "extrapolate_to_Ep: bad schedule");
    size_t ne = eps_list.size();
    double r = eps_list[ne - 1] / eps_list[ne - 2];  // expected 1/2
    std::vector<double> acc;
    for (size_t i = 0; i < a_list.size(); ++i) {
        auto at = [&](double eps) {
            LatticeConfig cfg;
            cfg.a = a_list[i];
            cfg.L = L_list[i];
            cfg.eps_ph = eps;
            LatticeSums s = lattice_sums(cut, cfg);
            return closed_energy_from_sums(s, s.theta, prm, q);
        };
        double e1 = at(eps_list[ne - 2]), e2 = at(eps_list[ne - 1]);
        acc.push_back((e2 - r * e1) / (1 - r));  // kill the O(eps) term
    }
    size_t n = acc.size();
    double x0 = acc[n - 3], x1 = acc[n - 2], x2 = acc[n - 1];
    double denom = (x2 - x1) - (x1 - x0);
    if (std::abs(denom) < 1e-15 * (1 + std::abs(x2))) return x2;
    return x2 - (x2 - x1) * (x2 - x1) / denom;
}

}  // namespace polaron
