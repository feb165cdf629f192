#include "polaron/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polaron {

using cplx = std::complex<double>;

CutoffProfile CutoffProfile::sharp(double lambda, double Lambda, double normalization,
                                   int d) {
    if (lambda < 0 || Lambda <= lambda)
        throw Error(Error::InvalidInput, "CutoffProfile: need 0 <= lambda < Lambda");
    if (d < 3) throw Error(Error::InvalidInput, "CutoffProfile: need d >= 3");
    CutoffProfile c;
    c.kind = Sharp;
    c.lambda = lambda;
    c.Lambda = Lambda;
    c.normalization = normalization;
    c.d = d;
    return c;
}

CutoffProfile CutoffProfile::table(std::vector<double> grid,
                                   std::vector<double> values, double normalization,
                                   int d) {
    if (grid.size() < 2 || grid.size() != values.size())
        throw Error(Error::InvalidInput, "CutoffProfile: bad table");
    for (size_t i = 0; i + 1 < grid.size(); ++i)
        if (grid[i + 1] <= grid[i])
            throw Error(Error::InvalidInput, "CutoffProfile: grid not ascending");
    for (double v : values)
        if (v < 0) throw Error(Error::InvalidInput, "CutoffProfile: negative value");
    if (d < 3) throw Error(Error::InvalidInput, "CutoffProfile: need d >= 3");
    CutoffProfile c;
    c.kind = Tabulated;
    c.grid = std::move(grid);
    c.values = std::move(values);
    c.normalization = normalization;
    c.d = d;
    return c;
}

double CutoffProfile::operator()(double r) const {
    double base;
    if (kind == Sharp) {
        base = (r >= lambda && r <= Lambda) ? normalization : 0.0;
    } else {
        if (r < grid.front() || r > grid.back()) return 0.0;
        auto it = std::upper_bound(grid.begin(), grid.end(), r);
        size_t j = std::min(grid.size() - 1,
                            size_t(std::max<ptrdiff_t>(1, it - grid.begin())));
        double t = (r - grid[j - 1]) / (grid[j] - grid[j - 1]);
        base = normalization * ((1 - t) * values[j - 1] + t * values[j]);
    }
    if (base != 0.0 && radial_exponent != 0.0) base *= std::pow(r, radial_exponent);
    return base;
}

double CutoffProfile::support_lo() const {
    if (kind == Sharp) return lambda;
    for (size_t i = 0; i < values.size(); ++i)
        if (values[i] != 0) return grid[i == 0 ? 0 : i - 1];
    return grid.back();
}

double CutoffProfile::support_hi() const {
    if (kind == Sharp) return Lambda;
    for (size_t i = values.size(); i-- > 0;)
        if (values[i] != 0) return grid[std::min(i + 1, grid.size() - 1)];
    return grid.front();
}

double sphere_area(int d) {
    return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

double weighted_norm(const CutoffProfile& cut, int n, const Quadrature& q) {
    if (n < -1 || n > 5)
        throw Error(Error::UnsupportedOrder, "weighted_norm: n outside [-1, 5]");
    double lo = cut.support_lo(), hi = cut.support_hi();
    if (hi <= lo) return 0.0;
    // radial power of |phi|^2 r^{d-1-n}
    double p = cut.d - 1 - n + 2 * cut.radial_exponent;
    if (lo <= 0 && p <= -1 && cut(std::min(hi, 1e-8)) != 0)
        throw Error(Error::DivergentIntegral,
                    "weighted_norm: profile supported at the origin with a "
                    "non-integrable radial weight");
    double area = sphere_area(cut.d);
    if (cut.kind == CutoffProfile::Sharp) {
        double c2 = cut.normalization * cut.normalization;
        double val = (p == -1) ? std::log(hi / lo)
                               : (std::pow(hi, p + 1) - std::pow(lo, p + 1)) / (p + 1);
        return area * c2 * val;
    }
    return area * integrate(
                      [&](double r) {
                          double v = cut(r);
                          return v * v * std::pow(r, cut.d - 1.0 - n);
                      },
                      std::max(lo, 0.0), hi, q);
}

cplx d_of_z(const CutoffProfile& cut, double m, double alpha, cplx z,
            const Quadrature& q) {
    if (z.imag() == 0 && z.real() >= 0)
        throw Error(Error::OnBranchCut, "d_of_z: z on the half-line [0, inf)");
    if (alpha == 0) return cplx(m, 0);
    double lo = cut.support_lo(), hi = cut.support_hi();
    double c = double(cut.d - 1) / cut.d, area = sphere_area(cut.d);
    auto w = [&](double r) {
        double v = cut(r);
        return v * v * std::pow(r, cut.d - 1.0);
    };
    double re = integrate(
        [&](double r) { return std::real(w(r) / (z - r * r)); }, lo, hi, q);
    double im = z.imag() == 0
                    ? 0.0
                    : integrate([&](double r) { return std::imag(w(r) / (z - r * r)); },
                                lo, hi, q);
    return cplx(m, 0) - alpha * alpha * c * area * cplx(re, im);
}

DispersionResult d_plus(const CutoffProfile& cut, double m, double alpha, double s,
                        const Quadrature& q) {
    if (s < 0) throw Error(Error::InvalidInput, "d_plus: s < 0");
    double lo = cut.support_lo(), hi = cut.support_hi();
    double a = lo * lo, b = hi * hi;
    auto rho = [&](double x) {
        double v = cut(std::sqrt(x));
        return v * v * std::pow(x, 0.5 * (cut.d - 2));
    };
    double H;
    if (s > a && s < b) {
        H = integrate_pv(rho, a, b, s, q);
    } else if (s == a || s == b) {
        throw Error(Error::SingularityAtEndpoint, "d_plus: s at a band edge");
    } else {
        H = integrate([&](double x) { return rho(x) / (s - x); }, a, b, q);
    }
    double c = double(cut.d - 1) / cut.d, area = sphere_area(cut.d);
    double pref = 0.5 * alpha * alpha * c * area;
    DispersionResult out;
    out.s = s;
    out.D_plus = cplx(m - pref * H, pref * M_PI * rho(s));
    out.D_minus = std::conj(out.D_plus);
    out.m_eff_k = out.D_plus;
    return out;
}

double h_rho_sharp(double lambda, double Lambda, double s) {
    double rs = std::sqrt(s);
    if (std::abs(rs - lambda) <= 1e-8)
        return -std::numeric_limits<double>::infinity();
    if (std::abs(rs - Lambda) <= 1e-8)
        return std::numeric_limits<double>::infinity();
    return -2 * (Lambda - lambda) +
           rs * std::log(std::abs((rs + Lambda) * (rs - lambda) /
                                  ((rs + lambda) * (rs - Lambda))));
}

std::complex<double> running_mass_sharp(double m, double alpha, double lambda,
                                        double Lambda, double k) {
    double ak = std::abs(k);
    double a2 = alpha * alpha;
    double logterm =
        ak == 0 ? 0.0
                : ak * std::log(std::abs((ak + Lambda) * (ak - lambda) /
                                         ((ak + lambda) * (ak - Lambda))));
    double band = (ak >= lambda && ak <= Lambda) ? ak : 0.0;
    return cplx(m + (8 * M_PI / 3) * a2 * (Lambda - lambda), 0) -
           (4 * M_PI / 3) * a2 * cplx(logterm, -M_PI * band);
}

NegativeMassData negative_mass_data(const CutoffProfile& cut, double m, double alpha,
                                    const Quadrature& q) {
    double c = double(cut.d - 1) / cut.d;
    double W = weighted_norm(cut, 2, q);
    if (!(m < 0) || m <= -c * alpha * alpha * W)
        throw Error(Error::NoRoot,
                    "negative_mass_data: mass outside (-((d-1)/d) alpha^2 "
                    "||phi/omega||^2, 0)");
    double lo = cut.support_lo(), hi = cut.support_hi();
    double area = sphere_area(cut.d);
    auto Dneg = [&](double x) {  // D(-x), x > 0; strictly decreasing
        double v = integrate(
            [&](double r) {
                double ph = cut(r);
                return ph * ph * std::pow(r, cut.d - 1.0) / (x + r * r);
            },
            lo, hi, q);
        return m + alpha * alpha * c * area * v;
    };
    double xlo = 1e-12, xhi = 1.0;
    while (Dneg(xhi) > 0) {
        xhi *= 2;
        if (xhi > 1e18) throw Error(Error::NoRoot, "negative_mass_data: no sign change");
    }
    for (int it = 0; it < 200 && (xhi - xlo) > 1e-13 * (1 + xhi); ++it) {
        double mid = 0.5 * (xlo + xhi);
        (Dneg(mid) > 0 ? xlo : xhi) = mid;
    }
    double x = 0.5 * (xlo + xhi);
    double J = integrate(
        [&](double r) {
            double ph = cut(r);
            double den = x + r * r;
            return ph * ph * std::pow(r, cut.d - 1.0) / (den * den);
        },
        lo, hi, q);
    NegativeMassData out;
    out.E = std::sqrt(x);
    out.gamma = 1.0 / std::sqrt(alpha * alpha * c * area * J);
    return out;
}

}  // namespace polaron
