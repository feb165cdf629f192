#include "polaron/gse.hpp"

#include <cmath>
#include <limits>

namespace polaron {

namespace {

// ||t phi/(t^2+omega^2)||^2 and ||phi/sqrt(t^2+omega^2)||^2 by radial quadrature,
// with optional dispersion scaling omega -> kpow * omega and profile factor kpow
struct RadialNorms {
    double A, B;
};
RadialNorms radial_norms(const CutoffProfile& cut, double t, double kappa,
                         const Quadrature& q) {
    double lo = cut.support_lo(), hi = cut.support_hi();
    double area = sphere_area(cut.d);
    double k2 = kappa * kappa, k4 = k2 * k2;
    RadialNorms n;
    if (hi <= lo) {
        n.A = n.B = 0;
        return n;
    }
    n.A = area * integrate(
                     [&](double r) {
                         double v = k2 * cut(r);
                         double den = t * t + k4 * r * r;
                         return t * t * v * v * std::pow(r, cut.d - 1.0) / (den * den);
                     },
                     lo, hi, q);
    n.B = area * integrate(
                     [&](double r) {
                         double v = k2 * cut(r);
                         return v * v * std::pow(r, cut.d - 1.0) /
                                (t * t + k4 * r * r);
                     },
                     lo, hi, q);
    return n;
}

double g_core(const CutoffProfile& cut, double m, double num_coef, double den_coef,
              double pref, double kappa, const Quadrature& q) {
    if (m <= 0)
        throw Error(Error::DenominatorVanishes,
                    "ground_energy: nonpositive mass makes the denominator vanish");
    if (num_coef == 0) return 0.0;
    Quadrature inner = q;
    inner.abs_tol = std::max(q.abs_tol, 1e-12);
    auto f = [&](double t) {
        RadialNorms n = radial_norms(cut, t, kappa, inner);
        return num_coef * n.A / (m + den_coef * n.B);
    };
    // even integrand: 2 * int_0^inf
    return pref * 2.0 * integrate(f, 0.0, std::numeric_limits<double>::infinity(), q);
}

}  // namespace

double effective_mass(const CutoffProfile& cut, const ModelParams& prm,
                      const Quadrature& q) {
    double c = double(prm.d - 1) / prm.d;
    if (prm.alpha == 0 || prm.eps_self == 0) return prm.m;
    return prm.m + prm.eps_self * prm.alpha * prm.alpha * c * weighted_norm(cut, 2, q);
}

double ground_energy(const CutoffProfile& cut, const ModelParams& prm,
                     const Quadrature& q) {
    double c = double(prm.d - 1) / prm.d;
    double e = prm.eps_self * prm.alpha * prm.alpha * c;
    return g_core(cut, prm.m, e, e, prm.d / (2 * M_PI), 1.0, q);
}

double ground_energy_sharp(double lambda, double Lambda, double m,
                           const Quadrature& q) {
    if (lambda <= 0 || Lambda <= lambda)
        throw Error(Error::InvalidInput, "ground_energy_sharp: need 0 < lambda < Lambda");
    if (m <= 0) throw Error(Error::DenominatorVanishes, "ground_energy_sharp: m <= 0");
    double qr = lambda / Lambda;
    auto f = [&](double r) {
        double rq = r * qr;
        double num = (std::atan(r) - r / (1 + r * r)) -
                     (std::atan(rq) - rq / (1 + rq * rq));
        double den = m * r + (8 * M_PI / 3) * Lambda *
                                 ((r - std::atan(r)) - (rq - std::atan(rq)));
        return num / den / (r * r);
    };
    return 4 * Lambda * Lambda *
           integrate(f, 0.0, std::numeric_limits<double>::infinity(), q);
}

Asymptotics g_asymptotics(double lambda, double m,
                          const std::vector<double>& Lambda_grid, double slack,
                          const Quadrature& q) {
    if (m <= 8 * M_PI * lambda / 3)
        throw Error(Error::MassTooSmall, "g_asymptotics: need m > 8 pi lambda / 3");
    Asymptotics out;
    for (double L : Lambda_grid)
        out.ratios.push_back(ground_energy_sharp(lambda, L, m, q) /
                             std::pow(L, 1.5));
    out.lower = (8.0 / 3) * std::sqrt(3 / (8 * M_PI * m)) * (M_PI / 2);
    out.upper = std::sqrt(3.0) * out.lower;
    double last = out.ratios.empty() ? 0.0 : out.ratios.back();
    out.within_band =
        last >= out.lower * (1 - slack) && last <= out.upper * (1 + slack);
    return out;
}

double ground_energy_multi(int N, MultiCase mode,
                           const std::vector<CutoffProfile>& cuts, double m,
                           const Quadrature& q) {
    if (N < 1) throw Error(Error::InvalidInput, "ground_energy_multi: N < 1");
    if (mode == MultiCase::SharedCutoff) {
        if (cuts.size() != 1)
            throw Error(Error::InvalidInput,
                        "ground_energy_multi: shared mode takes one profile");
        return g_core(cuts[0], m, 1.0, (2.0 / 3) * N, N / M_PI, 1.0, q);
    }
    if (static_cast<int>(cuts.size()) != N)
        throw Error(Error::InvalidInput,
                    "ground_energy_multi: disjoint mode takes N profiles");
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            double lo = std::max(cuts[i].support_lo(), cuts[j].support_lo());
            double hi = std::min(cuts[i].support_hi(), cuts[j].support_hi());
            if (lo < hi)
                throw Error(Error::OverlappingSupports,
                            "ground_energy_multi: cutoff supports overlap");
        }
    double g = 0;
    for (const auto& c : cuts) g += g_core(c, m, 1.0, 2.0 / 3, 1 / M_PI, 1.0, q);
    return g;
}

EpsilonFamily epsilon_family(const CutoffProfile& cut, const ModelParams& prm,
                             const Quadrature& q) {
    double c = double(prm.d - 1) / prm.d;
    double W = weighted_norm(cut, 2, q);
    double a2cW = prm.alpha * prm.alpha * c * W;
    double e = prm.eps_self;
    EpsilonFamily out;
    out.m_eff_eps = prm.m + e * a2cW;
    out.m_eps_inv = (1.0 / prm.m) * (1.0 - a2cW / (prm.m + e * a2cW));
    out.g_eps = ground_energy(cut, prm, q);
    out.alpha_star = e < 1 ? std::sqrt(prm.m / ((1 - e) * c * W))
                           : std::numeric_limits<double>::infinity();
    return out;
}

IrCriterion ir_criterion(const CutoffProfile& cut, const Quadrature& q) {
    IrCriterion out;
    try {
        out.value = weighted_norm(cut, 3, q);
        out.regular = true;
    } catch (const Error& e) {
        if (e.kind != Error::DivergentIntegral) throw;
        out.regular = false;
        out.value = std::numeric_limits<double>::infinity();
    }
    return out;
}

double scl_constant(const CutoffProfile& cut, const ModelParams& prm,
                    const Quadrature& q) {
    double c = double(prm.d - 1) / prm.d;
    double lo = cut.support_lo(), hi = cut.support_hi();
    double area = sphere_area(cut.d);
    double ea = std::sqrt(prm.eps_self) * prm.alpha;
    // |D_plus^eps| on the support; constant m when the dressing is switched off
    std::function<double(double)> absD;
    if (prm.eps_self == 0 || prm.alpha == 0) {
        absD = [&](double) { return std::abs(prm.m); };
    } else {
        absD = [&, ea](double r) {
            return std::abs(d_plus(cut, prm.m, ea, r * r, q).D_plus);
        };
    }
    for (int i = 1; i < 16; ++i) {
        double r = lo + (hi - lo) * i / 16.0;
        if (absD(r) < 1e-12)
            throw Error(Error::DispersionVanishesOnSupport,
                        "scl_constant: dispersion vanishes on the cutoff support");
    }
    Quadrature outer = q;
    outer.rel_tol = std::max(q.rel_tol, 1e-8);
    double I = integrate(
        [&](double r) {
            double v = prm.alpha * cut(r) / absD(r);
            return v * v * std::pow(r, cut.d - 4.0);
        },
        lo, hi, outer);
    return 0.5 * c * area * I;
}

double gaussian_smear(const std::function<double(double)>& V, double C, double x,
                      double r_max, const Quadrature& q) {
    if (C <= 0) throw Error(Error::InvalidInput, "gaussian_smear: C <= 0");
    double s = std::sqrt(C);
    if (x < 1e-8 * s) {
        double pref = std::pow(2 * M_PI * C, -1.5) * 4 * M_PI;
        return pref * integrate(
                          [&](double r) {
                              return r * r * V(r) * std::exp(-r * r / (2 * C));
                          },
                          0.0, r_max, q);
    }
    double pref = 1.0 / (std::sqrt(2 * M_PI * C) * x);
    return pref * integrate(
                      [&](double r) {
                          double a = std::exp(-(x - r) * (x - r) / (2 * C));
                          double b = std::exp(-(x + r) * (x + r) / (2 * C));
                          return r * V(r) * (a - b);
                      },
                      0.0, r_max, q);
}

double wcl_renorm(const CutoffProfile& cut, const ModelParams& prm, double kappa,
                  const Quadrature& q) {
    double c = double(prm.d - 1) / prm.d;
    double e = prm.eps_self * prm.alpha * prm.alpha * c;
    return g_core(cut, prm.m, e, e, prm.d / (2 * M_PI), kappa, q);
}

EnergyBreakdown energy_breakdown(const CutoffProfile& cut, const ModelParams& prm,
                                 const Quadrature& q) {
    EnergyBreakdown out;
    out.m_eff = effective_mass(cut, prm, q);
    out.g = ground_energy(cut, prm, q);
    double p2 = 0;
    for (double pi : prm.p) p2 += pi * pi;
    out.E_p = p2 / (2 * out.m_eff) + out.g;
    IrCriterion ir = ir_criterion(cut, q);
    out.ir_regular = ir.regular;
    out.ir_integral = ir.value;
    return out;
}

}  // namespace polaron
