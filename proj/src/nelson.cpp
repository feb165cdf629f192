#include "polaron/nelson.hpp"

#include <cmath>

namespace polaron {

namespace {

bool canonical_sharp(const CutoffProfile& c) {
    return c.kind == CutoffProfile::Sharp && c.radial_exponent == -0.5 &&
           std::abs(c.normalization - std::pow(2 * M_PI, -1.5)) < 1e-14;
}

bool same_profile(const CutoffProfile& a, const CutoffProfile& b) {
    return a.kind == b.kind && a.lambda == b.lambda && a.Lambda == b.Lambda &&
           a.normalization == b.normalization &&
           a.radial_exponent == b.radial_exponent && a.grid == b.grid &&
           a.values == b.values;
}

void validate(const NelsonConfig& cfg, bool need_external) {
    size_t n = cfg.N;
    if (cfg.N < 1) throw Error(Error::InvalidInput, "nelson: N < 1");
    if (cfg.masses.size() != n || cfg.alphas.size() != n || cfg.cutoffs.size() != n)
        throw Error(Error::InvalidInput, "nelson: per-particle arrays must have N entries");
    for (double m : cfg.masses)
        if (m <= 0) throw Error(Error::InvalidInput, "nelson: masses must be positive");
    if (need_external && cfg.external.size() != n)
        throw Error(Error::InvalidInput, "nelson: external potentials must have N entries");
}

double tridiag_ground(double mu, const std::function<double(double)>& V, int ell,
                      double r_max, int n) {
    double h = r_max / (n + 1);
    std::vector<double> diag(n), off(n - 1, -1.0 / (2 * mu * h * h));
    Quadrature cell_q;
    cell_q.rel_tol = 1e-9;
    for (int i = 0; i < n; ++i) {
        double r = (i + 1) * h;
        // cell-averaged potential keeps the eigenvalue second order even for
        // discontinuous wells; point sampling at the jump costs an order
        double vbar = integrate(V, r - h / 2, r + h / 2, cell_q) / h;
        diag[i] = 1.0 / (mu * h * h) + vbar + ell * (ell + 1) / (2 * mu * r * r);
    }
    return tridiag_min_eigenvalue(diag, off);
}

}  // namespace

CutoffProfile nelson_sharp_profile(double kappa_ir, double Lambda) {
    auto c = CutoffProfile::sharp(kappa_ir, Lambda, std::pow(2 * M_PI, -1.5));
    c.radial_exponent = -0.5;
    return c;
}

double veff_pair(const CutoffProfile& li, const CutoffProfile& lj, double ai,
                 double aj, double x, const Quadrature& q) {
    double lo = std::max(li.support_lo(), lj.support_lo());
    double hi = std::min(li.support_hi(), lj.support_hi());
    if (hi <= lo || ai == 0 || aj == 0) return 0.0;
    double I = integrate(
        [&](double r) {
            double rx = r * x;
            double sinc = std::abs(rx) < 1e-8 ? 1 - rx * rx / 6 : std::sin(rx) / rx;
            return li(r) * lj(r) * r * sinc;
        },
        lo, hi, q);
    return -0.25 * ai * aj * 4 * M_PI * I;
}

double veff_sharp3d(double ai, double aj, double kappa_ir, double Lambda, double x) {
    if (kappa_ir < 0 || Lambda <= kappa_ir)
        throw Error(Error::InvalidInput, "veff_sharp3d: need 0 <= kappa_ir < Lambda");
    double pref = -ai * aj / (8 * M_PI * M_PI);
    if (std::abs(x) < 1e-3) {
        double d1 = Lambda - kappa_ir;
        double d3 = std::pow(Lambda, 3) - std::pow(kappa_ir, 3);
        double d5 = std::pow(Lambda, 5) - std::pow(kappa_ir, 5);
        return pref * (d1 - d3 * x * x / 18 + d5 * x * x * x * x / 600);
    }
    return pref * (sine_integral(Lambda * x) - sine_integral(kappa_ir * x)) / x;
}

double constant_G(const NelsonConfig& cfg, const Quadrature& q) {
    validate(cfg, false);
    double G = 0;
    for (int j = 0; j < cfg.N; ++j)
        G += -0.25 * cfg.alphas[j] * cfg.alphas[j] *
             weighted_norm(cfg.cutoffs[j], 1, q);
    return G;
}

double radial_ground_energy(const RadialProblem& prob, int ell) {
    if (prob.mu <= 0 || prob.r_max <= 0 || ell < 0)
        throw Error(Error::InvalidInput, "radial_ground_energy: bad problem");
    if (prob.nodes < 200)
        throw Error(Error::GridTooCoarse, "radial_ground_energy: nodes < 200");
    // the box must reach the asymptotic region of the potential
    double vmin = 0;
    for (int i = 1; i <= 32; ++i)
        vmin = std::min(vmin, prob.potential(prob.r_max * i / 32.0));
    if (std::abs(prob.potential(prob.r_max)) > 0.1 * (1 + std::abs(vmin)))
        throw Error(Error::InvalidInput,
                    "radial_ground_energy: potential not negligible at r_max");
    double e1 = tridiag_ground(prob.mu, prob.potential, ell, prob.r_max,
                               prob.nodes / 2);
    double e2 = tridiag_ground(prob.mu, prob.potential, ell, prob.r_max, prob.nodes);
    double grid_err = std::abs(e2 - e1) / 3;  // order-2 scheme
    double e = (4 * e2 - e1) / 3;
    if (e >= -3 * grid_err) return 0.0;  // continuum edge
    if (std::abs(e2 - e1) > 0.5 * std::abs(e2))
        throw Error(Error::GridTooCoarse,
                    "radial_ground_energy: eigenvalue unstable under refinement");
    return e;
}

StabilityResult stability_check(const NelsonConfig& cfg, double kappa_scale) {
    validate(cfg, true);
    if (cfg.N != 2)
        throw Error(Error::UnsupportedN,
                    "stability_check: only the two-particle reduction is supported");
    if (kappa_scale <= 0)
        throw Error(Error::InvalidInput, "stability_check: kappa_scale <= 0");
    if (cfg.masses[0] != cfg.masses[1] || cfg.alphas[0] != cfg.alphas[1] ||
        !same_profile(cfg.cutoffs[0], cfg.cutoffs[1]))
        throw Error(Error::InvalidInput,
                    "stability_check: particles must be identical");
    double m = cfg.masses[0], a = cfg.alphas[0];
    const CutoffProfile& cut = cfg.cutoffs[0];
    const PotentialSpec& V = cfg.external[0];

    std::function<double(double)> W;
    if (canonical_sharp(cut)) {
        W = [&cut](double x) {
            return veff_sharp3d(1, 1, cut.lambda, cut.Lambda, x);
        };
    } else {
        W = [&cut](double x) { return veff_pair(cut, cut, 1, 1, x); };
    }

    StabilityResult out;
    // relative coordinate: reduced mass m/2, pair interaction 2 a^2 W
    out.E_rel = radial_ground_energy(
        {m / 2, [&](double r) { return 2 * a * a * W(r); }, cfg.r_max, cfg.nodes});
    // single-particle clusters
    double e_single = radial_ground_energy(
        {m, [&](double r) { return V(r); }, cfg.r_max, cfg.nodes});
    out.Xi_V = std::min(0.0, e_single);
    // center of mass: total mass 2m in the summed external well
    double e_cm = 0;
    if (out.E_rel < 0)
        e_cm = radial_ground_energy(
            {2 * m, [&](double r) { return 2 * V(r); }, cfg.r_max, cfg.nodes});
    out.E_V = out.E_rel + e_cm;
    out.Delta_p = out.Xi_V - out.E_V;
    out.kappa_margin = 0;
    for (int j = 0; j < cfg.N; ++j)
        out.kappa_margin += cfg.alphas[j] * cfg.alphas[j] *
                            weighted_norm(cfg.cutoffs[j], 0) /
                            (4 * cfg.masses[j] * kappa_scale * kappa_scale);
    out.kappa_threshold_ok = out.Delta_p > out.kappa_margin;
    return out;
}

double heuristic_mass_lump(const NelsonConfig& cfg) {
    validate(cfg, true);
    double msum = 0;
    for (double m : cfg.masses) msum += m;
    auto vsum = [&](double r) {
        double v = 0;
        for (const auto& V : cfg.external) v += V(r);
        return v;
    };
    return radial_ground_energy({msum, vsum, cfg.r_max, cfg.nodes});
}

}  // namespace polaron
