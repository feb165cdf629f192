#pragma once

#include <functional>
#include <vector>

#include "polaron/binding.hpp"

namespace polaron {

// N scalar particles coupled to a massless field through radial profiles
// lambda-hat_j; the canonical sharp choice is rho/sqrt(omega), i.e. a sharp
// band with normalization (2 pi)^{-3/2} and radial_exponent -1/2
struct NelsonConfig {
    int N = 2;
    std::vector<double> masses, alphas;
    std::vector<CutoffProfile> cutoffs;
    std::vector<PotentialSpec> external;
    double r_max = 10;  // radial box for the cluster eigenproblems
    int nodes = 1200;
};

CutoffProfile nelson_sharp_profile(double kappa_ir, double Lambda);

// pair potential -1/4 a_i a_j int li(k) lj(k)/|k| e^{-ikx} dk at separation x
double veff_pair(const CutoffProfile& li, const CutoffProfile& lj, double ai,
                 double aj, double x, const Quadrature& q = {});

// closed form for the canonical sharp profiles: -(ai aj)/(8 pi^2 x) (Si(Lx) - Si(kx))
double veff_sharp3d(double ai, double aj, double kappa_ir, double Lambda, double x);

// self-energy constant -1/4 sum_j a_j^2 ||lambda_j / sqrt(omega)||^2
double constant_G(const NelsonConfig& cfg, const Quadrature& q = {});

struct RadialProblem {
    double mu;  // reduced mass
    std::function<double(double)> potential;
    double r_max;
    int nodes;
};

// lowest eigenvalue of -(1/2mu) u'' + [V + l(l+1)/(2 mu r^2)] u, Dirichlet box;
// values within the grid-error band of the continuum edge are reported as 0
double radial_ground_energy(const RadialProblem& prob, int ell = 0);

struct StabilityResult {
    double E_rel;    // relative-coordinate pair ground energy
    double Xi_V;     // lowest two-cluster threshold
    double E_V;      // two-particle ground energy estimate
    double Delta_p;  // Xi_V - E_V
    double kappa_margin;  // sum_j a_j^2 ||lambda_j||^2 / (4 m_j kappa^2)
    bool kappa_threshold_ok;  // Delta_p > kappa_margin
};
StabilityResult stability_check(const NelsonConfig& cfg, double kappa_scale);

// diagnostic: ground energy of the lumped problem -Delta/(2 sum m_j) + sum V_j
double heuristic_mass_lump(const NelsonConfig& cfg);

}  // namespace polaron
