#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "polaron/gse.hpp"

namespace polaron {

// attractive potential V <= 0 with compact radial support, d = 3
struct PotentialSpec {
    enum Kind { SphericalWell, TabulatedRadial } kind = SphericalWell;
    double V0 = 1, R = 1;  // well: V = -V0 on r < R
    std::vector<double> grid, values;  // tabulated V(r_i) <= 0
    static PotentialSpec well(double V0, double R);
    static PotentialSpec table(std::vector<double> r, std::vector<double> v);
    double operator()(double r) const;
    double r_max() const;
    double norm_3_2(const Quadrature& q = {}) const;  // (int |V|^{3/2})^{2/3}
};

// s-wave radial discretization of |V|^{1/2}(-Delta/2 - E)^{-1}|V|^{1/2}
struct BSOperator {
    double E;
    std::vector<double> r, w;  // midpoint nodes and weights on (0, r_max]
    Eigen::MatrixXd kernel;    // symmetric, entrywise >= 0
    double norm() const;       // top eigenvalue, power iteration from all-ones
};

BSOperator bs_kernel(const PotentialSpec& V, double E, int grid_size);

// number of eigenvalues of the kernel >= threshold
int bs_count_above(const BSOperator& K, double threshold);

// brute-force oracle: top eigenvalue from a cubic 3d grid with the
// equivalent-ball diagonal, no angular reduction
double bs_top_eigenvalue_3d(const PotentialSpec& V, double E, int n_per_R);

// oracle: s-wave bound-state count of -u''/(2m) + V u below e, finite
// differences on [0, r_max]
int radial_bound_states(const PotentialSpec& V, double m, double e, double r_max,
                        int n);

struct CriticalMass {
    double m_c, m_eps;          // inverse kernel norms at E = 0 and E = -eps
    double norm0, norm_eps;     // grid-extrapolated kernel norms
};
CriticalMass critical_mass(const PotentialSpec& V, double eps, int grid_size);

double lieb_bound(const PotentialSpec& V, const Quadrature& q = {});

struct BindingReport {
    double m_eff, m_c, m_eps, alpha0, alpha_eps, Lambda_bound;
    enum Verdict { NoGroundState, GroundStateLargeScale, Undecided } verdict;
};
BindingReport coupling_window(const CutoffProfile& cut, const PotentialSpec& V,
                              double m, double eps, double alpha,
                              int grid_size = 400, const Quadrature& q = {});

struct UvWindow {
    double Lambda_no_gs;  // sharp cutoffs below this leave no ground state
    std::string note;
};
UvWindow uv_window(const PotentialSpec& V, double m, double alpha, double lambda,
                   int grid_size = 400);

}  // namespace polaron
