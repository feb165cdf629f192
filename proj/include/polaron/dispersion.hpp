#pragma once

#include <complex>
#include <vector>

#include "polaron/numerics.hpp"

namespace polaron {

// rotation-invariant coupling profile phi(|k|), either a sharp band
// 1_{[lambda,Lambda]} or a tabulated radial function; `normalization` is an
// overall multiplier and `radial_exponent` an extra power of r folded into the
// profile (used by consumers that couple through phi/sqrt(omega) etc.)
struct CutoffProfile {
    enum Kind { Sharp, Tabulated };
    Kind kind = Sharp;
    double lambda = 0, Lambda = 0;  // sharp band edges
    std::vector<double> grid, values;  // tabulated radial samples
    int d = 3;
    double normalization = 1.0;
    double radial_exponent = 0.0;

    static CutoffProfile sharp(double lambda, double Lambda,
                               double normalization = 1.0, int d = 3);
    static CutoffProfile table(std::vector<double> grid, std::vector<double> values,
                               double normalization = 1.0, int d = 3);

    double operator()(double r) const;  // radial profile value
    double support_lo() const;
    double support_hi() const;
};

// surface area of the unit sphere in R^d
double sphere_area(int d);

// integral of |phi|^2 / |k|^n over R^d (radial reduction)
double weighted_norm(const CutoffProfile& cut, int n,
                     const Quadrature& q = Quadrature{});

// D(z) = m - alpha^2 (d-1)/d * int |phi|^2/(z - omega^2) dk for z off [0, inf)
std::complex<double> d_of_z(const CutoffProfile& cut, double m, double alpha,
                            std::complex<double> z,
                            const Quadrature& q = Quadrature{});

struct DispersionResult {
    double s;
    std::complex<double> D_plus, D_minus, m_eff_k;
};

// boundary values D±(s) = m - (alpha^2/2)((d-1)/d)|S_{d-1}| (H rho(s) ∓ i pi rho(s))
// with rho(s) = phi(sqrt s)^2 s^{(d-2)/2}; H rho by principal-value quadrature
DispersionResult d_plus(const CutoffProfile& cut, double m, double alpha, double s,
                        const Quadrature& q = Quadrature{});

// closed-form Hilbert transform of the sharp-band rho at d=3, normalization 1;
// returns ∓infinity sentinels within 1e-8 of the band edges
double h_rho_sharp(double lambda, double Lambda, double s);

// closed-form running effective mass for the d=3 sharp band
std::complex<double> running_mass_sharp(double m, double alpha, double lambda,
                                        double Lambda, double k);

struct NegativeMassData {
    double E;      // D(-E^2) = 0
    double gamma;  // (alpha^2 ((d-1)/d) int phi^2/(E^2+omega^2)^2 dk)^{-1/2}
};
// zero of D on the negative real axis, admissible for
// -((d-1)/d) alpha^2 ||phi/omega||^2 < m < 0
NegativeMassData negative_mass_data(const CutoffProfile& cut, double m, double alpha,
                                    const Quadrature& q = Quadrature{});

}  // namespace polaron
