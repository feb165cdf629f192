#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polaron {

struct Error : std::runtime_error {
    enum Kind {
        NonConvergence,
        InvalidInput,
        SingularityAtEndpoint,
        UnsupportedOrder,
        NegativeEigenvalue,
        DimensionMismatch,
        NotSelfAdjoint,
        SingularS,
        NormExceedsOne,
        SeriesNonConvergent,
        VacuumOverlapZero,
        GeneratorNotInSp2,
        OnBranchCut,
        DivergentIntegral,
        NoRoot,
        DenominatorVanishes,
        MassTooSmall,
        OverlappingSupports,
        DispersionVanishesOnSupport,
        LatticeTooLarge,
        OriginInSupport,
        GridTooCoarse,
        MassAboveCritical,
        UnsupportedN,
        IoError,
        Precondition,
    };
    Kind kind;
    Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    // true for errors caused by inadmissible inputs rather than numerical breakdown
    bool is_precondition() const {
        switch (kind) {
            case NonConvergence:
            case SeriesNonConvergent:
            case GridTooCoarse:
            case IoError:
                return false;
            default:
                return true;
        }
    }
};

struct Quadrature {
    double abs_tol{1e-10};
    double rel_tol{1e-10};
    int max_subdivisions{4000};
};

// adaptive Gauss-Kronrod 7/15 on (a,b); a and/or b may be +-infinity
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Quadrature& q = {});

// lim_{eps->0} int_{|x-s|>eps} f(x)/(s-x) dx over (a,b), a < s < b
double integrate_pv(const std::function<double(double)>& f, double a, double b,
                    double s, const Quadrature& q = {});

double sine_integral(double x);               // Si(x), abs err <= 1e-12
double bessel_j(double nu, double x);         // nu in {1/2, 1, 3/2, 2}

struct EigenSys {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // orthonormal columns
};
EigenSys sym_eigen(const Eigen::MatrixXd& A);  // cyclic Jacobi

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& A);

// largest eigenvalue of a symmetric positive map, power iteration from all-ones
double op_norm(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
               int dim, double tol);

// smallest eigenvalue of a symmetric tridiagonal matrix (Sturm bisection);
// diag has n entries, off has n-1
double tridiag_min_eigenvalue(const std::vector<double>& diag,
                              const std::vector<double>& off, double tol = 1e-12);

// number of eigenvalues of the tridiagonal matrix strictly below x
int tridiag_count_below(const std::vector<double>& diag,
                        const std::vector<double>& off, double x);

}  // namespace polaron
