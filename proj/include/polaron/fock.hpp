#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "polaron/numerics.hpp"

namespace polaron {

// truncated boson Fock space over M modes with at most N_max quanta;
// occupation basis ordered graded-lexicographically
struct FockSpace {
    int modes;
    int cap;
    std::vector<std::vector<int>> basis;
    std::map<std::vector<int>, int> index;
    int dim;

    static FockSpace make(int M, int N_max);
    int vacuum() const { return 0; }
    int total(int i) const;
};

using FockOperator = Eigen::MatrixXcd;

enum class Ladder { Create, Annihilate };

// a*(f) / a(f); both linear in f, adjoint of a(f) is a*(conj f);
// creations out of the top layer are dropped
FockOperator ladder(const FockSpace& sp, const Eigen::VectorXcd& f, Ladder kind);

// dGamma(h) = sum_ij h_ij a*_i a_j, h self-adjoint
FockOperator dgamma(const FockSpace& sp, const Eigen::MatrixXcd& h);

// (Phi(f), Pi(f)) with Phi = (a*(conj f)+a(f))/sqrt2, Pi = i(a*(conj f)-a(f))/sqrt2
std::pair<FockOperator, FockOperator> segal_field(const FockSpace& sp,
                                                  const Eigen::VectorXcd& f);

// <vac, e^{z Phi(f)} vac> by a truncated exponential series
std::complex<double> vacuum_moment(const FockSpace& sp, const Eigen::VectorXd& f,
                                   std::complex<double> z, int terms);

// Wick-ordered power :Phi(f)^n:
FockOperator wick_power(const FockSpace& sp, const Eigen::VectorXd& f, int n);

// projector onto the sector with total quanta <= n (diagonal 0/1 matrix)
Eigen::MatrixXcd sector_leq(const FockSpace& sp, int n);

}  // namespace polaron
