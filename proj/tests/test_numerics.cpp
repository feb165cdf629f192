#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "polaron/numerics.hpp"

using namespace polaron;

static const double PI = 3.14159265358979323846;

TEST_CASE("integrate: polynomial and exponential") {
    CHECK(integrate([](double x) { return x; }, 0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(-x); }, 0, INFINITY) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integrate([](double x) { return std::exp(x); }, -INFINITY, 0) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integrate([](double x) { return std::exp(-x * x); }, -INFINITY, INFINITY) ==
          doctest::Approx(std::sqrt(PI)).epsilon(1e-10));
}

// integrand of the sharp-cutoff ground-energy formula at m=9, lambda/Lambda=1/2
static double gro_integrand(double r) {
    const double m = 9, Lam = 2, ratio = 0.5;
    double rr = r * ratio;
    double num = (std::atan(r) - r / (1 + r * r)) - (std::atan(rr) - rr / (1 + rr * rr));
    double den = m * r + (8 * PI / 3) * Lam * ((r - std::atan(r)) - (rr - std::atan(rr)));
    if (r == 0) return 0;
    return num / den / (r * r);
}

TEST_CASE("integrate vs fixed-grid midpoint oracle") {
    const double R = 50;
    double adaptive = integrate(gro_integrand, 0, R, {1e-12, 1e-12, 4000});
    // Richardson-extrapolated midpoint rule
    auto midpoint = [&](long n) {
        double h = R / n, s = 0;
        for (long i = 0; i < n; ++i) s += gro_integrand((i + 0.5) * h);
        return s * h;
    };
    double m1 = midpoint(500000), m2 = midpoint(1000000);
    double oracle = m2 + (m2 - m1) / 3.0;  // midpoint error is O(h^2)
    CHECK(adaptive == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("integrate_pv") {
    // odd symmetry
    CHECK(std::abs(integrate_pv([](double) { return 1.0; }, 1.0, 3.0, 2.0)) < 1e-10);
    // PV int_0^2 x/(1-x) dx = -2
    CHECK(integrate_pv([](double x) { return x; }, 0, 2, 1) ==
          doctest::Approx(-2.0).epsilon(1e-9));
    // Hilbert transform of rho(x) = 1_{[1,4]} sqrt(x) at s=2 vs closed form
    double s = 2, lam = 1, Lam = 2, rs = std::sqrt(s);
    double closed = -2 * (Lam - lam) +
                    rs * std::log(std::abs((rs + Lam) * (rs - lam) /
                                           ((rs + lam) * (rs - Lam))));
    double pv = integrate_pv([](double x) { return std::sqrt(x); }, 1, 4, s);
    CHECK(pv == doctest::Approx(closed).epsilon(1e-8));
}

TEST_CASE("integrate_pv asymmetric window") {
    // same Hilbert transform with an off-center singularity (outer parts exercised)
    double s = 1.5, lam = 1, Lam = 2, rs = std::sqrt(s);
    double closed = -2 * (Lam - lam) +
                    rs * std::log(std::abs((rs + Lam) * (rs - lam) /
                                           ((rs + lam) * (rs - Lam))));
    double pv = integrate_pv([](double x) { return std::sqrt(x); }, 1, 4, s);
    CHECK(pv == doctest::Approx(closed).epsilon(1e-8));
}

TEST_CASE("sine integral") {
    CHECK(sine_integral(0) == 0.0);
    CHECK(sine_integral(PI) == doctest::Approx(1.851937051982068).epsilon(1e-12));
    CHECK(std::abs(sine_integral(100) - PI / 2) < 0.011);
    CHECK(std::abs(sine_integral(100) - PI / 2) > 1e-4);
    // both evaluation branches against reference values
    CHECK(std::abs(sine_integral(8.0) - 1.574186821706942052) < 1e-12);
    CHECK(std::abs(sine_integral(8.5) - 1.629597099590385592) < 1e-12);
    CHECK(std::abs(sine_integral(100) - 1.562225466889056293) < 1e-12);
}

TEST_CASE("bessel") {
    CHECK(std::abs(bessel_j(0.5, PI)) < 1e-12);
    CHECK(bessel_j(0.5, PI / 2) == doctest::Approx(2.0 / PI).epsilon(1e-12));
    CHECK(bessel_j(1.0, 1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-10));
    CHECK(bessel_j(2.0, 1.0) == doctest::Approx(0.1149034849319005).epsilon(1e-10));
    CHECK(bessel_j(1.5, 2.0) ==
          doctest::Approx(std::sqrt(2 / (PI * 2)) * (std::sin(2.0) / 2 - std::cos(2.0)))
              .epsilon(1e-12));
    CHECK_THROWS_AS(bessel_j(0.25, 1.0), Error);
}

TEST_CASE("sym_eigen basics") {
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(3, 3);
    auto es = sym_eigen(I);
    for (int i = 0; i < 3; ++i) CHECK(es.values[i] == doctest::Approx(1.0));

    Eigen::MatrixXd D = Eigen::Vector3d(9, 1, 4).asDiagonal();
    es = sym_eigen(D);
    CHECK(es.values[0] == doctest::Approx(1));
    CHECK(es.values[1] == doctest::Approx(4));
    CHECK(es.values[2] == doctest::Approx(9));
}

TEST_CASE("sym_eigen rank-one update interlaces") {
    Eigen::VectorXd d(4);
    d << 1, 2, 3, 4;
    Eigen::MatrixXd A0 = d.asDiagonal();
    Eigen::VectorXd v(4);
    v << 1, -1, 0.5, 2;
    Eigen::MatrixXd A = A0 + 0.7 * v * v.transpose();
    auto es = sym_eigen(A);
    for (int i = 0; i < 4; ++i) {
        CHECK(es.values[i] >= d[i] - 1e-10);
        if (i < 3) CHECK(es.values[i] <= d[i + 1] + 1e-10);
    }
    double norm = A.cwiseAbs().maxCoeff();
    Eigen::MatrixXd R = A * es.vectors - es.vectors * es.values.asDiagonal();
    CHECK(R.norm() <= 1e-12 * 4 * norm);
}

TEST_CASE("psd_sqrt") {
    Eigen::MatrixXd D = Eigen::Vector2d(4, 9).asDiagonal();
    Eigen::MatrixXd S = psd_sqrt(D);
    CHECK(S(0, 0) == doctest::Approx(2));
    CHECK(S(1, 1) == doctest::Approx(3));
    CHECK(std::abs(S(0, 1)) < 1e-12);

    Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(3, 3);
    CHECK(psd_sqrt(Z).norm() == 0.0);

    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd M(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) M(i, j) = gauss(rng);
    Eigen::MatrixXd A = M * M.transpose();
    Eigen::MatrixXd R = psd_sqrt(A);
    CHECK((R * R - A).norm() <= 1e-10 * A.norm());

    Eigen::MatrixXd neg = Eigen::Vector2d(1, -0.5).asDiagonal();
    CHECK_THROWS_AS(psd_sqrt(neg), Error);
}

TEST_CASE("op_norm") {
    Eigen::MatrixXd D = Eigen::Vector3d(1, 2, 3).asDiagonal();
    auto apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return D * x; };
    CHECK(op_norm(apply, 3, 1e-12) == doctest::Approx(3).epsilon(1e-10));

    Eigen::VectorXd v(4);
    v << 1, 0, 2, 0;  // ||v||^2 = 5
    auto rank1 = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return v * v.dot(x); };
    CHECK(op_norm(rank1, 4, 1e-12) == doctest::Approx(5).epsilon(1e-10));
}

TEST_CASE("op_norm vs dense eigensolver on a Yukawa-type kernel") {
    const int n = 120;
    const double h = 3.0 / n;
    Eigen::MatrixXd K(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double ri = (i + 0.5) * h, rj = (j + 0.5) * h;
            K(i, j) = h * std::exp(-std::abs(ri - rj)) * 2 * std::min(ri, rj);
        }
    K = 0.5 * (K + K.transpose()).eval();
    double dense = sym_eigen(K).values[n - 1];
    auto apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return K * x; };
    CHECK(op_norm(apply, n, 1e-10) == doctest::Approx(dense).epsilon(1e-8));
    // invariance under orthogonal conjugation
    double c = std::cos(0.3), s = std::sin(0.3);
    Eigen::MatrixXd G = Eigen::MatrixXd::Identity(n, n);
    G(0, 0) = c, G(0, 1) = -s, G(1, 0) = s, G(1, 1) = c;
    Eigen::MatrixXd K2 = G * K * G.transpose();
    auto apply2 = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return K2 * x; };
    CHECK(op_norm(apply2, n, 1e-10) == doctest::Approx(dense).epsilon(1e-8));
}

TEST_CASE("integrate properties and errors") {
    Quadrature q;
    auto f = [](double x) { return std::sin(x); };
    auto g = [](double x) { return x * x; };
    double lhs = integrate([&](double x) { return f(x) + g(x); }, 0, 2, q);
    CHECK(lhs == doctest::Approx(integrate(f, 0, 2, q) + integrate(g, 0, 2, q))
                     .epsilon(1e-10));
    CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, 0, 1), Error);
    CHECK_THROWS_AS(integrate_pv([](double x) { return x; }, 0, 1, 2.0), Error);
    Quadrature tight{1e-15, 0, 3};
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(50 * x); }, 0, 10, tight),
                    Error);
}

TEST_CASE("tridiagonal Sturm solver") {
    // -1/2 u'' on (0,1), Dirichlet: lowest eigenvalue pi^2/2
    const int n = 1500;
    const double h = 1.0 / (n + 1);
    std::vector<double> diag(n, 1.0 / (h * h)), off(n - 1, -0.5 / (h * h));
    double e0 = tridiag_min_eigenvalue(diag, off);
    CHECK(e0 == doctest::Approx(PI * PI / 2).epsilon(1e-5));
    CHECK(tridiag_count_below(diag, off, 5.5) == 1);   // pi^2/2 ~ 4.93
    CHECK(tridiag_count_below(diag, off, 25.0) == 2);  // next is 2pi^2 ~ 19.7
}
