#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polaron/lattice.hpp"

using namespace polaron;

static ModelParams params(double m, double alpha, std::array<double, 3> p = {0, 0, 0}) {
    ModelParams prm;
    prm.m = m;
    prm.alpha = alpha;
    prm.p = p;
    return prm;
}

TEST_CASE("build basics") {
    auto cut = CutoffProfile::sharp(1.0, 2.0);
    LatticeConfig cfg;  // a=4, L=1, eps_ph=0.5
    auto M0 = build(cut, params(1, 0), cfg);
    CHECK((M0.A - M0.A0).norm() == 0.0);
    CHECK(M0.f.norm() == 0.0);
    CHECK(M0.D >= 12);
    CHECK(M0.D % 2 == 0);
    CHECK(M0.theta > 0);

    auto origin = CutoffProfile::sharp(0.0, 2.0);
    CHECK_THROWS_AS(build(origin, params(1, 0.5), cfg), Error);

    LatticeConfig tiny = cfg;
    tiny.cap = 4;
    CHECK_THROWS_AS(build(cut, params(1, 0.5), tiny), Error);
}

TEST_CASE("cubic permutation symmetry of the kept set") {
    auto cut = CutoffProfile::sharp(1.0, 2.0);
    LatticeConfig cfg;
    cfg.a = 8;
    cfg.L = 2;
    auto M = build(cut, params(1, 0.5), cfg);
    double tot = 0;
    double S[3][3] = {{0}};
    for (size_t i = 0; i < M.points.size(); ++i) {
        const auto& l = M.points[i];
        double r2 = l[0] * l[0] + l[1] * l[1] + l[2] * l[2];
        tot += M.h3phi2[i];
        for (int mu = 0; mu < 3; ++mu)
            for (int nu = 0; nu < 3; ++nu)
                S[mu][nu] += M.h3phi2[i] * l[mu] * l[nu] / r2;
    }
    for (int mu = 0; mu < 3; ++mu)
        for (int nu = 0; nu < 3; ++nu) {
            double want = mu == nu ? tot / 3 : 0.0;
            CHECK(std::abs(S[mu][nu] - want) < 1e-12 * (1 + tot));
        }
}

TEST_CASE("polarization transversality and mode-sum identities") {
    auto cut = CutoffProfile::sharp(1.0, 2.0);
    LatticeConfig cfg;
    cfg.a = 8;
    cfg.L = 2;
    auto M = build(cut, params(1, 0.7), cfg);
    for (size_t i = 0; i < M.points.size(); ++i) {
        const auto& l = M.points[i];
        for (int k = 0; k < 2; ++k) {
            double dot = 0, nrm = 0;
            for (int mu = 0; mu < 3; ++mu) {
                dot += l[mu] * M.v[mu][2 * i + k];
                nrm += M.v[mu][2 * i + k] * M.v[mu][2 * i + k];
            }
            CHECK(std::abs(dot) < 1e-12 * (1 + std::abs(l[0]) + std::abs(l[1]) +
                                           std::abs(l[2])));
            CHECK(nrm == doctest::Approx(M.h3phi2[i]).epsilon(1e-12));
        }
    }

    // (v_mu, (s^2 + A0)^{-1} v_nu) = delta (2/3) sum h3 phi^2/(s^2+omega^2) at s=1
    double s = 1.0;
    Eigen::VectorXd diag(M.D);
    for (int i = 0; i < M.D; ++i) diag[i] = 1.0 / (s * s + M.A0(i, i));
    double want = 0;
    for (size_t i = 0; i < M.points.size(); ++i)
        want += M.h3phi2[i] / (s * s + M.omega_eps[i] * M.omega_eps[i]);
    want *= 2.0 / 3;
    for (int mu = 0; mu < 3; ++mu)
        for (int nu = 0; nu < 3; ++nu) {
            double ip = (M.v[mu].array() * diag.array() * M.v[nu].array()).sum();
            CHECK(std::abs(ip - (mu == nu ? want : 0.0)) < 1e-10);
        }

    // theta is the s=0 version of the same identity
    double th = 0;
    for (size_t i = 0; i < M.points.size(); ++i)
        th += M.h3phi2[i] / (M.omega_eps[i] * M.omega_eps[i]);
    CHECK(M.theta == doctest::Approx((2.0 / 3) * th).epsilon(1e-14));
}

TEST_CASE("energy_eigen basics") {
    auto cut = CutoffProfile::sharp(1.0, 2.0);
    LatticeConfig cfg;
    auto M0 = build(cut, params(2, 0, {1, 0, 0}), cfg);
    CHECK(energy_eigen(M0, params(2, 0, {1, 0, 0})) ==
          doctest::Approx(0.25).epsilon(1e-12));

    auto M = build(cut, params(1, 0.5), cfg);
    double e = energy_eigen(M, params(1, 0.5));
    CHECK(e >= 0);  // pure trace term, operator monotonicity of the square root
}

TEST_CASE("two-mode hand case") {
    // A0 = diag(1,4), rank-one bump v=(1,1), alpha^2/m = 1, p = 0
    LatticeMatrices M;
    M.D = 2;
    M.A0 = Eigen::Vector2d(1, 4).asDiagonal();
    Eigen::Vector2d v(1, 1);
    M.P = v * v.transpose();
    M.A = M.A0 + M.P;
    M.f = Eigen::VectorXd::Zero(2);
    double tr = 7, det = 2 * 5 - 1;  // A = [[2,1],[1,5]]
    double disc = std::sqrt(tr * tr - 4 * det);
    double mu1 = (tr - disc) / 2, mu2 = (tr + disc) / 2;
    double want = 0.5 * (std::sqrt(mu1) + std::sqrt(mu2) - 1 - 2);
    CHECK(energy_eigen(M, params(1, 1)) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("quadratic-form identity for the kinetic dressing") {
    auto cut = CutoffProfile::sharp(1.0, 2.0);
    LatticeConfig cfg;
    cfg.a = 8;
    cfg.L = 2;
    auto prm = params(1.3, 0.7, {0.4, -0.2, 0.9});
    auto M = build(cut, prm, cfg);
    double p2 = 0.4 * 0.4 + 0.2 * 0.2 + 0.9 * 0.9;
    double x = prm.alpha * prm.alpha * M.theta / prm.m;
    double want = (p2 / (2 * prm.m)) * x / (1 + x);
    CHECK(0.5 * M.f.dot(M.A * M.f) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("closed form vs eigendecomposition") {
    auto cut = CutoffProfile::sharp(1.0, 2.0);
    LatticeConfig cfg;  // a=4, L=1, eps_ph=0.5
    for (double alpha : {0.25, 0.5, 2.0}) {  // 2.0 probes beyond the small-alpha proof
        auto prm = params(1, alpha, {1, 0, 0});
        auto M = build(cut, prm, cfg);
        double ee = energy_eigen(M, prm);
        double ec = energy_closed(M, prm);
        CHECK(std::abs(ec - ee) <= 1e-8 * (1 + std::abs(ee)));
    }
}

TEST_CASE("isotropy in p") {
    auto cut = CutoffProfile::sharp(1.0, 2.0);
    LatticeConfig cfg;
    auto p1 = params(1, 0.5, {1, 0, 0});
    auto p2 = params(1, 0.5, {0, 0, 1});
    double e1 = energy_eigen(build(cut, p1, cfg), p1);
    double e2 = energy_eigen(build(cut, p2, cfg), p2);
    CHECK(std::abs(e1 - e2) <= 1e-3 * (1 + std::abs(e1)));
}

TEST_CASE("convergence to the continuum energy") {
    auto cut = CutoffProfile::sharp(1.0, 2.0);
    auto prm = params(9, 1, {1, 0, 0});

    auto prm0 = params(9, 0, {1, 0, 0});
    LatticeConfig c0;
    auto conv0 = converge_to_Ep(cut, prm0, {c0});
    CHECK(conv0.target == doctest::Approx(1.0 / 18).epsilon(1e-12));
    CHECK(conv0.gaps[0] < 1e-12);

    std::vector<LatticeConfig> sched(3);
    sched[0].a = 4;
    sched[0].L = 1;
    sched[0].eps_ph = 0.5;
    sched[1].a = 8;
    sched[1].L = 2;
    sched[1].eps_ph = 0.25;
    sched[2].a = 16;
    sched[2].L = 4;
    sched[2].eps_ph = 0.125;
    auto conv = converge_to_Ep(cut, prm, sched);
    CHECK(conv.target == doctest::Approx(0.9079139841164815).epsilon(1e-6));
    CHECK(conv.gaps[1] < conv.gaps[0]);
    CHECK(conv.gaps[2] < conv.gaps[1]);

    double ex = extrapolate_to_Ep(cut, prm, {4, 8, 16}, {1, 2, 4}, {0.5, 0.25, 0.125});
    CHECK(std::abs(ex - conv.target) <= 0.01 * std::abs(conv.target));
}
