// end-to-end acceptance checks, one line per criterion; argv[1] is the CLI
// binary used by the determinism check

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "polaron/binding.hpp"
#include "polaron/lattice.hpp"
#include "polaron/nelson.hpp"
#include "polaron/symplectic.hpp"

using namespace polaron;
using cplx = std::complex<double>;
static const double PI = 3.14159265358979323846;

static int failures = 0;

static void report(int idx, const char* what, bool ok) {
    std::printf("criterion %2d (%s): %s\n", idx, what, ok ? "PASS" : "FAIL");
    if (!ok) ++failures;
}

static double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

// 1. closed-form lattice energy agrees with the eigendecomposition
static bool crit_lattice_closed() {
    auto cut = CutoffProfile::sharp(1.0, 2.0);
    LatticeConfig cfg;
    cfg.a = 4;
    cfg.L = 1;
    cfg.eps_ph = 0.5;
    cfg.cap = 600;
    bool ok = true;
    for (double alpha : {0.25, 0.5}) {
        auto t0 = std::chrono::steady_clock::now();
        ModelParams prm;
        prm.m = 1;
        prm.alpha = alpha;
        prm.p = {1, 0, 0};
        auto M = build(cut, prm, cfg);
        double ee = energy_eigen(M, prm);
        double ec = energy_closed(M, prm);
        ok = ok && M.D <= 600;
        ok = ok && std::abs(ec - ee) <= 1e-8 * (1 + std::abs(ee));
        ok = ok && seconds_since(t0) <= 10.0;
    }
    return ok;
}

// 2. extrapolation along the lattice schedule reaches the continuum energy
static bool crit_lattice_extrapolate() {
    auto t0 = std::chrono::steady_clock::now();
    auto cut = CutoffProfile::sharp(1.0, 2.0);
    ModelParams prm;
    prm.m = 9;
    prm.alpha = 1;
    prm.p = {1, 0, 0};
    double target = energy_breakdown(cut, prm).E_p;
    double ex = extrapolate_to_Ep(cut, prm, {4, 8, 16}, {1, 2, 4},
                                  {0.5, 0.25, 0.125});
    return std::abs(ex - target) <= 0.01 * std::abs(target) &&
           seconds_since(t0) <= 300.0;
}

// 3. large-cutoff growth of the ground energy sits in the predicted band
static bool crit_gse_asymptotics() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<double> grid;
    for (double L = 4; L <= 512; L *= 2) grid.push_back(L);
    auto as = g_asymptotics(1.0, 9.0, grid, 0.05);
    double r = as.ratios.back();
    return as.within_band && r >= 0.4823 * 0.95 && r <= 0.8354 * 1.05 &&
           seconds_since(t0) <= 60.0;
}

// 4. principal-value quadrature reproduces the closed Hilbert transform
static bool crit_hilbert() {
    double worst = 0;
    auto rho = [](double x) { return std::sqrt(x); };
    for (int i = 0; i < 50; ++i) {
        double s = 8.0 * (i + 0.5) / 50;  // off the band edges s = 1, 4
        double pv;
        if (s > 1 && s < 4)
            pv = integrate_pv(rho, 1, 4, s);
        else
            pv = integrate([&](double x) { return rho(x) / (s - x); }, 1, 4);
        double closed = h_rho_sharp(1, 2, s);
        worst = std::max(worst, std::abs(pv - closed) / std::abs(closed));
    }
    return worst <= 1e-6;
}

// 5. Birman-Schwinger: critical mass, monotone norm, lower bound
static bool crit_binding() {
    auto t0 = std::chrono::steady_clock::now();
    auto V = PotentialSpec::well(1, 1);
    auto cm = critical_mass(V, 0.0, 400);
    double target = PI * PI / 8;
    bool ok = std::abs(cm.m_c - target) <= 0.02 * target;
    double prev = -1;
    for (int i = 0; i < 10; ++i) {
        double x = bs_kernel(V, -5.0 + 0.5 * i, 150).norm();
        ok = ok && x >= prev;
        prev = x;
    }
    double lb = lieb_bound(V);
    ok = ok && std::abs(lb - 0.0145) <= 0.02 * 0.0145 && lb <= cm.m_c;
    return ok && seconds_since(t0) <= 30.0;
}

// 6. ladder commutators and the vacuum characteristic function
static bool crit_fock() {
    auto sp = FockSpace::make(2, 10);
    auto P = sector_leq(sp, sp.cap - 1);
    std::mt19937 rng(2024);
    std::normal_distribution<double> g;
    bool ok = true;
    for (int t = 0; t < 20; ++t) {
        Eigen::VectorXcd f(2), h(2);
        for (int i = 0; i < 2; ++i) {
            f(i) = cplx(g(rng), g(rng));
            h(i) = cplx(g(rng), g(rng));
        }
        auto af = ladder(sp, f, Ladder::Annihilate);
        auto ch = ladder(sp, h, Ladder::Create);
        cplx pairing = (f.transpose() * h).value();
        Eigen::MatrixXcd comm =
            af * ch - ch * af -
            pairing * Eigen::MatrixXcd::Identity(sp.dim, sp.dim);
        ok = ok && spectral_norm(comm * P) <= 1e-12;
    }
    auto sp1 = FockSpace::make(1, 16);
    cplx vm = vacuum_moment(sp1, Eigen::VectorXd::Ones(1), cplx(0, 1), 32);
    ok = ok && std::abs(vm - std::exp(-0.25)) <= 1e-8;
    return ok;
}

static SymplecticPair squeeze1(double theta) {
    SymplecticPair p;
    p.S = Eigen::MatrixXcd::Constant(1, 1, std::cosh(theta));
    p.T = Eigen::MatrixXcd::Constant(1, 1, std::sinh(theta));
    return p;
}

// 7. intertwiner: vacuum overlap, commutation residual, determinant identity
static bool crit_intertwiner() {
    auto p = squeeze1(0.2);
    auto sp = FockSpace::make(1, 14);
    auto U = intertwiner(sp, p);
    double df = bogoliubov_coeffs(p).det_factor;
    bool ok = std::abs(U(0, 0) - cplx(df, 0)) <= 1e-10;

    Eigen::VectorXcd f = Eigen::VectorXcd::Ones(1);
    double prev = 1e300;
    for (int cap : {8, 10, 12, 14}) {
        double r = intertwine_check(FockSpace::make(1, cap), p, f, 4);
        ok = ok && r <= prev * (1 + 1e-12) + 1e-15;
        prev = r;
    }
    ok = ok && prev <= 1e-6;

    auto sp28 = FockSpace::make(1, 28);
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Constant(1, 1, 0.5);
    auto di = det_identity(sp28, K, 1.0);
    ok = ok && std::abs(di.target - 2.0 / std::sqrt(3.0)) <= 1e-12;
    ok = ok && std::abs(di.partial_sums.back() - di.target) <= 1e-8;
    return ok;
}

static Eigen::MatrixXcd rand_antiherm(int M, std::mt19937& rng, double scale) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd A(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) A(i, j) = cplx(g(rng), g(rng));
    A = 0.5 * (A - A.adjoint()).eval();
    return scale * A / std::max(1.0, A.norm());
}

static Eigen::MatrixXcd rand_sym(int M, std::mt19937& rng, double scale) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd A(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) A(i, j) = cplx(g(rng), g(rng));
    A = 0.5 * (A + A.transpose()).eval();
    return scale * A / std::max(1.0, A.norm());
}

// 8. local exponent: vanishing for real generators, cocycle identity otherwise
static bool crit_local_exponent() {
    std::mt19937 rng(7);
    Eigen::MatrixXcd Sg = rand_antiherm(3, rng, 1.0).real().cast<cplx>();
    Eigen::MatrixXcd Tg = rand_sym(3, rng, 1.0).real().cast<cplx>();
    bool ok = true;
    for (double t : {0.1, 0.5, 1.0})
        for (double s : {0.1, 0.5, 1.0})
            ok = ok && std::abs(local_exponent_rho(Sg, Tg, t, s, 64)) <= 1e-9;

    auto Sg2 = rand_antiherm(2, rng, 0.9);
    auto Tg2 = rand_sym(2, rng, 0.9);
    double maxtau = 0;
    for (double t : local_exponent(Sg2, Tg2, 1.0, 32).tau)
        maxtau = std::max(maxtau, std::abs(t));
    ok = ok && maxtau > 1e-4;  // the exponent must actually be nontrivial
    double t = 0.3, s = 0.45, r = 0.6;
    double res = local_exponent_rho(Sg2, Tg2, t, s, 64) +
                 local_exponent_rho(Sg2, Tg2, t + s, r, 64) -
                 local_exponent_rho(Sg2, Tg2, s, r, 64) -
                 local_exponent_rho(Sg2, Tg2, t, s + r, 64);
    return ok && std::abs(res) <= 1e-9;
}

// 9. pair potential limits and the two-particle stability sweep
static bool crit_nelson() {
    auto t0 = std::chrono::steady_clock::now();
    double W0 = veff_sharp3d(1, 1, 1, 2, 0);
    bool ok = std::abs(W0 - (-(2.0 - 1.0) / (8 * PI * PI))) <= 1e-10;

    auto cut = nelson_sharp_profile(1, 2);
    for (int i = 0; i < 20; ++i) {
        double x = 0.02 + 0.5 * i;
        ok = ok && std::abs(veff_pair(cut, cut, 1.3, -0.7, x) -
                            veff_sharp3d(1.3, -0.7, 1, 2, x)) <= 1e-8;
    }

    NelsonConfig cfg;
    cfg.N = 2;
    cfg.masses = {1, 1};
    cfg.cutoffs = {cut, cut};
    cfg.external = {PotentialSpec::well(0.6, 1), PotentialSpec::well(0.6, 1)};
    cfg.r_max = 4;
    cfg.nodes = 2000;
    double alpha_c = -1, prev = 0, ratio_last = 0;
    for (double a = 0.4; a <= 450; a *= 2) {
        cfg.alphas = {a, a};
        auto s = stability_check(cfg, 10.0);
        ok = ok && s.Delta_p >= prev;  // the margin changes sign exactly once
        if (alpha_c < 0 && s.Delta_p > 0) alpha_c = a;
        prev = s.Delta_p;
        ratio_last = s.E_rel / (a * a);
    }
    ok = ok && alpha_c > 0.4 && alpha_c < 450;
    ok = ok && std::abs(ratio_last - 2 * W0) <= 0.05 * std::abs(2 * W0);
    return ok && seconds_since(t0) <= 120.0;
}

static bool run_to(const std::string& cli, const std::string& args,
                   const std::string& out) {
    std::string cmd = cli + " " + args + " --json " + out + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
}

static std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 10. repeated CLI runs are byte-identical
static bool crit_determinism(const std::string& cli) {
    const char* cases[] = {
        "lattice --cutoff sharp:1:2 --m 1 --alpha 0.5 --p 1:0:0 --a 4 --L 1 "
        "--eps-ph 0.5",
        "gse --cutoff sharp:1:2 --m 9 --alpha 1 --sweep-lambda-max 4:512:8",
        "binding --well 1:1 --cutoff sharp:1:2 --m 0.5 --alpha 0.3 --eps 0.5 "
        "--grid 400",
    };
    bool ok = true;
    int k = 0;
    for (const char* args : cases) {
        std::string a = "/tmp/accept_" + std::to_string(k) + "a.json";
        std::string b = "/tmp/accept_" + std::to_string(k) + "b.json";
        ok = ok && run_to(cli, args, a) && run_to(cli, args, b);
        std::string ja = slurp(a), jb = slurp(b);
        ok = ok && !ja.empty() && ja == jb;
        ++k;
    }
    return ok;
}

int main(int argc, char** argv) {
    report(1, "lattice closed form vs eigendecomposition", crit_lattice_closed());
    report(2, "lattice schedule extrapolates to E_p", crit_lattice_extrapolate());
    report(3, "ground-energy growth in the asymptotic band", crit_gse_asymptotics());
    report(4, "Hilbert transform quadrature vs closed form", crit_hilbert());
    report(5, "critical mass and kernel monotonicity", crit_binding());
    report(6, "ladder commutators and vacuum moments", crit_fock());
    report(7, "intertwiner overlap and determinant identity", crit_intertwiner());
    report(8, "local exponent cocycle identity", crit_local_exponent());
    report(9, "pair potential and stability sweep", crit_nelson());
    if (argc > 1)
        report(10, "CLI output determinism", crit_determinism(argv[1]));
    else
        report(10, "CLI output determinism", false);
    std::printf("%s\n", failures == 0 ? "all criteria passed"
                                      : "some criteria failed");
    return failures == 0 ? 0 : 1;
}
