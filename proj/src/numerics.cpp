#include "polaron/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace polaron {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1,1]
const double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
const double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    if (!std::isfinite(fc)) throw Error(Error::InvalidInput, "integrand not finite");
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double x = h * kXgk[j];
        double f1 = f(c - x), f2 = f(c + x);
        if (!std::isfinite(f1) || !std::isfinite(f2))
            throw Error(Error::InvalidInput, "integrand not finite");
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    double value = resk * h;
    double err = std::abs((resk - resg) * h);
    // QUADPACK-style sharpening of the raw difference
    if (err > 0) {
        double scale = std::pow(200.0 * err / (std::abs(value) + 1e-300), 1.5);
        if (scale < 1.0) err *= scale;
    }
    return {a, b, value, err};
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                const Quadrature& q) {
    std::priority_queue<Panel> heap;
    Panel p0 = gk15(f, a, b);
    double total = p0.value, toterr = p0.err;
    heap.push(p0);
    int used = 1;
    while (true) {
        double tol = std::max(q.abs_tol, q.rel_tol * std::abs(total));
        if (toterr <= tol) return total;
        if (used >= q.max_subdivisions)
            throw Error(Error::NonConvergence, "quadrature: subdivision limit reached");
        Panel p = heap.top();
        heap.pop();
        double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b) return total;  // interval exhausted by roundoff
        Panel l = gk15(f, p.a, mid), r = gk15(f, mid, p.b);
        total += l.value + r.value - p.value;
        toterr += l.err + r.err - p.err;
        heap.push(l);
        heap.push(r);
        ++used;
    }
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const Quadrature& q) {
    if (std::isnan(a) || std::isnan(b))
        throw Error(Error::InvalidInput, "integrate: NaN endpoint");
    if (q.abs_tol + q.rel_tol <= 0)
        throw Error(Error::InvalidInput, "integrate: zero tolerances");
    const bool ainf = std::isinf(a), binf = std::isinf(b);
    if (a == b) return 0.0;
    if (ainf && binf)
        return integrate(f, a, 0.0, q) + integrate(f, 0.0, b, q);
    if (binf) {
        // x = a + t/(1-t), t in [0,1)
        auto g = [&](double t) {
            double u = 1.0 - t;
            return f(a + t / u) / (u * u);
        };
        return adaptive(g, 0.0, 1.0, q);
    }
    if (ainf) {
        auto g = [&](double t) {
            double u = 1.0 - t;
            return f(b - t / u) / (u * u);
        };
        return adaptive(g, 0.0, 1.0, q);
    }
    if (a > b) return -integrate(f, b, a, q);
    return adaptive(f, a, b, q);
}

double integrate_pv(const std::function<double(double)>& f, double a, double b,
                    double s, const Quadrature& q) {
    if (!(a < s && s < b))
        throw Error(Error::SingularityAtEndpoint, "integrate_pv: s outside (a,b)");
    const double h = std::min(s - a, b - s);
    // symmetric part: int_0^h [f(s-u) - f(s+u)]/u du (the 1/u pole cancels)
    auto sym = [&](double u) {
        if (u == 0.0) return 0.0;
        return (f(s - u) - f(s + u)) / u;
    };
    double inner = adaptive(sym, 0.0, h, q);
    double outer = 0.0;
    auto kern = [&](double x) { return f(x) / (s - x); };
    if (s - a > h + 0.0) outer += integrate(kern, a, s - h, q);
    if (b - s > h + 0.0) outer += integrate(kern, s + h, b, q);
    // tolerate the exactly-symmetric case where one side is empty
    if (s - a == h && b - s == h) outer = 0.0;
    return inner + outer;
}

double sine_integral(double x) {
    if (x < 0) return -sine_integral(-x);
    if (x == 0) return 0.0;
    if (x <= 8.0) {
        // power series sum_k (-1)^k x^(2k+1) / ((2k+1)(2k+1)!)
        double t = x;  // (-1)^k x^(2k+1)/(2k+1)! at k=0
        double acc = x;
        for (int k = 1; k < 100; ++k) {
            int n = 2 * k + 1;
            t *= -x * x / ((2.0 * k) * (2.0 * k + 1.0));
            double add = t / n;
            acc += add;
            if (std::abs(add) < 1e-16 * std::abs(acc) + 1e-18) break;
        }
        return acc;
    }
    Quadrature q{1e-14, 0.0, 4000};
    double tail = integrate([](double t) { return std::sin(t) / t; }, 8.0, x, q);
    static const double si8 = [] {
        double t = 8.0, acc = 8.0;
        for (int k = 1; k < 200; ++k) {
            int n = 2 * k + 1;
            t *= -64.0 / ((2.0 * k) * (2.0 * k + 1.0));
            acc += t / n;
            if (std::abs(t / n) < 1e-20) break;
        }
        return acc;
    }();
    return si8 + tail;
}

double bessel_j(double nu, double x) {
    if (x < 0) throw Error(Error::InvalidInput, "bessel_j: negative argument");
    const double pi = 3.14159265358979323846;
    auto close = [](double a, double b) { return std::abs(a - b) < 1e-12; };
    if (close(nu, 0.5)) {
        if (x == 0) return 0.0;
        return std::sqrt(2.0 / (pi * x)) * std::sin(x);
    }
    if (close(nu, 1.5)) {
        if (x == 0) return 0.0;
        if (x < 1e-4) {  // series to avoid cancellation: J_{3/2} ~ sqrt(2/(pi x)) x^2/3
            return std::sqrt(2.0 / (pi * x)) * (x * x / 3.0) * (1.0 - x * x / 10.0);
        }
        return std::sqrt(2.0 / (pi * x)) * (std::sin(x) / x - std::cos(x));
    }
    if (close(nu, 1.0) || close(nu, 2.0)) {
        int n = close(nu, 1.0) ? 1 : 2;
        if (x == 0) return 0.0;
        Quadrature q{1e-13, 0.0, 4000};
        double v = integrate(
            [&](double t) { return std::cos(n * t - x * std::sin(t)); }, 0.0, pi, q);
        return v / pi;
    }
    throw Error(Error::UnsupportedOrder, "bessel_j: unsupported order");
}

EigenSys sym_eigen(const Eigen::MatrixXd& A0) {
    const int n = static_cast<int>(A0.rows());
    if (A0.cols() != n) throw Error(Error::DimensionMismatch, "sym_eigen: not square");
    Eigen::MatrixXd A = 0.5 * (A0 + A0.transpose());
    Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(n, n);
    const double scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300);
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int qq = p + 1; qq < n; ++qq) off += A(p, qq) * A(p, qq);
        if (std::sqrt(off) <= 1e-15 * scale * n) {
            EigenSys out;
            out.values.resize(n);
            std::vector<int> idx(n);
            for (int i = 0; i < n; ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(),
                      [&](int i, int j) { return A(i, i) < A(j, j); });
            out.vectors.resize(n, n);
            for (int i = 0; i < n; ++i) {
                out.values[i] = A(idx[i], idx[i]);
                out.vectors.col(i) = Q.col(idx[i]);
            }
            return out;
        }
        for (int p = 0; p < n; ++p) {
            for (int qi = p + 1; qi < n; ++qi) {
                double apq = A(p, qi);
                if (std::abs(apq) <= 1e-300) continue;
                double theta = (A(qi, qi) - A(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                double tau = s / (1.0 + c);
                double app = A(p, p), aqq = A(qi, qi);
                A(p, p) = app - t * apq;
                A(qi, qi) = aqq + t * apq;
                A(p, qi) = A(qi, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    double qrp = Q(r, p), qrq = Q(r, qi);
                    Q(r, p) = qrp - s * (qrq + tau * qrp);
                    Q(r, qi) = qrq + s * (qrp - tau * qrq);
                    if (r == p || r == qi) continue;
                    double arp = A(r, p), arq = A(r, qi);
                    A(r, p) = A(p, r) = arp - s * (arq + tau * arp);
                    A(r, qi) = A(qi, r) = arq + s * (arp - tau * arq);
                }
            }
        }
    }
    throw Error(Error::NonConvergence, "sym_eigen: Jacobi sweeps exhausted");
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& A) {
    EigenSys es = sym_eigen(A);
    const int n = static_cast<int>(A.rows());
    double norm = 0;
    for (int i = 0; i < n; ++i) norm = std::max(norm, std::abs(es.values[i]));
    Eigen::VectorXd root(n);
    for (int i = 0; i < n; ++i) {
        double v = es.values[i];
        if (v < -1e-12 * norm)
            throw Error(Error::NegativeEigenvalue, "psd_sqrt: matrix not PSD");
        root[i] = std::sqrt(std::max(v, 0.0));
    }
    return es.vectors * root.asDiagonal() * es.vectors.transpose();
}

double op_norm(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
               int dim, double tol) {
    if (dim <= 0) throw Error(Error::InvalidInput, "op_norm: bad dimension");
    Eigen::VectorXd v = Eigen::VectorXd::Ones(dim) / std::sqrt(double(dim));
    double lam = 0.0;
    const int cap = 100000;
    for (int it = 0; it < cap; ++it) {
        Eigen::VectorXd w = apply(v);
        double nw = w.norm();
        if (nw == 0.0) return 0.0;
        double lam_new = v.dot(w);
        w /= nw;
        if (it > 2 && std::abs(lam_new - lam) <= tol * std::abs(lam_new)) return lam_new;
        lam = lam_new;
        v = w;
    }
    throw Error(Error::NonConvergence, "op_norm: power iteration stalled");
}

int tridiag_count_below(const std::vector<double>& diag,
                        const std::vector<double>& off, double x) {
    const int n = static_cast<int>(diag.size());
    int count = 0;
    double d = 1.0;
    for (int i = 0; i < n; ++i) {
        double b2 = (i > 0) ? off[i - 1] * off[i - 1] : 0.0;
        d = diag[i] - x - (i > 0 ? b2 / d : 0.0);
        if (d == 0.0) d = 1e-300;
        if (d < 0) ++count;
    }
    return count;
}

double tridiag_min_eigenvalue(const std::vector<double>& diag,
                              const std::vector<double>& off, double tol) {
    const int n = static_cast<int>(diag.size());
    if (n == 0) throw Error(Error::InvalidInput, "tridiag_min_eigenvalue: empty");
    double lo = diag[0], hi = diag[0];
    for (int i = 0; i < n; ++i) {
        double r = 0;
        if (i > 0) r += std::abs(off[i - 1]);
        if (i + 1 < n) r += std::abs(off[i]);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    double span = std::max(hi - lo, 1.0);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (tridiag_count_below(diag, off, mid) >= 1)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= tol * span) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace polaron
