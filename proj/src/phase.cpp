#include "fbikit/phase.hpp"

#include <algorithm>
#include <cmath>

#include "fbikit/quadrature.hpp"

namespace fbikit {

namespace {
Complex cpow_int(Complex z, int m) {
    Complex r(1.0);
    for (int i = 0; i < m; ++i) r *= z;
    return r;
}
}  // namespace

Complex PhasePolynomial::eval(const CVec& z) const {
    Complex s(0.0);
    for (const auto& t : terms) {
        Complex m(t.coef);
        for (int i = 0; i < n; ++i) m *= cpow_int(z[i], t.alpha[i]);
        s += m;
    }
    return s;
}

double PhasePolynomial::eval_real(const Vec& x) const {
    return eval(CVec::from_real(x)).real();
}

Complex PhasePolynomial::grad(int j, const CVec& z) const {
    Complex s(0.0);
    for (const auto& t : terms) {
        if (t.alpha[j] == 0) continue;
        Complex m(t.coef * t.alpha[j]);
        for (int i = 0; i < n; ++i) m *= cpow_int(z[i], t.alpha[i] - (i == j ? 1 : 0));
        s += m;
    }
    return s;
}

Complex PhasePolynomial::hess(int i, int j, const CVec& z) const {
    Complex s(0.0);
    for (const auto& t : terms) {
        MultiIndex a = t.alpha;
        double f = t.coef;
        if (a[i] == 0) continue;
        f *= a[i];
        a[i] -= 1;
        if (a[j] == 0) continue;
        f *= a[j];
        a[j] -= 1;
        Complex m(f);
        for (int q = 0; q < n; ++q) m *= cpow_int(z[q], a[q]);
        s += m;
    }
    return s;
}

double PhasePolynomial::coef_norm() const {
    double s = 0.0;
    for (const auto& t : terms) s += std::abs(t.coef);
    return s;
}

void check_homogeneous(const PhasePolynomial& p) {
    require(p.n >= 1 && p.n <= kMaxDim, "phase dimension must be 1 or 2");
    require(p.k >= 1, "phase half-degree must be >= 1");
    require(!p.terms.empty(), "phase polynomial has no terms");
    for (const auto& t : p.terms) {
        require(t.alpha.n == p.n, "phase term dimension mismatch");
        require(t.alpha.order() == 2 * p.k, "non-homogeneous phase term rejected");
    }
}

namespace {

// Unit vectors for the sphere scan. N=1: both endpoints. N=2: golden-angle set.
std::vector<Vec> sphere_grid(int n, int count) {
    std::vector<Vec> pts;
    if (n == 1) {
        pts.push_back(Vec(1.0));
        pts.push_back(Vec(-1.0));
        return pts;
    }
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    pts.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        double th = std::fmod(i * golden, 2.0 * M_PI);
        pts.push_back(Vec(std::cos(th), std::sin(th)));
    }
    return pts;
}

}  // namespace

PositivityCertificate validate_positivity(const PhasePolynomial& p, double c_floor) {
    check_homogeneous(p);
    PositivityCertificate cert;
    int count = p.n == 1 ? 2 : 64;
    double prev_min = 0.0, prev_max = 0.0;
    for (int pass = 0;; ++pass) {
        auto pts = sphere_grid(p.n, count);
        double mn = 1e300, mx = -1e300;
        for (const auto& x : pts) {
            double v = p.eval_real(x);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        cert.samples = static_cast<int>(pts.size());
        cert.c_lower = mn;
        cert.c_upper = mx;
        if (p.n == 1) break;
        if (pass > 0) {
            double ch = std::max(std::abs(mn - prev_min) / std::max(std::abs(mn), 1e-30),
                                 std::abs(mx - prev_max) / std::max(std::abs(mx), 1e-30));
            cert.refine_change = ch;
            if (ch < 0.01 || count >= (1 << 16)) break;
        }
        prev_min = mn;
        prev_max = mx;
        count *= 2;
    }
    cert.admissible = cert.c_lower > c_floor;
    return cert;
}

ConeFit fit_complex_cone(const PhasePolynomial& p, double rho, double c_floor) {
    check_homogeneous(p);
    require(rho >= 0.0, "cone aperture must be nonnegative");
    ConeFit fit;
    fit.rho = rho;
    // z = (x + i rho sigma y)/|...| with unit x, y; Re p is homogeneous, so the
    // normalization is |1 + (rho sigma)^2|^k against Re p(x + i rho sigma y).
    const int nsigma = 33;
    double mn = 1e300, mx = -1e300;
    auto xs = sphere_grid(p.n, p.n == 1 ? 2 : 512);
    auto ys = sphere_grid(p.n, p.n == 1 ? 2 : 512);
    for (const auto& x : xs) {
        for (const auto& y : ys) {
            for (int i = 0; i < nsigma; ++i) {
                double sg = static_cast<double>(i) / (nsigma - 1);
                double t = rho * sg;
                CVec z = CVec::from_real(x);
                for (int q = 0; q < p.n; ++q) z[q] += Complex(0.0, t * y[q]);
                double v = p.eval(z).real() / std::pow(1.0 + t * t, p.k);
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
        }
    }
    fit.c_prime = mn;
    fit.c_upper = mx;
    fit.admissible = mn > c_floor;
    return fit;
}

ConeScan scan_complex_cone(const PhasePolynomial& p, const std::vector<double>& rho_grid,
                           double c_floor) {
    ConeScan scan;
    for (double rho : rho_grid) {
        ConeFit f = fit_complex_cone(p, rho, c_floor);
        if (f.admissible) scan.rho_max = std::max(scan.rho_max, rho);
        scan.fits.push_back(f);
    }
    return scan;
}

namespace {
// Truncation radius: beyond it e^{-p} is below ~1e-18 on the real axis.
double decay_radius(const PositivityCertificate& cert, int k) {
    double c = std::max(cert.c_lower, 1e-12);
    return std::pow(42.0 / c, 1.0 / (2.0 * k));
}
}  // namespace

Normalization normalization_constant(const PhasePolynomial& p, const PositivityCertificate& cert) {
    check_homogeneous(p);
    require(cert.admissible, "normalization requires an admissible positivity certificate");
    Normalization norm;
    double R = decay_radius(cert, p.k);
    Box domain = p.n == 1 ? Box::interval(-R, R) : Box::rect(-R, R, -R, R);
    QuadResult q = integrate_box(
        [&](const Vec& x) { return Complex(std::exp(-p.eval_real(x))); }, domain, 1e-13, 1e-12);
    norm.integral = q.value.real();
    norm.est_err = q.err;
    norm.converged = q.converged && norm.integral > 0.0;
    if (norm.integral > 0.0) norm.c_p = 1.0 / norm.integral;
    return norm;
}

GoodPhaseCheck check_good_phase(const PhasePolynomial& p, double lambda,
                                const PositivityCertificate& cert, double c_p, double im_range,
                                int w_grid, const std::vector<double>& t_grid, double tol) {
    check_homogeneous(p);
    require(cert.admissible, "good-phase check requires an admissible positivity certificate");
    double lim = 1.0 / p.k;
    require(lambda > 0.0 && lambda < lim, "scaling exponent must lie strictly inside (0, 1/k)");

    GoodPhaseCheck chk;
    chk.lambda = lambda;

    // H(w,t) = c_p * integral over u of e^{-p(u - t^lambda w)} (after substitution).
    // The u-contour is the real axis shifted against a complex center.
    auto H_dev = [&](Complex w, double t) {
        double scale = std::pow(t, lambda);
        Complex a = scale * w;
        double b = std::abs(a.imag());
        double R = decay_radius(cert, p.k) + 2.0 * b + 1.0;
        for (int grow = 0; grow < 24; ++grow) {
            double re_lo = p.eval(CVec(Complex(-R - a.real(), -a.imag()))).real();
            double re_hi = p.eval(CVec(Complex(R - a.real(), -a.imag()))).real();
            if (re_lo > 42.0 && re_hi > 42.0) break;
            R *= 1.5;
        }
        QuadResult q;
        if (p.n == 1) {
            q = integrate_adaptive(
                [&](double u) { return std::exp(-p.eval(CVec(Complex(u) - a))); },
                a.real() - R, a.real() + R, 1e-11, 1e-10);
        } else {
            // Complex shift applied on the first coordinate only.
            Box dom = Box::rect(a.real() - R, a.real() + R, -R, R);
            q = integrate_box(
                [&](const Vec& u) {
                    CVec zz(Complex(u[0]) - a, Complex(u[1]));
                    return std::exp(-p.eval(zz));
                },
                dom, 1e-11, 1e-10);
        }
        return std::abs(c_p * q.value - 1.0);
    };

    chk.max_h_dev = 0.0;
    for (int iw = 0; iw < w_grid; ++iw) {
        for (int jw = 0; jw < w_grid; ++jw) {
            double re = w_grid == 1 ? 0.0 : -1.0 + 2.0 * iw / (w_grid - 1.0);
            double im = w_grid == 1 ? 0.0 : 0.9 * im_range * (-1.0 + 2.0 * jw / (w_grid - 1.0));
            for (double t : t_grid) {
                double d = H_dev(Complex(re, im), t);
                chk.h_values.push_back(d);
                chk.max_h_dev = std::max(chk.max_h_dev, d);
            }
        }
    }

    // Finite witness for kernel integrability: the inner integral of
    // |Psi(|xi|^lambda tau)| |xi|^{lambda N} over tau is scale-invariant; it is
    // evaluated at sampled |xi| under two truncations and folded against the
    // Gaussian weights on a small epsilon grid.
    double R0 = decay_radius(cert, p.k);
    bool conv = true;
    double inner_ref = 0.0;
    for (double r : {0.5, 1.0, 4.0, 16.0}) {
        double s = std::pow(r, lambda);
        auto inner = [&](double radius) {
            QuadResult q;
            if (p.n == 1) {
                q = integrate_adaptive(
                    [&](double tau) { return Complex(std::exp(-p.eval_real(Vec(s * tau)))) ; },
                    -radius / s, radius / s, 1e-10, 1e-9);
                return std::abs(q.value) * c_p * s;
            }
            Box dom = Box::rect(-radius / s, radius / s, -radius / s, radius / s);
            q = integrate_box(
                [&](const Vec& tau) {
                    return Complex(std::exp(-p.eval_real(Vec(s * tau[0], s * tau[1]))));
                },
                dom, 1e-10, 1e-9);
            return std::abs(q.value) * c_p * s * s;
        };
        double i1 = inner(R0);
        double i2 = inner(2.0 * R0);
        if (std::abs(i1 - i2) > 1e-6 * std::max(1.0, std::abs(i2))) conv = false;
        inner_ref = i2;
    }
    double proxy = 0.0;
    for (double eps : {1.0, 0.1, 0.01})
        proxy += inner_ref * std::pow(M_PI / eps, 0.5 * p.n);
    chk.integrability_proxy = proxy;
    chk.integrability_converged = conv;

    chk.good = chk.max_h_dev <= tol && conv;
    return chk;
}

}  // namespace fbikit
