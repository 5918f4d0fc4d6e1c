#include "fbikit/functional.hpp"

#include <algorithm>
#include <cmath>

namespace fbikit {

namespace {

// Initial segmentation for adaptive quadrature: window ends plus geometric
// ladders around the given feature locations (narrow bumps or near-poles),
// so the bisection never steps over a feature at coarse depth.
std::vector<double> ladder_edges(double a, double b, const std::vector<double>& centers,
                                 double scale) {
    std::vector<double> e = {a, b};
    for (double c : centers) {
        if (c > a && c < b) e.push_back(c);
        for (int j = 0; j <= 6; ++j) {
            double d = scale * std::pow(2.0, j);
            if (c - d > a && c - d < b) e.push_back(c - d);
            if (c + d > a && c + d < b) e.push_back(c + d);
        }
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
}

// Coefficients of P_k in d^k/dw^k e^{-(x-w)^2/(4 eps)} = P_k(x-w) e^{-(x-w)^2/(4 eps)},
// built from P_0 = 1, P_{k+1}(u) = -P_k'(u) + P_k(u) u/(2 eps).
std::vector<double> heat_kernel_poly(int k, double eps) {
    std::vector<double> p = {1.0};
    for (int step = 0; step < k; ++step) {
        std::vector<double> q(p.size() + 1, 0.0);
        for (size_t j = 0; j < p.size(); ++j) {
            if (j >= 1) q[j - 1] -= p[j] * static_cast<double>(j);
            q[j + 1] += p[j] / (2.0 * eps);
        }
        p = std::move(q);
    }
    return p;
}

Complex poly_eval(const std::vector<double>& c, Complex u) {
    Complex s(0.0);
    for (size_t j = c.size(); j-- > 0;) s = s * u + c[j];
    return s;
}

}  // namespace

DensityProfile DensityProfile::constant_profile(Complex c) {
    DensityProfile f;
    f.kind = Kind::Constant;
    f.constant = c;
    return f;
}

DensityProfile DensityProfile::poly_profile(std::vector<std::pair<MultiIndex, Complex>> monomials) {
    DensityProfile f;
    f.kind = Kind::Poly;
    f.poly = std::move(monomials);
    require(!f.poly.empty(), "polynomial profile needs at least one monomial");
    return f;
}

DensityProfile DensityProfile::sample_profile(std::vector<Complex> values) {
    DensityProfile f;
    f.kind = Kind::Samples;
    f.samples = std::move(values);
    require(f.samples.size() >= 2, "sampled profile needs at least two nodes");
    return f;
}

Complex DensityProfile::eval(const Vec& x, const Box& carrier) const {
    switch (kind) {
        case Kind::Constant:
            return constant;
        case Kind::Poly: {
            Complex s(0.0);
            for (const auto& [b, c] : poly) {
                Complex m = c;
                for (int i = 0; i < x.n; ++i)
                    for (int q = 0; q < b[i]; ++q) m *= x[i];
                s += m;
            }
            return s;
        }
        case Kind::Samples: {
            // Catmull-Rom on the uniform node grid, ends clamped.
            const long m = static_cast<long>(samples.size());
            const double lo = carrier.lo[0], hi = carrier.hi[0];
            double t = (x[0] - lo) / (hi - lo) * static_cast<double>(m - 1);
            t = std::clamp(t, 0.0, static_cast<double>(m - 1));
            long i = std::min(static_cast<long>(t), m - 2);
            double s = t - static_cast<double>(i);
            auto at = [&](long j) { return samples[static_cast<size_t>(std::clamp(j, 0L, m - 1))]; };
            Complex p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
            return 0.5 * (2.0 * p1 + (-p0 + p2) * s + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * s * s +
                          (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * s * s * s);
        }
    }
    return Complex(0.0);
}

Functional Functional::density(const Box& carrier, DensityProfile f) {
    require(carrier.n >= 1 && carrier.n <= kMaxDim, "density carrier dimension must be 1 or 2");
    for (int i = 0; i < carrier.n; ++i)
        require(carrier.lo[static_cast<size_t>(i)] < carrier.hi[static_cast<size_t>(i)],
                "density carrier must have positive volume");
    require(f.kind != DensityProfile::Kind::Samples || carrier.n == 1,
            "sampled profiles are one-dimensional");
    Functional mu;
    mu.variant = Variant::Density;
    mu.n = carrier.n;
    mu.carrier = carrier;
    mu.profile = std::move(f);
    return mu;
}

Functional Functional::point_combo(std::vector<PointAtom> atoms, int order_cap) {
    require(!atoms.empty(), "point combination needs at least one atom");
    int n = atoms.front().x.n;
    Box hull;
    hull.n = n;
    for (int i = 0; i < n; ++i) {
        hull.lo[static_cast<size_t>(i)] = atoms.front().x[i];
        hull.hi[static_cast<size_t>(i)] = atoms.front().x[i];
    }
    for (const auto& a : atoms) {
        require(a.x.n == n && a.alpha.n == n, "atom dimensions disagree");
        require(a.alpha.order() <= order_cap, "atom derivative order exceeds the cap");
        for (int i = 0; i < n; ++i) {
            hull.lo[static_cast<size_t>(i)] = std::min(hull.lo[static_cast<size_t>(i)], a.x[i]);
            hull.hi[static_cast<size_t>(i)] = std::max(hull.hi[static_cast<size_t>(i)], a.x[i]);
        }
    }
    Functional mu;
    mu.variant = Variant::PointCombo;
    mu.n = n;
    mu.carrier = hull;
    mu.atoms = std::move(atoms);
    return mu;
}

Functional Functional::delta(const Vec& x) {
    PointAtom a;
    a.coef = Complex(1.0);
    a.alpha.n = x.n;
    a.x = x;
    return point_combo({a});
}

Functional Functional::wedge_boundary(const Box& base, double height, std::vector<WedgeTerm> terms,
                                      double margin) {
    require(base.n == 1, "wedge boundary values are one-dimensional");
    require(base.lo[0] < base.hi[0], "wedge base must be a nondegenerate interval");
    require(height != 0.0, "wedge contour height must be nonzero");
    require(!terms.empty(), "wedge density needs at least one term");
    if (margin < 0.0) margin = std::max(0.05, 2.0 * std::abs(height));
    require(std::abs(height) < margin, "wedge height must stay below the carrier margin");
    for (const auto& t : terms) {
        if (t.power >= 0) continue;
        bool on_contour = std::abs(t.pole.imag() - height) < 1e-12 &&
                          t.pole.real() > base.lo[0] - 1e-12 && t.pole.real() < base.hi[0] + 1e-12;
        require(!on_contour, "wedge density pole lies on the contour");
    }
    Functional mu;
    mu.variant = Variant::WedgeBoundary;
    mu.n = 1;
    mu.carrier = base.dilated(margin);
    mu.wedge_base = base;
    mu.wedge_height = height;
    mu.wedge_terms = std::move(terms);
    return mu;
}

int Functional::max_order() const {
    int m = 0;
    for (const auto& a : atoms) m = std::max(m, a.alpha.order());
    return m;
}

Complex Functional::wedge_g(Complex z) const {
    Complex s(0.0);
    for (const auto& t : wedge_terms) {
        Complex d = z - t.pole;
        Complex m = t.coef;
        int q = std::abs(t.power);
        Complex f(1.0);
        for (int i = 0; i < q; ++i) f *= d;
        s += t.power >= 0 ? m * f : m / f;
    }
    return s;
}

double Functional::mass() const {
    switch (variant) {
        case Variant::PointCombo: {
            double s = 0.0;
            for (const auto& a : atoms) s += std::abs(a.coef);
            return s;
        }
        case Variant::Density: {
            auto f = [&](const Vec& x) { return Complex(std::abs(profile.eval(x, carrier))); };
            return integrate_box(f, carrier, 1e-10, 1e-8).value.real();
        }
        case Variant::WedgeBoundary: {
            auto f = [&](double x) {
                return Complex(std::abs(wedge_g(Complex(x, wedge_height))));
            };
            std::vector<double> centers;
            for (const auto& t : wedge_terms)
                if (t.power < 0) centers.push_back(t.pole.real());
            auto edges = ladder_edges(wedge_base.lo[0], wedge_base.hi[0], centers,
                                      std::max(std::abs(wedge_height), 1e-6));
            return integrate_adaptive_edges(f, edges, 1e-10, 1e-8).value.real();
        }
    }
    return 0.0;
}

QuadResult Functional::apply(const TestFunction& h, double abs_tol, double rel_tol) const {
    switch (variant) {
        case Variant::PointCombo: {
            QuadResult r;
            Complex s(0.0);
            for (const auto& a : atoms) {
                s += a.coef * h.derivative(a.alpha, CVec::from_real(a.x));
                ++r.evals;
            }
            r.value = s;
            return r;
        }
        case Variant::Density: {
            if (n == 1) {
                auto f = [&](double x) {
                    Vec p(x);
                    return profile.eval(p, carrier) * h.value(CVec::from_real(p));
                };
                return integrate_adaptive(f, carrier.lo[0], carrier.hi[0], abs_tol, rel_tol);
            }
            auto f = [&](const Vec& x) { return profile.eval(x, carrier) * h.value(CVec::from_real(x)); };
            return integrate_box(f, carrier, abs_tol, rel_tol);
        }
        case Variant::WedgeBoundary: {
            auto f = [&](double x) {
                Complex z(x, wedge_height);
                return wedge_g(z) * h.value(CVec(z));
            };
            std::vector<double> centers;
            for (const auto& t : wedge_terms)
                if (t.power < 0) centers.push_back(t.pole.real());
            auto edges = ladder_edges(wedge_base.lo[0], wedge_base.hi[0], centers,
                                      std::max(std::abs(wedge_height), 1e-6));
            return integrate_adaptive_edges(f, edges, abs_tol, rel_tol);
        }
    }
    return QuadResult{};
}

FunctionalCombo FunctionalCombo::single(Functional f) {
    FunctionalCombo c;
    c.parts.push_back(WeightedFunctional{Complex(1.0), std::move(f)});
    return c;
}

FunctionalCombo FunctionalCombo::difference(const Functional& a, const Functional& b) {
    require(a.n == b.n, "difference needs functionals of equal dimension");
    FunctionalCombo c;
    c.parts.push_back(WeightedFunctional{Complex(1.0), a});
    c.parts.push_back(WeightedFunctional{Complex(-1.0), b});
    return c;
}

int FunctionalCombo::dim() const {
    require(!parts.empty(), "empty combination has no dimension");
    return parts.front().fun.n;
}

Box FunctionalCombo::hull() const {
    require(!parts.empty(), "empty combination has no hull");
    Box h = parts.front().fun.carrier;
    for (const auto& p : parts) {
        for (int i = 0; i < h.n; ++i) {
            h.lo[static_cast<size_t>(i)] = std::min(h.lo[static_cast<size_t>(i)],
                                                    p.fun.carrier.lo[static_cast<size_t>(i)]);
            h.hi[static_cast<size_t>(i)] = std::max(h.hi[static_cast<size_t>(i)],
                                                    p.fun.carrier.hi[static_cast<size_t>(i)]);
        }
    }
    return h;
}

QuadResult FunctionalCombo::apply(const TestFunction& h, double abs_tol, double rel_tol) const {
    QuadResult total;
    for (const auto& p : parts) {
        QuadResult r = p.fun.apply(h, abs_tol, rel_tol);
        total.value += p.weight * r.value;
        total.err += std::abs(p.weight) * r.err;
        total.converged = total.converged && r.converged;
        total.evals += r.evals;
    }
    return total;
}

HeatApprox::HeatApprox(const TestFunction* h, const Box& window, double eps)
    : h_(h), window_(window), eps_(eps) {
    require(eps > 0.0, "heat regularization needs eps > 0");
    require(h->dim() == window.n, "window dimension must match the test function");
}

Complex HeatApprox::kernel_integral(const MultiIndex& a, const CVec& w) const {
    const double norm = std::pow(4.0 * M_PI * eps_, -0.5 * window_.n);
    const double s = 2.0 * std::sqrt(eps_);
    std::array<std::vector<double>, kMaxDim> poly;
    for (int i = 0; i < window_.n; ++i) poly[static_cast<size_t>(i)] = heat_kernel_poly(a[i], eps_);

    auto axis_factor = [&](int i, double x) {
        Complex u = Complex(x) - w[i];
        return poly_eval(poly[static_cast<size_t>(i)], u) * std::exp(-u * u / (4.0 * eps_));
    };

    if (window_.n == 1) {
        auto edges = ladder_edges(window_.lo[0], window_.hi[0], {w[0].real()}, s);
        auto f = [&](double x) { return axis_factor(0, x) * h_->value(CVec(Complex(x))); };
        return norm * integrate_adaptive_edges(f, edges, 1e-13, 1e-11).value;
    }
    auto outer_edges = ladder_edges(window_.lo[0], window_.hi[0], {w[0].real()}, s);
    auto inner_edges = ladder_edges(window_.lo[1], window_.hi[1], {w[1].real()}, s);
    auto outer = [&](double x0) {
        auto inner = [&](double x1) {
            return axis_factor(1, x1) * h_->value(CVec(Complex(x0), Complex(x1)));
        };
        return axis_factor(0, x0) * integrate_adaptive_edges(inner, inner_edges, 1e-13, 1e-11).value;
    };
    return norm * integrate_adaptive_edges(outer, outer_edges, 1e-12, 1e-10).value;
}

Complex HeatApprox::value(const CVec& w) const {
    MultiIndex zero;
    zero.n = window_.n;
    return kernel_integral(zero, w);
}

Complex HeatApprox::derivative(const MultiIndex& a, const CVec& w) const {
    return kernel_integral(a, w);
}

HeatErrorReport heat_error_report(const TestFunction& h, const HeatApprox& he, const Box& K,
                                  int pts_per_axis) {
    HeatErrorReport rep;
    const int n = K.n;
    auto node = [&](int axis, int i) {
        double lo = K.lo[static_cast<size_t>(axis)], hi = K.hi[static_cast<size_t>(axis)];
        return pts_per_axis == 1 ? 0.5 * (lo + hi)
                                 : lo + (hi - lo) * static_cast<double>(i) /
                                            static_cast<double>(pts_per_axis - 1);
    };
    int m1 = n == 2 ? pts_per_axis : 1;
    for (int i = 0; i < pts_per_axis; ++i) {
        for (int j = 0; j < m1; ++j) {
            Vec x = n == 1 ? Vec(node(0, i)) : Vec(node(0, i), node(1, j));
            CVec cx = CVec::from_real(x);
            rep.sup_err = std::max(rep.sup_err, std::abs(h.value(cx) - he.value(cx)));
            ++rep.grid_points;
        }
    }
    // localization probes: several diameters beyond the window on each axis
    double d = std::max(K.diameter(), 1.0);
    for (int axis = 0; axis < n; ++axis) {
        for (double side : {-3.0, 3.0}) {
            Vec x = Vec::zero(n);
            for (int i = 0; i < n; ++i)
                x[i] = 0.5 * (K.lo[static_cast<size_t>(i)] + K.hi[static_cast<size_t>(i)]);
            x[axis] += side * d;
            rep.max_outside = std::max(rep.max_outside, std::abs(he.value(CVec::from_real(x))));
        }
    }
    return rep;
}

}  // namespace fbikit
