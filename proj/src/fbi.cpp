#include "fbikit/fbi.hpp"

#include <algorithm>
#include <cmath>

#include "fbikit/test_function.hpp"
#include "fbikit/threadpool.hpp"

namespace fbikit {

namespace {

constexpr double kLogCut = 37.0;       // e^{-37} ~ 8e-17: window truncation level
constexpr double kUnderflow = 1e-300;  // below this, log-modulus cells are unusable

// min of p on the unit sphere (coarse; only used to size windows)
double phase_floor(const PhasePolynomial& p) {
    if (p.n == 1) return std::min(p.eval_real(Vec(1.0)), p.eval_real(Vec(-1.0)));
    double m = 1e300;
    for (int i = 0; i < 128; ++i) {
        double th = 2.0 * M_PI * static_cast<double>(i) / 128.0;
        m = std::min(m, p.eval_real(Vec(std::cos(th), std::sin(th))));
    }
    return m;
}

// half-width where decay * c_low * u^{2k} reaches kLogCut, optionally fighting
// a linear growth term grow * u (complex covectors)
double loc_width(double c_low, int k, double decay, double grow) {
    if (decay <= 0.0 || c_low <= 0.0) return 1e30;
    double w = std::pow(kLogCut / (c_low * decay), 1.0 / (2.0 * k));
    for (int it = 0; it < 4 && grow > 0.0; ++it)
        w = std::pow((kLogCut + grow * w) / (c_low * decay), 1.0 / (2.0 * k));
    return std::min(w, 1e4);
}

void finalize(FbiEval* e) {
    double m = std::abs(e->value);
    if (!std::isfinite(m) || m < kUnderflow) e->valid = false;
}

bool simple_quadratic(const PhasePolynomial& p, double* coef) {
    if (p.n != 1 || p.k != 1 || p.terms.size() != 1) return false;
    const PhaseTerm& t = p.terms.front();
    if (t.alpha.order() != 2 || t.coef <= 0.0) return false;
    *coef = t.coef;
    return true;
}

FbiEval point_eval(const Functional& mu, const FbiKernelTest& ker, double c_p) {
    FbiEval out;
    Complex s(0.0);
    for (const auto& a : mu.atoms) {
        s += a.coef * ker.derivative(a.alpha, CVec::from_real(a.x));
        ++out.evals;
    }
    out.value = c_p * s;
    finalize(&out);
    return out;
}

FbiEval density_eval(const Functional& mu, const FbiKernelTest& ker, double c_p, const Vec& tau,
                     const Vec& re_freq, double wid, double rel_tol) {
    FbiEval out;
    std::array<double, kMaxDim> lo{}, hi{};
    for (int i = 0; i < mu.n; ++i) {
        lo[static_cast<size_t>(i)] = std::max(mu.carrier.lo[static_cast<size_t>(i)], tau[i] - wid);
        hi[static_cast<size_t>(i)] = std::min(mu.carrier.hi[static_cast<size_t>(i)], tau[i] + wid);
        if (!(hi[static_cast<size_t>(i)] > lo[static_cast<size_t>(i)])) {
            out.valid = false;  // true value is below the truncation level
            return out;
        }
    }
    if (mu.n == 1) {
        auto f = [&](double w) {
            return mu.profile.eval(Vec(w), mu.carrier) * ker.value(CVec(Complex(w)));
        };
        QuadResult q = integrate_oscillatory(f, lo[0], hi[0], re_freq[0], 0.0, rel_tol);
        out.value = c_p * q.value;
        out.err = c_p * q.err;
        out.evals = q.evals;
        out.valid = q.converged;
    } else {
        bool inner_ok = true;
        long inner_evals = 0;
        auto outer = [&](double w0) {
            auto inner = [&](double w1) {
                Vec w(w0, w1);
                return mu.profile.eval(w, mu.carrier) * ker.value(CVec::from_real(w));
            };
            QuadResult qi =
                integrate_oscillatory(inner, lo[1], hi[1], re_freq[1], 0.0, 0.5 * rel_tol);
            inner_ok = inner_ok && qi.converged;
            inner_evals += qi.evals;
            return qi.value;
        };
        QuadResult q = integrate_oscillatory(outer, lo[0], hi[0], re_freq[0], 0.0, rel_tol);
        out.value = c_p * q.value;
        out.err = c_p * q.err;
        out.evals = q.evals + inner_evals;
        out.valid = q.converged && inner_ok;
    }
    finalize(&out);
    return out;
}

struct HeightWindow {
    double lower = -1e30;
    double upper = 1e30;
};

// heights reachable from wedge_height without crossing a pole above the base
HeightWindow pole_free_heights(const Functional& mu) {
    HeightWindow hw;
    double y = mu.wedge_height;
    double lo = mu.wedge_base.lo[0] - 0.1, hi = mu.wedge_base.hi[0] + 0.1;
    for (const auto& t : mu.wedge_terms) {
        if (t.power >= 0) continue;
        if (t.pole.real() < lo || t.pole.real() > hi) continue;
        double im = t.pole.imag();
        if (im < y)
            hw.lower = std::max(hw.lower, im);
        else
            hw.upper = std::min(hw.upper, im);
    }
    return hw;
}

FbiEval wedge_eval(const Functional& mu, const PhasePolynomial& p, const FbiKernelTest& ker,
                   double c_p, const Vec& tau, double re_freq, double height, double rel_tol) {
    FbiEval out;
    const double y = mu.wedge_height;
    const double H = height;
    const double blo = mu.wedge_base.lo[0], bhi = mu.wedge_base.hi[0];

    std::vector<double> centers = {tau[0]};
    double min_gap = 1e30;
    for (const auto& t : mu.wedge_terms) {
        if (t.power >= 0) continue;
        centers.push_back(t.pole.real());
        min_gap = std::min(min_gap, std::max(std::abs(t.pole.imag() - H), 1e-6));
    }
    double gauss = 1.0 / std::sqrt(p.coef_norm() * re_freq + 1.0);
    double scale = std::min(min_gap, gauss);

    auto f_line = [&](double x) {
        Complex z(x, H);
        return mu.wedge_g(z) * ker.value(CVec(z));
    };
    QuadResult line = integrate_oscillatory(f_line, blo, bhi, re_freq, 0.0, rel_tol, centers, scale);
    out.value = line.value;
    out.err = line.err;
    out.evals = line.evals;
    out.valid = line.converged;

    // Cauchy deformation: moving the height adds the two vertical legs
    if (H != y) {
        double t0 = std::min(y, H), t1 = std::max(y, H);
        double orient_lo = H > y ? 1.0 : -1.0;
        for (int side = 0; side < 2; ++side) {
            double xe = side == 0 ? blo : bhi;
            double orient = side == 0 ? orient_lo : -orient_lo;
            auto f_leg = [&](double t) {
                Complex z(xe, t);
                return Complex(0.0, 1.0) * mu.wedge_g(z) * ker.value(CVec(z));
            };
            QuadResult leg = integrate_adaptive(f_leg, t0, t1, 0.0, rel_tol);
            out.value += orient * leg.value;
            out.err += leg.err;
            out.evals += leg.evals;
            out.valid = out.valid && leg.converged;
        }
    }
    out.value *= c_p;
    out.err *= c_p;
    finalize(&out);
    return out;
}

void check_dims(const Functional& mu, const PhasePolynomial& p, const Vec& tau, int xi_n) {
    require(mu.n == p.n && tau.n == p.n && xi_n == p.n,
            "functional, phase, base point and covector dimensions must agree");
}

}  // namespace

FbiEval fbi(const Functional& mu, const PhasePolynomial& p, double c_p, const Vec& tau,
            const Vec& xi, double rel_tol) {
    check_dims(mu, p, tau, xi.n);
    FbiKernelTest ker(&p, tau, CVec::from_real(xi));
    double r = norm(xi);
    switch (mu.variant) {
        case Functional::Variant::PointCombo:
            return point_eval(mu, ker, c_p);
        case Functional::Variant::Density: {
            double wid = loc_width(phase_floor(p), p.k, r, 0.0);
            Vec freq = Vec::zero(mu.n);
            for (int i = 0; i < mu.n; ++i) freq[i] = std::abs(xi[i]);
            return density_eval(mu, ker, c_p, tau, freq, wid, rel_tol);
        }
        case Functional::Variant::WedgeBoundary: {
            // contour height minimizing the kernel growth s H + a H^2 inside
            // the pole-free strip; same functional value, far better
            // conditioning than the fixed height at large |xi|
            double a = 0.0;
            double H = mu.wedge_height;
            if (r > 0.0 && simple_quadratic(p, &a)) {
                double s = xi[0] > 0.0 ? 1.0 : -1.0;
                HeightWindow hw = pole_free_heights(mu);
                double inset_lo = hw.lower + 0.1 * std::min(std::abs(H - hw.lower), 1.0);
                double inset_hi = hw.upper - 0.1 * std::min(std::abs(hw.upper - H), 1.0);
                H = std::clamp(-s / (2.0 * a), inset_lo, inset_hi);
            }
            return wedge_eval(mu, p, ker, c_p, tau, r, H, rel_tol);
        }
    }
    return FbiEval{};
}

FbiEval fbi_complex(const Functional& mu, const PhasePolynomial& p, double c_p, const Vec& tau,
                    const CVec& zeta, double rel_tol) {
    check_dims(mu, p, tau, zeta.n);
    FbiKernelTest ker(&p, tau, zeta);
    if (!ker.branch_ok()) {
        FbiEval out;
        out.valid = false;
        return out;
    }
    double re_br = ker.bracket().real();
    double grow = norm(zeta.imag());
    double re_norm = norm(zeta.real());
    switch (mu.variant) {
        case Functional::Variant::PointCombo:
            return point_eval(mu, ker, c_p);
        case Functional::Variant::Density: {
            double wid = loc_width(phase_floor(p), p.k, re_br, grow);
            Vec freq = Vec::zero(mu.n);
            for (int i = 0; i < mu.n; ++i) freq[i] = re_norm;
            return density_eval(mu, ker, c_p, tau, freq, wid, rel_tol);
        }
        case Functional::Variant::WedgeBoundary:
            // fixed contour: the deformation analysis covers real covectors only
            return wedge_eval(mu, p, ker, c_p, tau, re_norm, mu.wedge_height, rel_tol);
    }
    return FbiEval{};
}

std::vector<double> make_radii(double r0, double factor, int count) {
    require(r0 > 0.0 && factor >= 1.1 && count >= 1,
            "radii need r0 > 0, factor >= 1.1, count >= 1");
    std::vector<double> r(static_cast<size_t>(count));
    for (int j = 0; j < count; ++j) r[static_cast<size_t>(j)] = r0 * std::pow(factor, j);
    return r;
}

GridSpec default_grid(int n, std::vector<Vec> base_points) {
    require(n >= 1 && n <= kMaxDim, "grids cover one or two variables");
    GridSpec spec;
    spec.base_points = std::move(base_points);
    if (n == 1) {
        spec.directions = {Vec(1.0), Vec(-1.0)};
        spec.radii = make_radii(1.0, std::sqrt(2.0), 25);
    } else {
        for (int j = 0; j < 16; ++j) {
            double th = 2.0 * M_PI * static_cast<double>(j) / 16.0;
            spec.directions.push_back(Vec(std::cos(th), std::sin(th)));
        }
        spec.radii = make_radii(1.0, std::sqrt(2.0), 13);
    }
    return spec;
}

void SampleGrid::ray(long i_tau, long i_theta, std::vector<double>* r, std::vector<Complex>* v,
                     std::vector<char>* ok) const {
    r->clear();
    v->clear();
    ok->clear();
    for (long i = 0; i < n_r(); ++i) {
        long idx = index(i_tau, i_theta, i);
        r->push_back(spec.radii[static_cast<size_t>(i)]);
        v->push_back(values[static_cast<size_t>(idx)]);
        ok->push_back(valid[static_cast<size_t>(idx)]);
    }
}

SampleGrid fbi_grid(const Functional& mu, const PhasePolynomial& p, double c_p,
                    const GridSpec& spec, int threads, double rel_tol) {
    require(!spec.base_points.empty() && !spec.directions.empty() && !spec.radii.empty(),
            "grid spec must be nonempty");
    require(spec.radii.front() > 0.0, "radii must be positive");
    for (size_t i = 1; i < spec.radii.size(); ++i)
        require(spec.radii[i] >= 1.1 * spec.radii[i - 1],
                "radii must increase geometrically (ratio >= 1.1)");

    SampleGrid g;
    g.spec = spec;
    for (auto& d : g.spec.directions) {
        double m = norm(d);
        require(m > 0.0, "directions must be nonzero");
        d = (1.0 / m) * d;
    }
    for (const auto& t : g.spec.base_points)
        require(t.n == mu.n, "base point dimension must match the functional");

    long cells = g.cells();
    g.values.assign(static_cast<size_t>(cells), Complex(0.0));
    g.errs.assign(static_cast<size_t>(cells), 0.0);
    g.valid.assign(static_cast<size_t>(cells), 0);

    long nth = g.n_theta(), nr = g.n_r();
    parallel_for(cells, threads, [&](long idx) {
        long i_r = idx % nr;
        long i_theta = (idx / nr) % nth;
        long i_tau = idx / (nr * nth);
        Vec xi = g.spec.radii[static_cast<size_t>(i_r)] *
                 g.spec.directions[static_cast<size_t>(i_theta)];
        FbiEval e = fbi(mu, p, c_p, g.spec.base_points[static_cast<size_t>(i_tau)], xi, rel_tol);
        g.values[static_cast<size_t>(idx)] = e.value;
        g.errs[static_cast<size_t>(idx)] = e.err;
        g.valid[static_cast<size_t>(idx)] = e.valid ? 1 : 0;
    });
    return g;
}

AprioriReport apriori_bound_audit(const SampleGrid& grid, const Functional& mu,
                                  const PhasePolynomial& p, double c_p, double tol) {
    AprioriReport rep;
    rep.total_cells = grid.cells();
    rep.max_rate = -1e300;
    for (long idx = 0; idx < rep.total_cells; ++idx) {
        if (!grid.valid[static_cast<size_t>(idx)]) continue;
        ++rep.valid_cells;
        double m = std::abs(grid.values[static_cast<size_t>(idx)]);
        double r = grid.spec.radii[static_cast<size_t>(idx % grid.n_r())];
        rep.max_modulus = std::max(rep.max_modulus, m);
        rep.max_rate = std::max(rep.max_rate, std::log(m) / r);
    }
    if (rep.valid_cells == 0) {
        rep.max_rate = 0.0;
        return rep;
    }
    double r0 = grid.spec.radii.front();
    int order = mu.max_order();
    if (mu.variant == Functional::Variant::WedgeBoundary) {
        // |e^{i(tau-z)xi}| <= e^{|y||xi|} on the contour
        rep.rate_bound = std::abs(mu.wedge_height) + tol;
        rep.pass = rep.max_rate <= rep.rate_bound;
    } else if (order == 0) {
        double c = c_p * mu.mass();
        rep.modulus_bound = c;
        rep.rate_bound = std::max(0.0, std::log(c)) / r0 + tol;
        rep.pass = rep.max_rate <= rep.rate_bound && rep.max_modulus <= 1.01 * c + 1e-12;
    } else {
        // each derivative brings a factor bounded by (1+r)(1 + sup|grad-ish p|);
        // log(1+r)/r peaks at the smallest radius
        double reach = 0.0;
        for (const auto& t : grid.spec.base_points)
            for (const auto& a : mu.atoms) reach = std::max(reach, norm(t - a.x));
        double kp = p.coef_norm() * std::pow(2.0 * p.k, order) * std::pow(1.0 + reach, 2.0 * p.k);
        double lfact = 0.0;
        for (int j = 2; j <= order; ++j) lfact += std::log(static_cast<double>(j));
        double c = c_p * mu.mass();
        rep.rate_bound = std::max(0.0, std::log(c)) / r0 +
                         (lfact + order * (std::log1p(kp) + std::log1p(r0))) / r0 + tol;
        rep.pass = rep.max_rate <= rep.rate_bound;
    }
    return rep;
}

namespace {

struct TauInt {
    Complex value{0.0, 0.0};
    bool ok = true;
    long evals = 0;
};

// Panel edges for the tau integral at covector magnitude r: uniform interior
// panels at the kernel's Gaussian scale plus geometric tails out to the
// truncation margin. refine = 2 doubles the density (consistency probes).
std::vector<double> tau_axis_edges(const Functional& mu, const PhasePolynomial& p, double c_low,
                                   int axis, double r, int refine) {
    double lo = mu.carrier.lo[static_cast<size_t>(axis)];
    double hi = mu.carrier.hi[static_cast<size_t>(axis)];
    double m = loc_width(c_low, p.k, std::max(r, 1e-6), 0.0);
    double sigma = m / (std::pow(kLogCut, 1.0 / (2.0 * p.k)) * static_cast<double>(refine));
    double step = 2.0 * sigma;
    // boundary-value integrands keep a residual tau oscillation at the
    // deformed height; bound the panel by the wavelength as well
    if (mu.variant == Functional::Variant::WedgeBoundary && r > 0.0)
        step = std::min(step, 4.0 * M_PI / (r * static_cast<double>(refine)));

    std::vector<double> e;
    for (double t = m; t > sigma; t *= 0.5) {
        e.push_back(lo - t);
        e.push_back(hi + t);
    }
    double span = hi - lo + 2.0 * sigma;
    long npan = std::clamp(static_cast<long>(std::ceil(span / step)), 2L, 4000L);
    for (long i = 0; i <= npan; ++i)
        e.push_back(lo - sigma + span * static_cast<double>(i) / static_cast<double>(npan));
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
}

// int e^{-i tau.xi} F_p mu(tau, xi) dtau * |xi|^{N/2k} over the truncated
// window; the kernel's own e^{+i tau.xi} cancels the prefactor, leaving a
// smooth integrand, so fixed panels at the Gaussian scale converge fast.
TauInt tau_integral(const Functional& mu, const PhasePolynomial& p, double c_p, double c_low,
                    const Vec& xi, int refine, double rel_tol) {
    TauInt out;
    double r = norm(xi);
    const GLRule& rule = gl_rule(16);

    auto f1 = [&](double t0, double t1_or_unused, bool two) -> Complex {
        Vec tau = two ? Vec(t0, t1_or_unused) : Vec(t0);
        FbiEval e = fbi(mu, p, c_p, tau, xi, rel_tol);
        out.evals += e.evals;
        if (!e.valid && std::abs(e.value) >= kUnderflow) out.ok = false;
        return std::exp(Complex(0.0, -dot(tau, xi))) * e.value;
    };

    Complex total(0.0);
    if (p.n == 1) {
        auto edges = tau_axis_edges(mu, p, c_low, 0, r, refine);
        for (size_t i = 0; i + 1 < edges.size(); ++i) {
            double a = edges[i], b = edges[i + 1];
            if (!(b > a)) continue;
            Complex s(0.0);
            for (int q = 0; q < 16; ++q) {
                double t = 0.5 * (a + b) + 0.5 * (b - a) * rule.x[static_cast<size_t>(q)];
                s += rule.w[static_cast<size_t>(q)] * f1(t, 0.0, false);
            }
            total += 0.5 * (b - a) * s;
        }
    } else {
        auto e0 = tau_axis_edges(mu, p, c_low, 0, r, refine);
        auto e1 = tau_axis_edges(mu, p, c_low, 1, r, refine);
        for (size_t i = 0; i + 1 < e0.size(); ++i) {
            double a0 = e0[i], b0 = e0[i + 1];
            if (!(b0 > a0)) continue;
            for (int q0 = 0; q0 < 16; ++q0) {
                double t0 = 0.5 * (a0 + b0) + 0.5 * (b0 - a0) * rule.x[static_cast<size_t>(q0)];
                double w0 = 0.5 * (b0 - a0) * rule.w[static_cast<size_t>(q0)];
                for (size_t j = 0; j + 1 < e1.size(); ++j) {
                    double a1 = e1[j], b1 = e1[j + 1];
                    if (!(b1 > a1)) continue;
                    Complex s(0.0);
                    for (int q1 = 0; q1 < 16; ++q1) {
                        double t1 =
                            0.5 * (a1 + b1) + 0.5 * (b1 - a1) * rule.x[static_cast<size_t>(q1)];
                        s += rule.w[static_cast<size_t>(q1)] * f1(t0, t1, true);
                    }
                    total += w0 * 0.5 * (b1 - a1) * s;
                }
            }
        }
    }
    out.value = std::pow(std::max(r, kUnderflow), static_cast<double>(p.n) / (2.0 * p.k)) * total;
    return out;
}

}  // namespace

InversionEngine::InversionEngine(const Functional& mu, const PhasePolynomial& p, double c_p,
                                 double eps, const Box& W, int threads)
    : mu_(&mu), p_(&p), c_p_(c_p), eps_(eps), W_(W) {
    require(eps > 0.0, "inversion needs eps > 0");
    require(W.n == mu.n && p.n == mu.n, "window, functional and phase dimensions must agree");
    for (int i = 0; i < W.n; ++i)
        require(W.lo[static_cast<size_t>(i)] < mu.carrier.lo[static_cast<size_t>(i)] &&
                    mu.carrier.hi[static_cast<size_t>(i)] < W.hi[static_cast<size_t>(i)],
                "carrier must be compactly contained in the window");
    c_low_ = phase_floor(p);
    require(c_low_ > 0.0, "phase must be positive away from the origin");

    // truncation: eps R^2 - b R >= log(1e14), b = contour growth for wedges
    double b = mu.variant == Functional::Variant::WedgeBoundary ? std::abs(mu.wedge_height) : 0.0;
    double logcap = std::log(1e14);
    R_ = (b + std::sqrt(b * b + 4.0 * eps * logcap)) / (2.0 * eps);

    // covector panels sized by the oscillation of e^{i x.xi} times the
    // carrier's own frequency content; a panel boundary sits at 0 so the
    // (removable) |xi|^{N/2k} kink never falls inside a panel
    std::array<std::vector<double>, kMaxDim> axis_nodes, axis_wts;
    const GLRule& rule = gl_rule(16);
    for (int ax = 0; ax < W.n; ++ax) {
        double sup_x = std::max(std::abs(W.lo[static_cast<size_t>(ax)]),
                                std::abs(W.hi[static_cast<size_t>(ax)]));
        double sup_w = std::max(std::abs(mu.carrier.lo[static_cast<size_t>(ax)]),
                                std::abs(mu.carrier.hi[static_cast<size_t>(ax)]));
        double freq = sup_x + sup_w + 1e-9;
        double width = std::min(4.0 * M_PI / freq, R_ / 4.0);
        long npan = static_cast<long>(std::ceil(R_ / width));
        for (int side = 0; side < 2; ++side) {
            for (long j = 0; j < npan; ++j) {
                double a = R_ * static_cast<double>(j) / static_cast<double>(npan);
                double bnd = R_ * static_cast<double>(j + 1) / static_cast<double>(npan);
                if (side == 0) {
                    double t = a;
                    a = -bnd;
                    bnd = -t;
                }
                for (int q = 0; q < 16; ++q) {
                    axis_nodes[static_cast<size_t>(ax)].push_back(
                        0.5 * (a + bnd) + 0.5 * (bnd - a) * rule.x[static_cast<size_t>(q)]);
                    axis_wts[static_cast<size_t>(ax)].push_back(
                        0.5 * (bnd - a) * rule.w[static_cast<size_t>(q)]);
                }
            }
        }
    }
    if (W.n == 1) {
        for (size_t i = 0; i < axis_nodes[0].size(); ++i) {
            nodes_.push_back(Vec(axis_nodes[0][i]));
            wts_.push_back(axis_wts[0][i]);
        }
    } else {
        for (size_t i = 0; i < axis_nodes[0].size(); ++i)
            for (size_t j = 0; j < axis_nodes[1].size(); ++j) {
                nodes_.push_back(Vec(axis_nodes[0][i], axis_nodes[1][j]));
                wts_.push_back(axis_wts[0][i] * axis_wts[1][j]);
            }
    }

    g_.assign(nodes_.size(), Complex(0.0));
    std::vector<long> cell_evals(nodes_.size(), 0);
    std::vector<char> cell_ok(nodes_.size(), 1);
    parallel_for(static_cast<long>(nodes_.size()), threads, [&](long i) {
        TauInt t = tau_integral(*mu_, *p_, c_p_, c_low_, nodes_[static_cast<size_t>(i)], 1, 1e-9);
        g_[static_cast<size_t>(i)] = t.value;
        cell_evals[static_cast<size_t>(i)] = t.evals;
        cell_ok[static_cast<size_t>(i)] = t.ok ? 1 : 0;
    });
    for (size_t i = 0; i < nodes_.size(); ++i) {
        evals_ += cell_evals[i];
        converged_ = converged_ && cell_ok[i];
    }

    // consistency probe: a few nodes re-evaluated with doubled panel density
    double gmax = 0.0;
    for (const auto& v : g_) gmax = std::max(gmax, std::abs(v));
    long nn = static_cast<long>(nodes_.size());
    for (long i : {nn / 4, nn / 2, (3 * nn) / 4}) {
        TauInt t = tau_integral(*mu_, *p_, c_p_, c_low_, nodes_[static_cast<size_t>(i)], 2, 1e-9);
        evals_ += t.evals;
        if (std::abs(t.value - g_[static_cast<size_t>(i)]) > 1e-7 * (gmax + 1e-30))
            converged_ = false;
    }
}

Complex InversionEngine::mu_eps(const Vec& x) const {
    require(x.n == W_.n, "evaluation point dimension must match the window");
    if (!W_.contains(x)) return Complex(0.0);  // the chi factor, exactly
    Complex s(0.0);
    for (size_t i = 0; i < nodes_.size(); ++i) {
        const Vec& xi = nodes_[i];
        s += wts_[i] * std::exp(Complex(-eps_ * dot(xi, xi), dot(x, xi))) * g_[i];
    }
    return std::pow(2.0 * M_PI, -W_.n) * s;
}

QuadResult InversionEngine::pair(const TestFunction& h) const {
    require(W_.n == 1, "pairing is implemented in one variable");
    double s = std::sqrt(eps_);
    std::vector<double> edges = {W_.lo[0], W_.hi[0]};
    for (double c : {mu_->carrier.lo[0], mu_->carrier.hi[0]}) {
        for (double d : {0.0, s, 2.0 * s, 4.0 * s, 8.0 * s, 16.0 * s, 32.0 * s}) {
            for (double x : {c - d, c + d})
                if (x > W_.lo[0] && x < W_.hi[0]) edges.push_back(x);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    auto f = [&](double x) { return mu_eps(Vec(x)) * h.value(CVec(Complex(x))); };
    return integrate_adaptive_edges(f, edges, 1e-12, 1e-9);
}

InversionResult invert(const Functional& mu, const PhasePolynomial& p, double c_p, double eps,
                       const std::vector<Vec>& x_points, const Box& W, int threads) {
    InversionEngine eng(mu, p, c_p, eps, W, threads);
    InversionResult res;
    res.eps = eps;
    res.W = W;
    res.points = x_points;
    res.truncation_radius = eng.truncation_radius();
    for (const auto& x : x_points) res.values.push_back(eng.mu_eps(x));
    res.converged = eng.converged();
    res.evals = eng.evals();
    return res;
}

}  // namespace fbikit
