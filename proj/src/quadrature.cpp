#include "fbikit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace fbikit {

namespace {

GLRule compute_gl(int n) {
    GLRule r;
    r.x.resize(static_cast<size_t>(n));
    r.w.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.x[static_cast<size_t>(n - 1 - i)] = x;
        r.w[static_cast<size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

std::map<int, GLRule>& rule_cache() {
    static std::map<int, GLRule> cache;
    return cache;
}
std::mutex rule_mutex;

}  // namespace

const GLRule& gl_rule(int n) {
    std::lock_guard<std::mutex> lock(rule_mutex);
    auto it = rule_cache().find(n);
    if (it == rule_cache().end()) it = rule_cache().emplace(n, compute_gl(n)).first;
    return it->second;
}

Complex gl_integrate(const std::function<Complex(double)>& f, double a, double b, int n) {
    const GLRule& r = gl_rule(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    Complex s(0.0);
    for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + half * r.x[i]);
    return half * s;
}

namespace {

struct AdaptState {
    const std::function<Complex(double)>* f;
    double abs_tol, rel_tol;
    long evals = 0;
    bool converged = true;
    double err = 0.0;
    double scale = 0.0;  // running magnitude estimate for the relative test

    Complex segment(double a, double b, Complex whole, int depth) {
        const double m = 0.5 * (a + b);
        Complex left = gl_integrate(*f, a, m, 16);
        Complex right = gl_integrate(*f, m, b, 16);
        evals += 32;
        Complex sum = left + right;
        double d = std::abs(whole - sum);
        scale = std::max(scale, std::abs(sum));
        if (d <= std::max(abs_tol, rel_tol * scale) || depth <= 0) {
            if (depth <= 0 && d > std::max(abs_tol, rel_tol * scale)) converged = false;
            err += d;
            return sum;
        }
        return segment(a, m, left, depth - 1) + segment(m, b, right, depth - 1);
    }
};

}  // namespace

QuadResult integrate_adaptive(const std::function<Complex(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_depth) {
    return integrate_adaptive_edges(f, {a, b}, abs_tol, rel_tol, max_depth);
}

QuadResult integrate_adaptive_edges(const std::function<Complex(double)>& f,
                                    const std::vector<double>& edges,
                                    double abs_tol, double rel_tol, int max_depth) {
    QuadResult out;
    if (edges.size() < 2) return out;
    AdaptState st;
    st.f = &f;
    // Per-segment budget: splitting the tolerance keeps the total within spec.
    size_t nseg = edges.size() - 1;
    st.abs_tol = abs_tol / static_cast<double>(nseg);
    st.rel_tol = rel_tol;
    Complex total(0.0);
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        double a = edges[i], b = edges[i + 1];
        if (!(b > a)) continue;
        Complex whole = gl_integrate(f, a, b, 16);
        st.evals += 16;
        total += st.segment(a, b, whole, max_depth);
    }
    out.value = total;
    out.err = st.err;
    out.converged = st.converged;
    out.evals = st.evals;
    return out;
}

QuadResult integrate_oscillatory(const std::function<Complex(double)>& f, double a, double b,
                                 double freq, double abs_tol, double rel_tol,
                                 const std::vector<double>& refine_near, double refine_scale,
                                 double wavelengths_per_panel) {
    QuadResult out;
    if (!(b > a)) return out;
    double width = b - a;
    if (freq > 0.0) width = std::min(width, wavelengths_per_panel * 2.0 * M_PI / freq);
    width = std::max(width, (b - a) * 1e-7);

    std::vector<double> edges;
    edges.push_back(a);
    for (double x = a + width; x < b - 0.5 * width; x += width) edges.push_back(x);
    edges.push_back(b);
    // Geometric refinement around near-singular points (e.g. a pole just off
    // the contour): panel boundaries at center +- scale * 2^j.
    if (refine_scale > 0.0) {
        for (double c : refine_near) {
            for (double s = refine_scale; s < (b - a); s *= 2.0) {
                for (double x : {c - s, c + s})
                    if (x > a && x < b) edges.push_back(x);
            }
            if (c > a && c < b) edges.push_back(c);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }

    auto pass = [&](int split) {
        Complex s(0.0);
        for (size_t i = 0; i + 1 < edges.size(); ++i) {
            double lo = edges[i], hi = edges[i + 1];
            double step = (hi - lo) / split;
            for (int j = 0; j < split; ++j) s += gl_integrate(f, lo + j * step, lo + (j + 1) * step, 16);
        }
        return s;
    };
    Complex coarse = pass(1);
    Complex fine = pass(2);
    out.evals = static_cast<long>((edges.size() - 1) * 48);
    out.value = fine;
    out.err = std::abs(coarse - fine);
    out.converged = out.err <= std::max(abs_tol, rel_tol * std::abs(fine));
    return out;
}

QuadResult integrate_box(const std::function<Complex(const Vec&)>& f, const Box& box,
                         double abs_tol, double rel_tol) {
    if (box.n == 1) {
        return integrate_adaptive([&](double x) { return f(Vec(x)); },
                                  box.lo[0], box.hi[0], abs_tol, rel_tol);
    }
    double height = std::max(box.hi[1] - box.lo[1], 1e-300);
    QuadResult inner_stats;
    auto outer = [&](double x) {
        QuadResult row = integrate_adaptive([&](double y) { return f(Vec(x, y)); },
                                            box.lo[1], box.hi[1],
                                            abs_tol / (4.0 * height), rel_tol * 0.25);
        if (!row.converged) inner_stats.converged = false;
        inner_stats.evals += row.evals;
        return row.value;
    };
    QuadResult out = integrate_adaptive(outer, box.lo[0], box.hi[0], abs_tol, rel_tol);
    out.evals += inner_stats.evals;
    out.converged = out.converged && inner_stats.converged;
    return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    LineFit fit;
    fit.npts = static_cast<int>(x.size());
    if (x.size() < 2 || x.size() != y.size()) return fit;
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (size_t i = 0; i < x.size(); ++i) { sx += x[i]; sy += y[i]; }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    fit.resid_rms = std::sqrt(ss_res / n);
    fit.resid_rel = ss_tot > 1e-300 ? std::sqrt(std::max(0.0, ss_res / ss_tot)) : 0.0;
    return fit;
}

}  // namespace fbikit
