#pragma once
// Quadrature toolbox: Gauss-Legendre rules (computed once at startup),
// adaptive bisection for smooth decaying integrands, and composite panel
// integration for oscillatory kernels with a half-width consistency check.

#include <functional>
#include <vector>

#include "fbikit/common.hpp"

namespace fbikit {

struct GLRule {
    std::vector<double> x;  // nodes on [-1,1]
    std::vector<double> w;
};

// Cached rule of order n (nodes via Newton iteration, ~1e-15 accurate).
const GLRule& gl_rule(int n);

Complex gl_integrate(const std::function<Complex(double)>& f, double a, double b, int n);

struct QuadResult {
    Complex value{0.0, 0.0};
    double err = 0.0;
    bool converged = true;
    long evals = 0;
};

// Adaptive bisection; per-interval error = |whole - (left + right)| under GL16.
QuadResult integrate_adaptive(const std::function<Complex(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_depth = 48);

// Same, but the initial segmentation is given (breakpoints must be increasing).
QuadResult integrate_adaptive_edges(const std::function<Complex(double)>& f,
                                    const std::vector<double>& edges,
                                    double abs_tol, double rel_tol, int max_depth = 48);

// Composite GL16 panels with width <= wavelengths_per_panel * 2pi/freq.
// The result is recomputed with half-width panels; `converged` reports the
// Richardson consistency |coarse - fine| <= max(abs_tol, rel_tol*|fine|).
QuadResult integrate_oscillatory(const std::function<Complex(double)>& f, double a, double b,
                                 double freq, double abs_tol, double rel_tol,
                                 const std::vector<double>& refine_near = {},
                                 double refine_scale = 0.0,
                                 double wavelengths_per_panel = 2.0);

// Iterated adaptive quadrature over an axis-aligned box (N = 1 or 2).
QuadResult integrate_box(const std::function<Complex(const Vec&)>& f, const Box& box,
                         double abs_tol, double rel_tol);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double resid_rms = 0.0;  // rms residual
    double resid_rel = 0.0;  // sqrt(1 - R^2)
    int npts = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fbikit
