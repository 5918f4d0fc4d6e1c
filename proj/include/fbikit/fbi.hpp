#pragma once
// Transform of an analytic functional against the kernel
// e^{i(tau-w).xi - |xi| p(tau-w)}, its continuation to complex covectors,
// (tau, direction, radius) sample grids, an a priori modulus audit, and the
// Gaussian-damped inversion engine.

#include <string>
#include <vector>

#include "fbikit/common.hpp"
#include "fbikit/functional.hpp"
#include "fbikit/phase.hpp"
#include "fbikit/quadrature.hpp"

namespace fbikit {

struct FbiEval {
    Complex value{0.0, 0.0};
    double err = 0.0;
    long evals = 0;
    // false when quadrature failed, the bracket branch is invalid, or the
    // modulus underflowed (log-rate fits must skip the cell).
    bool valid = true;
};

// c_p * mu_w(e^{i(tau-w).xi - |xi| p(tau-w)}). Point combinations use the
// closed-form kernel derivatives; densities use oscillation-aware panels
// localized where the real exponent exceeds -37; boundary-value functionals
// integrate along a per-direction contour height chosen inside the pole-free
// strip (Cauchy deformation, same functional value, far better conditioning).
FbiEval fbi(const Functional& mu, const PhasePolynomial& p, double c_p, const Vec& tau,
            const Vec& xi, double rel_tol = 1e-9);

// Continuation to complex covectors zeta with |Im zeta| < |Re zeta| (the
// bracket branch condition; invalid outside). Boundary-value functionals keep
// the fixed contour here.
FbiEval fbi_complex(const Functional& mu, const PhasePolynomial& p, double c_p, const Vec& tau,
                    const CVec& zeta, double rel_tol = 1e-9);

struct GridSpec {
    std::vector<Vec> base_points;
    std::vector<Vec> directions;  // unit covectors
    std::vector<double> radii;    // strictly increasing, successive ratio >= 1.1
};

// r0 * factor^j for j = 0..count-1.
std::vector<double> make_radii(double r0, double factor, int count);

// Default directions ({+1,-1} or 16 points on the circle) and radii
// (2^{j/2}, j = 0..24 for one variable, half that range for two).
GridSpec default_grid(int n, std::vector<Vec> base_points);

struct SampleGrid {
    GridSpec spec;
    std::string phase_id;
    std::vector<Complex> values;  // indexed (i_tau * n_theta + i_theta) * n_r + i_r
    std::vector<double> errs;
    std::vector<char> valid;

    long n_tau() const { return static_cast<long>(spec.base_points.size()); }
    long n_theta() const { return static_cast<long>(spec.directions.size()); }
    long n_r() const { return static_cast<long>(spec.radii.size()); }
    long cells() const { return n_tau() * n_theta() * n_r(); }
    long index(long i_tau, long i_theta, long i_r) const {
        return (i_tau * n_theta() + i_theta) * n_r() + i_r;
    }
    // One ray: the (r, value, valid) samples at fixed base point and direction.
    void ray(long i_tau, long i_theta, std::vector<double>* r, std::vector<Complex>* v,
             std::vector<char>* ok) const;
};

SampleGrid fbi_grid(const Functional& mu, const PhasePolynomial& p, double c_p,
                    const GridSpec& spec, int threads = 1, double rel_tol = 1e-9);

struct AprioriReport {
    double max_rate = 0.0;      // max over valid cells of log|value| / r
    double rate_bound = 0.0;    // admissible bound for this functional shape
    double max_modulus = 0.0;
    double modulus_bound = 0.0;  // c_p * mass when the order-zero bound applies, else 0
    long valid_cells = 0;
    long total_cells = 0;
    bool pass = false;
};

// Real carriers keep the kernel exponent's real part nonpositive, so moduli
// stay bounded by c_p * mass (order-zero functionals); derivative atoms add a
// polynomial factor and boundary values at height y can grow like e^{|y| r}.
// The audit checks the matching log-rate bound over all valid cells.
AprioriReport apriori_bound_audit(const SampleGrid& grid, const Functional& mu,
                                  const PhasePolynomial& p, double c_p, double tol = 0.05);

struct InversionResult {
    double eps = 0.0;
    Box W;
    std::vector<Vec> points;
    std::vector<Complex> values;  // 0 exactly outside W
    double truncation_radius = 0.0;
    bool converged = true;
    long evals = 0;
};

// Evaluates mu_eps(x) = chi_W(x) (2pi)^{-N} int e^{i x.xi - eps|xi|^2} G(xi) dxi
// where G(xi) = |xi|^{N/2k} int e^{-i tau.xi} F_p mu(tau, xi) dtau. The tau
// integral is cached per covector node (the kernel's tau oscillation cancels
// against e^{-i tau.xi}, leaving a smooth integrand), so evaluation points and
// pairings share one transform sweep.
class InversionEngine {
  public:
    InversionEngine(const Functional& mu, const PhasePolynomial& p, double c_p, double eps,
                    const Box& W, int threads = 1);

    Complex mu_eps(const Vec& x) const;
    // integral over W of mu_eps(x) h(x) dx (one variable only).
    QuadResult pair(const TestFunction& h) const;
    double truncation_radius() const { return R_; }
    bool converged() const { return converged_; }
    long evals() const { return evals_; }

  private:
    const Functional* mu_;
    const PhasePolynomial* p_;
    double c_p_ = 0.0;
    double eps_ = 0.0;
    Box W_;
    double R_ = 0.0;
    double c_low_ = 0.0;  // positivity floor of the phase on the sphere
    std::vector<Vec> nodes_;
    std::vector<double> wts_;
    std::vector<Complex> g_;
    bool converged_ = true;
    long evals_ = 0;
};

InversionResult invert(const Functional& mu, const PhasePolynomial& p, double c_p, double eps,
                       const std::vector<Vec>& x_points, const Box& W, int threads = 1);

}  // namespace fbikit
