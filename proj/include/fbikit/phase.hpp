#pragma once
// Homogeneous phase polynomials p of degree 2k with positive real trace,
// their positivity/complex-cone certificates, the normalization constant
// c_p = 1 / integral of e^{-p}, and the averaged-kernel identity check that
// qualifies a scaling exponent lambda for the transform.

#include <string>
#include <vector>

#include "fbikit/common.hpp"

namespace fbikit {

struct PhaseTerm {
    MultiIndex alpha;  // |alpha| must equal 2k
    double coef = 0.0;
};

struct PhasePolynomial {
    int n = 1;
    int k = 1;  // half-degree
    std::vector<PhaseTerm> terms;

    Complex eval(const CVec& z) const;
    double eval_real(const Vec& x) const;
    Complex grad(int j, const CVec& z) const;
    Complex hess(int i, int j, const CVec& z) const;
    double coef_norm() const;  // sum of |coefficients|
};

// pre: all terms homogeneous of degree 2k (throws otherwise).
void check_homogeneous(const PhasePolynomial& p);

struct PositivityCertificate {
    bool admissible = false;
    double c_lower = 0.0;  // min of p on the unit sphere
    double c_upper = 0.0;  // max of p on the unit sphere
    int samples = 0;
    double refine_change = 0.0;  // relative change in the last grid refinement
};

// Samples the unit sphere (endpoints for N=1, golden-angle grid refined until
// the extrema move < 1% for N=2). Rejects when the minimum is <= c_floor.
PositivityCertificate validate_positivity(const PhasePolynomial& p, double c_floor = 1e-9);

struct ConeFit {
    double rho = 0.0;
    bool admissible = false;
    double c_prime = 0.0;  // min of Re p on the complex cone slice
    double c_upper = 0.0;  // max of Re p there
};

// Sampled bounds for Re p on {x + iy : |y| <= rho |x|} restricted to |z| = 1.
ConeFit fit_complex_cone(const PhasePolynomial& p, double rho, double c_floor = 1e-9);

struct ConeScan {
    double rho_max = 0.0;  // largest admissible grid rho (0 if none)
    std::vector<ConeFit> fits;
};

ConeScan scan_complex_cone(const PhasePolynomial& p, const std::vector<double>& rho_grid,
                           double c_floor = 1e-9);

struct Normalization {
    double integral = 0.0;  // integral of e^{-p}
    double c_p = 0.0;
    double est_err = 0.0;
    bool converged = false;
};

Normalization normalization_constant(const PhasePolynomial& p, const PositivityCertificate& cert);

struct GoodPhaseCheck {
    bool good = false;
    double lambda = 0.0;
    double max_h_dev = 0.0;  // max |H(w,t) - 1| over the (w, t) grid
    double integrability_proxy = 0.0;
    bool integrability_converged = false;
    std::vector<double> h_values;  // |H - 1| per grid point, row-major (w grid x t grid)
};

// Checks H(w,t) = c_p * t^{lambda N} * integral e^{-p(t^lambda (tau - w))} dtau = 1
// on a grid of complex w with |Im w| < im_range and t in t_grid, plus a finite
// truncated version of the kernel-integrability condition.
// pre: 0 < lambda < 1/k strictly (throws at or beyond the endpoints).
GoodPhaseCheck check_good_phase(const PhasePolynomial& p, double lambda,
                                const PositivityCertificate& cert, double c_p,
                                double im_range = 0.5, int w_grid = 5,
                                const std::vector<double>& t_grid = {0.5, 1.0, 2.0, 8.0},
                                double tol = 1e-6);

// Convenience: the scaling exponent the transform pipeline uses.
inline double pipeline_lambda(const PhasePolynomial& p) { return 1.0 / (2.0 * p.k); }

}  // namespace fbikit
