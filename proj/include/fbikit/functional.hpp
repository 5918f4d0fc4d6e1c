#pragma once
// Concrete analytic-functional representations carried by real compacts:
// densities over a box, finite combinations of point evaluations and
// derivatives, and boundary values of functions holomorphic above a base
// interval, paired against entire test objects by quadrature or closed form.

#include <vector>

#include "fbikit/common.hpp"
#include "fbikit/quadrature.hpp"
#include "fbikit/test_function.hpp"

namespace fbikit {

struct DensityProfile {
    enum class Kind { Constant, Poly, Samples };
    Kind kind = Kind::Constant;
    Complex constant{1.0, 0.0};
    // Poly: finite sum of c x^beta over the carrier.
    std::vector<std::pair<MultiIndex, Complex>> poly;
    // Samples: values on a uniform grid over the carrier (N = 1 only),
    // interpolated with a piecewise-cubic Catmull-Rom rule.
    std::vector<Complex> samples;

    static DensityProfile constant_profile(Complex c);
    static DensityProfile poly_profile(std::vector<std::pair<MultiIndex, Complex>> monomials);
    static DensityProfile sample_profile(std::vector<Complex> values);

    Complex eval(const Vec& x, const Box& carrier) const;
    // Closed-form partial derivative exists for Constant/Poly profiles only.
    bool smooth() const { return kind != Kind::Samples; }
};

// One term c * (d^alpha h)(x) of a point combination.
struct PointAtom {
    Complex coef{1.0, 0.0};
    MultiIndex alpha;
    Vec x;
};

// One term of the wedge density g(z) = sum of coef * (z - pole)^power;
// power may be negative (then `pole` is an actual pole of g).
struct WedgeTerm {
    Complex coef{1.0, 0.0};
    Complex pole{0.0, 0.0};
    int power = -1;
};

struct Functional {
    enum class Variant { Density, PointCombo, WedgeBoundary };
    Variant variant = Variant::Density;
    int n = 1;
    Box carrier;

    DensityProfile profile;              // Density
    std::vector<PointAtom> atoms;        // PointCombo
    std::vector<WedgeTerm> wedge_terms;  // WedgeBoundary (n = 1 only)
    double wedge_height = 0.0;           // signed contour height y
    Box wedge_base;                      // V; the contour is V + iy

    static Functional density(const Box& carrier, DensityProfile f);
    static Functional point_combo(std::vector<PointAtom> atoms, int order_cap = 2);
    static Functional delta(const Vec& x);
    // margin < 0 picks max(0.05, 2|height|); carrier = base dilated by margin.
    static Functional wedge_boundary(const Box& base, double height,
                                     std::vector<WedgeTerm> terms, double margin = -1.0);

    int max_order() const;        // highest derivative order among atoms (0 otherwise)
    double mass() const;          // order-zero pairing bound (integral |f|, sum |c|, contour bound)
    Complex wedge_g(Complex z) const;

    // mu(h). Density and WedgeBoundary integrate adaptively (with refinement
    // near wedge poles); PointCombo sums derivative evaluations.
    QuadResult apply(const TestFunction& h, double abs_tol = 1e-12, double rel_tol = 1e-9) const;
};

struct WeightedFunctional {
    Complex weight{1.0, 0.0};
    Functional fun;
};

// Formal linear combination; represents differences of representatives and
// the image of a functional under a differential operator.
struct FunctionalCombo {
    std::vector<WeightedFunctional> parts;

    static FunctionalCombo single(Functional f);
    static FunctionalCombo difference(const Functional& a, const Functional& b);
    int dim() const;
    Box hull() const;
    QuadResult apply(const TestFunction& h, double abs_tol = 1e-12, double rel_tol = 1e-9) const;
};

// Entire heat regularization of h restricted to the window W:
//   H_eps(w) = (2 pi)^{-N} int int e^{-eps|xi|^2 + i(x-w) xi} 1_W(x) h(x) dxi dx.
// The inner xi integral is a Gaussian and is folded in exactly, leaving the
// x integral of h against the kernel (4 pi eps)^{-N/2} e^{-(x-w)^2/(4 eps)}.
class HeatApprox : public TestFunction {
  public:
    HeatApprox(const TestFunction* h, const Box& window, double eps);
    int dim() const override { return window_.n; }
    Complex value(const CVec& w) const override;
    Complex derivative(const MultiIndex& a, const CVec& w) const override;

  private:
    Complex kernel_integral(const MultiIndex& a, const CVec& w) const;

    const TestFunction* h_;
    Box window_;
    double eps_;
};

struct HeatErrorReport {
    double sup_err = 0.0;      // sup over the sampled grid of |h - H_eps|
    double max_outside = 0.0;  // max |H_eps| on probes far outside the window
    int grid_points = 0;
};

// Samples |h - H_eps| on a grid over K (typically the carrier dilated by
// delta) and |H_eps| on probes outside the window.
HeatErrorReport heat_error_report(const TestFunction& h, const HeatApprox& he, const Box& K,
                                  int pts_per_axis = 9);

}  // namespace fbikit
