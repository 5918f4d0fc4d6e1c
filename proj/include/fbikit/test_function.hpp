#pragma once
// Entire test objects that functionals can be paired against: polynomials,
// exponentials, and the transform kernel itself (with a possibly complex
// covector). All expose derivatives up to a requested order.

#include <functional>
#include <memory>
#include <vector>

#include "fbikit/common.hpp"
#include "fbikit/phase.hpp"

namespace fbikit {

struct TestFunction {
    virtual ~TestFunction() = default;
    virtual int dim() const = 0;
    virtual Complex value(const CVec& w) const = 0;
    virtual Complex derivative(const MultiIndex& a, const CVec& w) const = 0;
};

// Finite sum of monomials c * w^beta.
class PolyTest : public TestFunction {
  public:
    PolyTest(int n, std::vector<std::pair<MultiIndex, Complex>> monomials);
    static PolyTest constant(int n, Complex c);
    int dim() const override { return n_; }
    Complex value(const CVec& w) const override;
    Complex derivative(const MultiIndex& a, const CVec& w) const override;

  private:
    int n_;
    std::vector<std::pair<MultiIndex, Complex>> mono_;
};

// c * exp(a . w)
class ExpTest : public TestFunction {
  public:
    ExpTest(CVec a, Complex c = Complex(1.0)) : a_(a), c_(c) {}
    int dim() const override { return a_.n; }
    Complex value(const CVec& w) const override;
    Complex derivative(const MultiIndex& a, const CVec& w) const override;

  private:
    CVec a_;
    Complex c_;
};

// Principal square root of sum zeta_i^2; the analytic stand-in for |xi| off
// the real axis. valid (and used) only while |Im| < |Re| componentwise-sum.
Complex covector_bracket(const CVec& zeta, bool* branch_ok = nullptr);

// exp(i (tau - w).zeta - <zeta> p(tau - w)); derivatives of any order up to 6
// are produced from the closed-form derivatives of the exponent.
class FbiKernelTest : public TestFunction {
  public:
    FbiKernelTest(const PhasePolynomial* phase, Vec tau, CVec zeta);
    int dim() const override { return phase_->n; }
    Complex value(const CVec& w) const override;
    Complex derivative(const MultiIndex& a, const CVec& w) const override;
    bool branch_ok() const { return branch_ok_; }
    Complex bracket() const { return bracket_; }

  private:
    Complex exponent(const CVec& w) const;
    const PhasePolynomial* phase_;
    Vec tau_;
    CVec zeta_;
    Complex bracket_;
    bool branch_ok_ = true;
};

// Multi-index utilities shared by the derivative expansions.
double binomial(int n, int k);
void for_each_leq(const MultiIndex& beta, const std::function<void(const MultiIndex&)>& fn);

}  // namespace fbikit
