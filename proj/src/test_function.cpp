#include "fbikit/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace fbikit {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void for_each_leq(const MultiIndex& beta, const std::function<void(const MultiIndex&)>& fn) {
    MultiIndex g;
    g.n = beta.n;
    if (beta.n == 1) {
        for (int a = 0; a <= beta[0]; ++a) {
            g[0] = a;
            fn(g);
        }
        return;
    }
    for (int a = 0; a <= beta[0]; ++a) {
        for (int b = 0; b <= beta[1]; ++b) {
            g[0] = a;
            g[1] = b;
            fn(g);
        }
    }
}

PolyTest::PolyTest(int n, std::vector<std::pair<MultiIndex, Complex>> monomials)
    : n_(n), mono_(std::move(monomials)) {}

PolyTest PolyTest::constant(int n, Complex c) {
    MultiIndex zero;
    zero.n = n;
    return PolyTest(n, {{zero, c}});
}

Complex PolyTest::value(const CVec& w) const {
    Complex s(0.0);
    for (const auto& [b, c] : mono_) {
        Complex m = c;
        for (int i = 0; i < n_; ++i)
            for (int q = 0; q < b[i]; ++q) m *= w[i];
        s += m;
    }
    return s;
}

Complex PolyTest::derivative(const MultiIndex& a, const CVec& w) const {
    Complex s(0.0);
    for (const auto& [b, c] : mono_) {
        Complex m = c;
        bool dead = false;
        for (int i = 0; i < n_; ++i) {
            if (b[i] < a[i]) {
                dead = true;
                break;
            }
            for (int q = 0; q < a[i]; ++q) m *= static_cast<double>(b[i] - q);
            for (int q = 0; q < b[i] - a[i]; ++q) m *= w[i];
        }
        if (!dead) s += m;
    }
    return s;
}

Complex ExpTest::value(const CVec& w) const { return c_ * std::exp(cdot(a_, w)); }

Complex ExpTest::derivative(const MultiIndex& a, const CVec& w) const {
    Complex m = value(w);
    for (int i = 0; i < a_.n; ++i)
        for (int q = 0; q < a[i]; ++q) m *= a_[i];
    return m;
}

Complex covector_bracket(const CVec& zeta, bool* branch_ok) {
    Complex s(0.0);
    for (int i = 0; i < zeta.n; ++i) s += zeta[i] * zeta[i];
    Complex b = std::sqrt(s);
    if (branch_ok) {
        double re = norm(zeta.real()), im = norm(zeta.imag());
        *branch_ok = im < re;
    }
    return b;
}

FbiKernelTest::FbiKernelTest(const PhasePolynomial* phase, Vec tau, CVec zeta)
    : phase_(phase), tau_(tau), zeta_(zeta) {
    bracket_ = covector_bracket(zeta_, &branch_ok_);
}

Complex FbiKernelTest::exponent(const CVec& w) const {
    CVec d = CVec::from_real(tau_) - w;
    return Complex(0.0, 1.0) * cdot(d, zeta_) - bracket_ * phase_->eval(d);
}

Complex FbiKernelTest::value(const CVec& w) const { return std::exp(exponent(w)); }

namespace {

// Symbolic expansion of d^a e^g = e^g * B_a, with B_a a constant-coefficient
// polynomial in the derivatives of g. A term is a multiset of derivative
// multi-indices with a scalar weight; differentiation applies the product
// rule and appends a fresh first-order factor.
struct BellTerm {
    std::vector<MultiIndex> factors;  // kept sorted for merging
    double coef = 1.0;
};

bool mi_less(const MultiIndex& a, const MultiIndex& b) {
    if (a[0] != b[0]) return a[0] < b[0];
    return a.n > 1 && a[1] < b[1];
}

std::vector<BellTerm> raise_axis(const std::vector<BellTerm>& terms, int axis, int n) {
    std::vector<BellTerm> out;
    MultiIndex e;
    e.n = n;
    e[axis] = 1;
    for (const auto& t : terms) {
        // product-rule hits on each existing factor
        for (size_t i = 0; i < t.factors.size(); ++i) {
            BellTerm u = t;
            u.factors[i][axis] += 1;
            std::sort(u.factors.begin(), u.factors.end(), mi_less);
            out.push_back(std::move(u));
        }
        // the chain-rule factor g_axis
        BellTerm u = t;
        u.factors.push_back(e);
        std::sort(u.factors.begin(), u.factors.end(), mi_less);
        out.push_back(std::move(u));
    }
    // merge identical factor multisets
    std::vector<BellTerm> merged;
    for (auto& t : out) {
        bool hit = false;
        for (auto& m : merged) {
            if (m.factors.size() == t.factors.size() &&
                std::equal(m.factors.begin(), m.factors.end(), t.factors.begin(),
                           [](const MultiIndex& a, const MultiIndex& b) { return a == b; })) {
                m.coef += t.coef;
                hit = true;
                break;
            }
        }
        if (!hit) merged.push_back(std::move(t));
    }
    return merged;
}

std::vector<BellTerm> bell_terms(const MultiIndex& a) {
    std::vector<BellTerm> terms;
    terms.push_back(BellTerm{});  // B_0 = 1
    for (int axis = 0; axis < a.n; ++axis)
        for (int q = 0; q < a[axis]; ++q) terms = raise_axis(terms, axis, a.n);
    return terms;
}

}  // namespace

Complex FbiKernelTest::derivative(const MultiIndex& a, const CVec& w) const {
    if (a.order() == 0) return value(w);
    require(a.order() <= 6, "kernel derivatives supported up to order 6");
    CVec d = CVec::from_real(tau_) - w;
    // derivatives of the exponent in w:
    //   order 1: -i zeta_j + <zeta> (d_j p)(tau - w)
    //   order r >= 2: -(-1)^r <zeta> (d^beta p)(tau - w)
    auto g_deriv = [&](const MultiIndex& b) -> Complex {
        int r = b.order();
        if (r == 1) {
            int j = b[0] == 1 ? 0 : 1;
            return Complex(0.0, -1.0) * zeta_[j] + bracket_ * phase_->grad(j, d);
        }
        // d_w^b [p(tau - w)] = (-1)^{|b|} (d^b p)(tau - w); the kernel carries -<zeta> p.
        // Evaluate d^b p by repeated closed-form differentiation of the monomials.
        std::vector<std::pair<double, MultiIndex>> monos;
        for (const auto& t : phase_->terms) monos.push_back({t.coef, t.alpha});
        for (int axis = 0; axis < b.n; ++axis) {
            for (int q = 0; q < b[axis]; ++q) {
                std::vector<std::pair<double, MultiIndex>> next;
                for (auto& [c, al] : monos) {
                    if (al[axis] == 0) continue;
                    MultiIndex a2 = al;
                    a2[axis] -= 1;
                    next.push_back({c * al[axis], a2});
                }
                monos = std::move(next);
            }
        }
        Complex v(0.0);
        for (auto& [c, al] : monos) {
            Complex m(c);
            for (int i = 0; i < phase_->n; ++i)
                for (int q = 0; q < al[i]; ++q) m *= d[i];
            v += m;
        }
        double sign = (r % 2 == 0) ? 1.0 : -1.0;
        return -bracket_ * sign * v;
    };

    Complex sum(0.0);
    for (const auto& t : bell_terms(a)) {
        Complex m(t.coef);
        for (const auto& f : t.factors) m *= g_deriv(f);
        sum += m;
    }
    return sum * value(w);
}

}  // namespace fbikit
