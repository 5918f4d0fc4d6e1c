#include "fbikit/regular_sequence.hpp"

#include <algorithm>
#include <cmath>

#include "fbikit/quadrature.hpp"

namespace fbikit {

namespace {
std::vector<double> log_factorials(int k_max) {
    std::vector<double> lf(static_cast<size_t>(k_max) + 1, 0.0);
    double acc = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        acc += std::log(static_cast<double>(k));
        lf[static_cast<size_t>(k)] = acc;
    }
    return lf;
}
}  // namespace

RegularSequence RegularSequence::from_entries(const std::vector<double>& entries, std::string name) {
    require(entries.size() >= 2, "sequence needs at least M_0, M_1");
    RegularSequence s;
    s.log_m_.reserve(entries.size());
    for (double m : entries) {
        require(m > 0.0 && std::isfinite(m), "sequence entries must be positive finite");
        s.log_m_.push_back(std::log(m));
    }
    s.log_fact_ = log_factorials(static_cast<int>(entries.size()) - 1);
    s.name_ = std::move(name);
    return s;
}

RegularSequence RegularSequence::gevrey(double s, int k_max) {
    require(s >= 1.0, "gevrey exponent must be >= 1");
    require(k_max >= 1, "gevrey sequence needs k_max >= 1");
    RegularSequence q;
    q.log_fact_ = log_factorials(k_max);
    q.log_m_.resize(static_cast<size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) q.log_m_[static_cast<size_t>(k)] = s * q.log_fact_[static_cast<size_t>(k)];
    q.name_ = "gevrey_" + std::to_string(s);
    return q;
}

SequenceValidation validate_regular(const RegularSequence& seq, double m4_threshold, double a_cap) {
    require(seq.k_max() >= 4, "validation needs k_max >= 4");
    SequenceValidation rep;
    const int km = seq.k_max();

    rep.normalized = std::abs(seq.log_entry(0)) < 1e-12 && std::abs(seq.log_entry(1)) < 1e-12;

    // log-convexity of m_k = M_k/k!: 2*log m_k <= log m_{k-1} + log m_{k+1}.
    rep.log_convex = true;
    auto log_m = [&](int k) { return seq.log_entry(k) - seq.log_factorial(k); };
    for (int k = 1; k < km; ++k) {
        if (2.0 * log_m(k) > log_m(k - 1) + log_m(k + 1) + 1e-10) {
            rep.log_convex = false;
            break;
        }
    }

    // Ratio-growth constants: need log M_k - log M_{k-1} <= log A + k log H.
    rep.growth_bounded = false;
    const double log2_8 = std::log(2.0) / 8.0;
    for (int j = 0; j <= 64 && !rep.growth_bounded; ++j) {
        double log_h = j * log2_8;
        double log_a_req = -1e300;
        for (int k = 1; k <= km; ++k)
            log_a_req = std::max(log_a_req, seq.log_entry(k) - seq.log_entry(k - 1) - k * log_h);
        if (log_a_req <= std::log(a_cap) + 1e-12) {
            for (int i = 0; i <= 64; ++i) {
                double log_a = i * log2_8;
                if (log_a >= log_a_req - 1e-12) {
                    rep.growth_bounded = true;
                    rep.fitted_A = std::exp(log_a);
                    rep.fitted_H = std::exp(log_h);
                    break;
                }
            }
        }
    }

    // Super-factorial tail surrogate: q_k = (M_k/k!)^{1/k} strictly increasing
    // on the last quarter of the range and above the threshold at k_max.
    auto q = [&](int k) { return (seq.log_entry(k) - seq.log_factorial(k)) / k; };
    rep.tail_root_last = std::exp(q(km));
    int tail_start = std::max(1, km - std::max(1, km / 4));
    rep.tail_root_increasing = true;
    for (int k = tail_start; k < km; ++k) {
        if (q(k + 1) <= q(k) + 1e-14) {
            rep.tail_root_increasing = false;
            break;
        }
    }
    rep.derivative_closed = rep.tail_root_increasing && rep.tail_root_last >= m4_threshold;
    return rep;
}

AssociatedValue associated_value(const RegularSequence& seq, double t, int k_cap) {
    require(t > 0.0 && std::isfinite(t), "associated function needs t > 0");
    require(k_cap >= 0, "k_cap must be nonnegative");
    const int top = std::min(k_cap, seq.k_max());
    const double log_t = std::log(t);
    AssociatedValue best;
    best.value = -seq.log_entry(0);  // k = 0 term
    best.argmax = 0;
    for (int k = 1; k <= top; ++k) {
        double v = k * log_t - seq.log_entry(k);
        if (v > best.value) {
            best.value = v;
            best.argmax = k;
        }
    }
    best.saturated = best.argmax == top && top > 0;
    return best;
}

QAReport quasianalytic_test(const RegularSequence& seq, double sum_bound, double omega_floor,
                            double p_slope, double geo_ratio) {
    require(seq.k_max() >= 20, "quasianalyticity test needs k_max >= 20");
    QAReport rep;
    const int km = seq.k_max();
    std::vector<double> log_term(static_cast<size_t>(km) + 1, 0.0);
    for (int k = 1; k <= km; ++k) {
        log_term[static_cast<size_t>(k)] = -seq.log_entry(k) / k;
        rep.partial_sum += std::exp(log_term[static_cast<size_t>(k)]);
    }

    const int tail_start = km / 2;
    std::vector<double> lx, ly;
    rep.tail_min_k_times_term = 1e300;
    rep.tail_max_ratio = 0.0;
    for (int k = tail_start; k <= km; ++k) {
        lx.push_back(std::log(static_cast<double>(k)));
        ly.push_back(log_term[static_cast<size_t>(k)]);
        rep.tail_min_k_times_term =
            std::min(rep.tail_min_k_times_term, k * std::exp(log_term[static_cast<size_t>(k)]));
        if (k > tail_start)
            rep.tail_max_ratio = std::max(
                rep.tail_max_ratio,
                std::exp(log_term[static_cast<size_t>(k)] - log_term[static_cast<size_t>(k - 1)]));
    }
    rep.tail_slope = fit_line(lx, ly).slope;

    if (rep.tail_slope <= p_slope || rep.tail_max_ratio <= geo_ratio) {
        rep.verdict = QAVerdict::non_quasianalytic;  // p-series or geometric majorant
    } else if (rep.partial_sum >= sum_bound && rep.tail_min_k_times_term >= omega_floor) {
        rep.verdict = QAVerdict::quasianalytic;  // terms Omega(1/k), sums past the bound
    } else {
        rep.verdict = QAVerdict::inconclusive;
    }
    return rep;
}

}  // namespace fbikit
