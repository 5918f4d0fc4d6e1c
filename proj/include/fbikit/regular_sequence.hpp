#pragma once
// Weight sequences M_k for ultradifferentiable regularity scales: validation
// of the structural conditions, the associated function sup_k log(t^k / M_k),
// and a numerical quasianalyticity verdict.

#include <string>
#include <vector>

#include "fbikit/common.hpp"

namespace fbikit {

class RegularSequence {
  public:
    // entries are the raw M_k values, k = 0..k_max; stored in log space.
    static RegularSequence from_entries(const std::vector<double>& entries, std::string name = "custom");
    // M_k = (k!)^s, built by exact log-factorial accumulation.
    static RegularSequence gevrey(double s, int k_max);

    int k_max() const { return static_cast<int>(log_m_.size()) - 1; }
    double log_entry(int k) const { return log_m_[static_cast<size_t>(k)]; }
    double log_factorial(int k) const { return log_fact_[static_cast<size_t>(k)]; }
    const std::string& name() const { return name_; }

  private:
    std::vector<double> log_m_;
    std::vector<double> log_fact_;
    std::string name_;
};

struct SequenceValidation {
    bool normalized = false;        // M_0 = M_1 = 1
    bool log_convex = false;        // (M_k/k!)^2 <= (M_{k-1}/(k-1)!)(M_{k+1}/(k+1)!)
    bool growth_bounded = false;    // M_k <= A H^k M_{k-1} with fitted grid constants
    bool derivative_closed = false; // surrogate: (M_k/k!)^{1/k} increasing tail, >= threshold at k_max
    double fitted_A = 0.0;
    double fitted_H = 0.0;
    double tail_root_last = 0.0;    // (M_k/k!)^{1/k} at k = k_max
    bool tail_root_increasing = false;
    bool all_ok() const { return normalized && log_convex && growth_bounded && derivative_closed; }
};

// pre: k_max >= 4. The (A, H) fit scans H over {2^{j/8}}, smallest H whose
// required A stays under a cap, then the smallest grid A above the requirement.
SequenceValidation validate_regular(const RegularSequence& seq, double m4_threshold = 2.0,
                                    double a_cap = 256.0);

struct AssociatedValue {
    double value = 0.0;
    int argmax = 0;
    bool saturated = false;  // maximizer hit the truncation index
};

// sup over 0 <= k <= min(k_cap, k_max) of k*log(t) - log(M_k); t > 0 required.
AssociatedValue associated_value(const RegularSequence& seq, double t, int k_cap = 512);

enum class QAVerdict { quasianalytic, non_quasianalytic, inconclusive };

struct QAReport {
    QAVerdict verdict = QAVerdict::inconclusive;
    double partial_sum = 0.0;        // sum of M_k^{-1/k}, k = 1..k_max
    double tail_slope = 0.0;         // log-log slope of the terms on the tail
    double tail_min_k_times_term = 0.0;
    double tail_max_ratio = 0.0;     // max consecutive term ratio on the tail
};

// Divergence/convergence of sum M_k^{-1/k} from the stored range.
// pre: k_max >= 20.
QAReport quasianalytic_test(const RegularSequence& seq, double sum_bound = 4.0,
                            double omega_floor = 0.5, double p_slope = -1.1,
                            double geo_ratio = 0.9);

}  // namespace fbikit
