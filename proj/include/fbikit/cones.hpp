#pragma once
// Cone geometry for the directional decomposition: half-lines (one variable)
// and angular sectors (two variables), covers tiling covector space with
// dual cones and a certified duality constant, plus sampled validation.

#include <vector>

#include "fbikit/common.hpp"

namespace fbikit {

struct Cone {
    int n = 1;
    double sign = 1.0;      // one variable: the half line sign * xi > 0
    double theta_lo = 0.0;  // two variables: the sector [theta_lo, theta_hi)
    double theta_hi = 0.0;

    static Cone half_line(double s);
    static Cone sector(double lo, double hi);  // lo normalized into [0, 2pi)

    double opening() const;              // 0 for a half line
    bool acute() const;                  // opening < pi
    bool contains(const Vec& xi) const;  // half-open in angle; false at xi = 0
    Vec bisector() const;
};

struct CoverSpec {
    int n = 1;
    int L = 2;
    Vec xi0;
    double beta = 0.1;  // dual half-angle (two variables)
    double a = 0.25;    // base-point ball radius used by the decomposition
    double c = 1.0;     // duality constant: v.xi >= c|v||xi| on Gamma_j x C_j
    std::vector<Cone> cones;  // C_1..C_L, xi0 bisects C_1
    std::vector<Cone> duals;  // Gamma_1..Gamma_L, centered on the bisectors
    // true when every y in the dual satisfies xi0.y < 0; duals of sectors
    // close to C_1 cannot oppose xi0, so the flag is part of the data
    std::vector<char> opposes_xi0;
};

// Equal sectors rotated so xi0 bisects C_1; one variable forces L = 2 and
// c = 1, two variables need L >= 3 and pi/L + beta < pi/2, c = cos(pi/L+beta).
CoverSpec build_cover(int n, int L, const Vec& xi0, double beta = 0.1);

struct CoverValidation {
    bool acute_ok = false;
    bool tiling_ok = false;       // angular sum 2pi and each direction in one cone
    bool duality_ok = false;      // sampled v.xi >= c|v||xi| on every pair cone
    bool opposition_ok = false;   // flags match the angle arithmetic; flagged duals sampled
    double worst_duality_slack = 0.0;  // min over samples of cos(angle) - c
    long samples_per_cone = 0;
    bool pass = false;
};

CoverValidation validate_cover(const CoverSpec& cover, long samples_per_cone = 1000,
                               std::uint64_t seed = 1);

}  // namespace fbikit
