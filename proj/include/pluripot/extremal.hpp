#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pluripot/common.hpp"
#include "pluripot/region.hpp"

namespace pluripot::extremal {

enum class BasisKind {
    monomial,   // ((z - center)/scale)^p, the default
    chebyshev,  // T_p((z - center)/scale), per coordinate axis
};

/// Polynomial basis of total degree <= n in coordinates recentered at
/// `center` and divided by `scale` (raw monomials overflow once the
/// truncation radius and degree are both large).  Sample sets lying on a
/// real interval get the Chebyshev family instead: monomials restricted to
/// an interval become numerically dependent long before the degrees this
/// library targets, while Chebyshev values stay in [-1, 1] there.  In two
/// dimensions the same applies per axis: a sample confined to a real box
/// gets products T_p(w1) T_q(w2) with each axis centered and scaled on its
/// own span (scale2 is the second-axis divisor; zero means reuse scale).
struct BasisSpec {
    std::size_t n = 1;
    std::size_t m = 1;
    Pt center;
    double scale = 1.0;
    double scale2 = 0.0;  // second-axis divisor; 0 falls back to scale
    BasisKind kind = BasisKind::monomial;
    std::vector<std::pair<int, int>> exponents;  // (p, q); q == 0 when m == 1

    static BasisSpec standard(std::size_t n, std::size_t m, double scale,
                              Pt center = Pt{});
    static BasisSpec chebyshev(std::size_t n, double scale, double center);
    static BasisSpec chebyshev2(std::size_t n, double scale1, double center1,
                                double scale2, double center2);
    std::size_t count() const { return exponents.size(); }

    /// Value of each basis element at z, in exponent-list order.
    std::vector<cx> eval(const Pt& z) const;
};

/// One degree-n extremal evaluation: the polynomial certificate, its
/// normalized log-value at z0, and the phase-discretization slack that
/// bounds how far above the true degree-n value the report can sit.
struct GreenEstimate {
    Pt z0;
    std::size_t n = 1;
    double value = 0.0;     // max(raw, 0), natural-log units
    double raw = 0.0;       // (1/n) log |P(z0)| before clamping
    std::vector<cx> coeffs; // certificate coefficients in basis order
    BasisSpec basis;
    std::size_t K = 64;
    double slack = 0.0;     // log(1/cos(pi/K)) / n
    long lp_iterations = 0;
    bool converged = true;  // false when an iteration budget was exhausted
};

/// Phase-polytope overestimate bound for a K-phase discretization at
/// degree n.
double phase_slack(std::size_t K, std::size_t n);

/// Certificate value at z (plain polynomial evaluation).
cx eval_certificate(const GreenEstimate& e, const Pt& z);

/// Largest (1/n) log |P(z0)| over polynomials of degree <= n with
/// |P| <= 1 on the sampled region, computed as a cutting-plane LP over
/// the K-phase linearization max_k Re(e^{2 pi i k/K} P(p)) <= 1.
///
/// Preconditions: sample count >= 2 x monomial count, K >= 4 divisible
/// by 4, n >= 1.  A z0 that coincides with a sample point short-circuits
/// to the constant certificate (value 0).
GreenEstimate extremal_value(const region::SampledRegion& reg, const Pt& z0,
                             std::size_t n, std::size_t K = 64);

struct GridPointResult {
    GreenEstimate estimate;
    bool ok = false;
    std::string error;  // set when ok == false
};

/// Element-wise extremal_value over a grid; points run in parallel but the
/// result order matches the input order and every entry is deterministic.
std::vector<GridPointResult> green_grid(const region::SampledRegion& reg,
                                        const std::vector<Pt>& grid, std::size_t n,
                                        std::size_t K = 64, std::size_t threads = 0);

/// Double K until the recorded slack drops to target_slack, re-solving
/// with only violated tangents added each time.  Already-tight estimates
/// come back unchanged.
GreenEstimate refine_phases(const GreenEstimate& e, const region::SampledRegion& reg,
                            double target_slack);

/// Degree trend 2 v(n) - v(n/2): cancels the O(1/n) bias of raising a
/// degree-n certificate to the limit.
inline double richardson_trend(double v_half, double v_full) {
    return 2.0 * v_full - v_half;
}

}  // namespace pluripot::extremal
