#include "pluripot/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <utility>

#include "pluripot/common.hpp"

namespace pluripot::lp {

namespace {

// Direction entries below this magnitude count as "strong": only their
// presence justifies declaring a direction unbounded.  With near-parallel
// constraint rows (e.g. opposite half-planes of the same hyperplane) a
// computed direction carries noise around 1e-12..1e-10, so anything close
// to that level is treated as zero.
constexpr double kMinPivot = 1e-8;

// Entries below this are outright noise: they neither block the ratio test
// nor qualify as pivots.
constexpr double kWeakPivot = 1e-11;

// Ratio-test floor relative to the largest entry of the direction.  Entries
// below it are treated as zero: genuine small entries sit well above
// eps * (basis condition number), and pivoting on anything smaller replaces
// a usable basis column with round-off.
constexpr double kRelPivot = 1e-7;

// Relative per-slot infeasibility allowance of the ratio test.  A basic
// value may sit this far below zero relative to its own mixing scale (the
// componentwise bound sum_j |binv[k][j]| * rhs[j], which is what round-off
// in computing that slot is actually proportional to).  The allowance is an
// absolute floor per slot, not a per-pivot increment, so it does not
// accumulate.  Small violations here cost at most the same relative amount
// of reported objective value and buy well-conditioned pivot choices on
// heavily degenerate programs.
constexpr double kInfeasBudget = 1e-6;

// The allowance expands to twice the worst violation currently present,
// measured relative to each slot's own allowance (ill-conditioned
// refactorizations overshoot the nominal budget), which keeps every
// ratio-test cap strictly positive so a vertex can always move.  It never
// expands past this multiple of the base allowance, and the recovery gate
// in xb_feasible sits above the ceiling.
constexpr double kBudgetCeil = 100.0;

// Relative size of the anti-degeneracy shift applied to the standard-form
// right-hand side (see Simplex::set_perturbation).  Large enough to separate
// ratio-test ties from round-off noise by several orders of magnitude.
constexpr double kPerturb = 1e-7;

// Basis dimension up to which the inverse is rebuilt from scratch after
// every pivot.  Exact per-pivot refactorization keeps reduced costs and
// ratio tests trustworthy on heavily degenerate programs at O(d^3) a pivot,
// which is cheap at these sizes; larger programs fall back to eta updates
// with frequent refactorization.
constexpr std::size_t kExactDim = 128;

// The solver operates on the standard form attached to
//     max c.x   s.t.  A x <= b,  x free:
// namely   min b.u   s.t.  A^T u = c,  u >= 0.
// Constraint rows of A are the columns here, so appending a row appends a
// column and an optimal basis stays feasible — which is exactly the
// warm-start needed by cutting-plane refinement.  The basis inverse is a
// dense dim x dim matrix.  The entering column is the lowest-index one with
// reduced cost < -kPivotTol (Bland); the leaving row comes from a two-pass
// ratio test that prefers large pivot elements within a kHarrisSlack
// feasibility allowance, with a perturbed right-hand side breaking the tie
// degeneracy that would otherwise allow cycling.  At optimality the simplex
// multipliers, unflipped, are the primal solution.
struct Simplex {
    const LinearProgram& lp;
    std::size_t d;               // standard-form row count == lp.dim
    std::vector<double> sgn;     // row flips making the rhs nonnegative
    std::vector<double> rhs;     // |objective| after flipping, perturbed
    std::vector<double> maxobj;  // objective in maximize sense

    std::vector<long> basis;   // per slot: >= 0 constraint-row index, < 0 auxiliary ~i
    std::vector<double> binv;  // row-major dim x dim basis inverse
    std::vector<double> xb;    // current basic values
    std::vector<double> allow;  // per-slot infeasibility allowance
    double cost_scale = 0.0;    // largest |bound|: the scale of reduced costs
    long iters = 0;
    long iter_limit;
    bool phase_one_mode = false;
    // Set when an improving column had to be skipped as numerically
    // unusable: a positive phase-1 optimum is then a numerical failure, not
    // proof of infeasibility.
    bool degraded = false;

    Simplex(const LinearProgram& p, long limit) : lp(p), d(p.dim), iter_limit(limit) {
        maxobj = lp.objective;
        if (!lp.maximize)
            for (auto& v : maxobj) v = -v;
        sgn.assign(d, 1.0);
        rhs.assign(d, 0.0);
        for (double b : lp.bounds) cost_scale = std::max(cost_scale, std::fabs(b));
        set_perturbation(0);
    }

    // Deterministic perturbation of the standard-form rhs.  The raw rhs
    // routinely carries exact zeros and repeats, which make ratio tests tie
    // at zero and let round-off pick the pivots.  Shifting each entry by a
    // distinct pseudo-random amount removes the ties.  The returned point
    // stays feasible for the true constraints (reduced costs do not involve
    // the rhs), and its value is evaluated against the unperturbed
    // objective, so the perturbation only costs ~kPerturb relative accuracy
    // in the reported optimum.  Each restart attempt uses a different seed,
    // so a failed pivot path is not replayed verbatim.
    void set_perturbation(int seed) {
        for (std::size_t i = 0; i < d; ++i) {
            sgn[i] = maxobj[i] < 0.0 ? -1.0 : 1.0;
            rhs[i] = std::fabs(maxobj[i]);
            rhs[i] += kPerturb * (1.0 + rhs[i]) *
                      mix(i + static_cast<std::size_t>(seed) * 0x100000001b3ull);
        }
    }

    // Componentwise allowance: slot k of xb = binv . rhs carries round-off
    // proportional to sum_j |binv[k][j]| * rhs[j], so each slot gets a floor
    // keyed to its own mixing scale.  A single global number would either
    // drown the small slots or strangle the large ones once the rhs spans
    // many orders of magnitude, which it does whenever a high-degree basis
    // is evaluated away from its interval.
    void update_allowances() {
        allow.assign(d, 0.0);
        for (std::size_t k = 0; k < d; ++k) {
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) s += std::fabs(binv[k * d + j]) * rhs[j];
            allow[k] = kInfeasBudget * (1.0 + s);
        }
    }

    // Deterministic hash of the index into [0.5, 1.5).
    static double mix(std::size_t i) {
        std::uint64_t x = static_cast<std::uint64_t>(i) + 0x9e3779b97f4a7c15ull;
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebull;
        x ^= x >> 31;
        return 0.5 + static_cast<double>(x >> 11) * (1.0 / 9007199254740992.0);
    }

    double col_entry(long j, std::size_t i) const {
        if (j < 0) return (static_cast<std::size_t>(~j) == i) ? 1.0 : 0.0;
        return sgn[i] * lp.rows[static_cast<std::size_t>(j)][i];
    }

    double cost(long j) const {
        if (phase_one_mode) return j < 0 ? 1.0 : 0.0;
        return j < 0 ? 0.0 : lp.bounds[static_cast<std::size_t>(j)];
    }

    void identity_basis() {
        basis.resize(d);
        for (std::size_t i = 0; i < d; ++i) basis[i] = ~static_cast<long>(i);
        binv.assign(d * d, 0.0);
        for (std::size_t i = 0; i < d; ++i) binv[i * d + i] = 1.0;
        xb = rhs;
        update_allowances();
    }

    enum class Refactor { clean, repaired, dead };

    // Rebuild binv and the basic values from the recorded basis.  When the
    // recorded columns turn out numerically dependent, the offending slot is
    // replaced by the auxiliary column of a row that has not yet produced a
    // pivot, and the factorization restarts.  `repaired` then tells the
    // caller that the basis changed (and may have lost feasibility).
    Refactor refactor_repair() {
        bool repaired = false;
        for (std::size_t attempt = 0; attempt <= d + 4; ++attempt) {
            std::vector<double> m(d * d, 0.0);
            for (std::size_t s = 0; s < d; ++s)
                for (std::size_t i = 0; i < d; ++i) m[i * d + s] = col_entry(basis[s], i);
            std::vector<double> inv(d * d, 0.0);
            for (std::size_t i = 0; i < d; ++i) inv[i * d + i] = 1.0;
            // row_origin[r] = index of the original row currently stored in
            // physical row r (rows get swapped during elimination)
            std::vector<std::size_t> row_origin(d);
            for (std::size_t i = 0; i < d; ++i) row_origin[i] = i;
            bool stalled = false;
            for (std::size_t cp = 0; cp < d && !stalled; ++cp) {
                std::size_t piv = cp;
                double best = std::fabs(m[cp * d + cp]);
                for (std::size_t r = cp + 1; r < d; ++r) {
                    double v = std::fabs(m[r * d + cp]);
                    if (v > best) {
                        best = v;
                        piv = r;
                    }
                }
                if (best < 1e-12) {
                    // Column cp of the basis lies in the span of the
                    // previous ones.  Swap in an auxiliary unit column that
                    // is not already basic, preferring rows that have not
                    // yet produced a pivot; the attempt offset keeps
                    // consecutive retries from repeating a failed choice.
                    long pick = -1;
                    for (std::size_t t = 0; t < d && pick < 0; ++t) {
                        std::size_t cand = row_origin[(cp + t + attempt) % d];
                        bool used = false;
                        for (std::size_t s = 0; s < d; ++s)
                            if (s != cp && basis[s] == ~static_cast<long>(cand)) {
                                used = true;
                                break;
                            }
                        if (!used) pick = static_cast<long>(cand);
                    }
                    if (pick < 0) return Refactor::dead;
                    basis[cp] = ~pick;
                    repaired = true;
                    stalled = true;
                    break;
                }
                if (piv != cp) {
                    std::swap(row_origin[piv], row_origin[cp]);
                    for (std::size_t k = 0; k < d; ++k) {
                        std::swap(m[piv * d + k], m[cp * d + k]);
                        std::swap(inv[piv * d + k], inv[cp * d + k]);
                    }
                }
                double p = m[cp * d + cp];
                for (std::size_t k = 0; k < d; ++k) {
                    m[cp * d + k] /= p;
                    inv[cp * d + k] /= p;
                }
                for (std::size_t r = 0; r < d; ++r) {
                    if (r == cp) continue;
                    double f = m[r * d + cp];
                    if (f == 0.0) continue;
                    for (std::size_t k = 0; k < d; ++k) {
                        m[r * d + k] -= f * m[cp * d + k];
                        inv[r * d + k] -= f * inv[cp * d + k];
                    }
                }
            }
            if (stalled) continue;
            binv = std::move(inv);
            xb.assign(d, 0.0);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t k = 0; k < d; ++k) xb[i] += binv[i * d + k] * rhs[k];
            for (double& v : xb)
                if (v < 0.0 && v > -1e-11) v = 0.0;
            update_allowances();
            return repaired ? Refactor::repaired : Refactor::clean;
        }
        return Refactor::dead;
    }

    // y solving B^T y = cost_B; at phase-2 optimality, sgn .* y is the
    // primal point.
    std::vector<double> multipliers() const {
        std::vector<double> y(d, 0.0);
        for (std::size_t s = 0; s < d; ++s) {
            double cb = cost(basis[s]);
            if (cb == 0.0) continue;
            for (std::size_t i = 0; i < d; ++i) y[i] += cb * binv[s * d + i];
        }
        return y;
    }

    double phase_objective() const {
        double v = 0.0;
        for (std::size_t s = 0; s < d; ++s) v += cost(basis[s]) * xb[s];
        return v;
    }

    // The ratio test keeps basic values above the (possibly expanded)
    // budget by construction; the gate sits above the expansion ceiling so
    // only a genuine breakdown trips it.
    bool xb_feasible() const {
        for (std::size_t k = 0; k < d; ++k)
            if (xb[k] < -10.0 * kBudgetCeil * allow[k]) return false;
        return true;
    }

    enum class Step {
        optimal,
        unbounded_below,
        iteration_limit,
        singular,
        lost_feasibility,
        stalled,  // certification keeps failing with no pivots in between
    };

    // Most negative reduced cost over the nonbasic columns.
    double worst_reduced_cost() const {
        std::vector<double> y = multipliers();
        std::vector<bool> basic(lp.rows.size(), false);
        for (long s : basis)
            if (s >= 0) basic[static_cast<std::size_t>(s)] = true;
        double worst = 0.0;
        for (std::size_t j = 0; j < lp.rows.size(); ++j) {
            if (basic[j]) continue;
            double rc = cost(static_cast<long>(j));
            const std::vector<double>& row = lp.rows[j];
            for (std::size_t i = 0; i < d; ++i) rc -= y[i] * sgn[i] * row[i];
            worst = std::min(worst, rc);
        }
        return worst;
    }

    // True when the current (freshly refactored) basis passes both tests
    // that iterate() stops on: basic values nonnegative and no nonbasic
    // column with improving reduced cost.
    bool certified_optimal() const {
        return xb_feasible() && worst_reduced_cost() >= -10.0 * kPivotTol;
    }

    // Run the simplex and re-verify every claim of optimality against a
    // freshly refactored inverse, resuming when the claim does not survive.
    Step iterate_verified() {
        static const bool dbg = std::getenv("LP_DEBUG") != nullptr;
        bool retried_unbounded = false;
        long iters_at_last_failure = -1;
        for (int attempt = 0; attempt < 256; ++attempt) {
            Step s = iterate();
            if (dbg)
                std::fprintf(stderr, "[lp] attempt=%d phase=%d step=%d iters=%ld pobj=%.3e\n",
                             attempt, phase_one_mode ? 1 : 2, static_cast<int>(s), iters,
                             phase_objective());
            if (s != Step::optimal && s != Step::unbounded_below) return s;
            Refactor rr = refactor_repair();
            if (rr == Refactor::dead) return Step::singular;
            if (rr == Refactor::repaired || !xb_feasible()) return Step::lost_feasibility;
            if (s == Step::unbounded_below) {
                // could have been an artifact of a stale inverse: after the
                // refresh, give the pivoter one more chance
                if (retried_unbounded) return s;
                retried_unbounded = true;
                continue;
            }
            if (certified_optimal()) return Step::optimal;
            // Columns whose directions have no numerically usable pivot can
            // never be priced out: accept the vertex when the remaining gap
            // is negligible.  Reduced costs here are primal constraint slacks,
            // so the gap is measured in right-hand-side units and bounds the
            // worst constraint violation of the returned point.
            if (degraded && xb_feasible()) {
                double gap = -worst_reduced_cost();
                if (gap <= 10.0 * kInfeasBudget * (1.0 + cost_scale)) {
                    if (dbg)
                        std::fprintf(stderr, "[lp]   accepting degraded optimum gap=%.3e\n",
                                     gap);
                    return Step::optimal;
                }
            }
            if (dbg) std::fprintf(stderr, "[lp]   certification failed\n");
            // A failure with zero pivots since the previous one is a fixed
            // point: the same columns get skipped for the same rows, and no
            // amount of retrying changes the arithmetic.  Hand control back
            // so the caller can restart from a different perturbation.
            if (iters == iters_at_last_failure) {
                if (dbg) std::fprintf(stderr, "[lp]   stalled, giving up this basis\n");
                return Step::stalled;
            }
            iters_at_last_failure = iters;
            retried_unbounded = false;
        }
        return Step::iteration_limit;
    }

    Step iterate() {
        const long ncols = static_cast<long>(lp.rows.size());
        const bool exact = d <= kExactDim;
        std::vector<bool> basic(lp.rows.size(), false);
        auto rebuild_basic = [&] {
            std::fill(basic.begin(), basic.end(), false);
            for (long s : basis)
                if (s >= 0) basic[static_cast<std::size_t>(s)] = true;
        };
        rebuild_basic();
        // Columns found numerically dependent on the current basis; cleared
        // whenever the basis changes.
        std::vector<bool> ineligible(lp.rows.size(), false);
        long since_refactor = 0;
        while (true) {
            if (iters >= iter_limit) return Step::iteration_limit;
            std::vector<double> y = multipliers();

            // Entering rule: most negative reduced cost.  Picking by index
            // instead tends to walk through near-parallel columns (adjacent
            // sample points produce almost-proportional rows) and wrecks the
            // basis conditioning; steepest descent spreads the choices out.
            long entering = -1;
            double best_rc = -kPivotTol;
            for (long j = 0; j < ncols; ++j) {
                if (basic[static_cast<std::size_t>(j)] || ineligible[static_cast<std::size_t>(j)])
                    continue;
                double rc = cost(j);
                const std::vector<double>& row = lp.rows[static_cast<std::size_t>(j)];
                for (std::size_t i = 0; i < d; ++i) rc -= y[i] * sgn[i] * row[i];
                if (rc < best_rc) {
                    best_rc = rc;
                    entering = j;
                }
            }
            if (entering < 0) return Step::optimal;

            std::vector<double> w(d, 0.0);
            auto compute_w = [&] {
                std::fill(w.begin(), w.end(), 0.0);
                const std::vector<double>& row = lp.rows[static_cast<std::size_t>(entering)];
                for (std::size_t i = 0; i < d; ++i) {
                    double mi = sgn[i] * row[i];
                    if (mi == 0.0) continue;
                    for (std::size_t k = 0; k < d; ++k) w[k] += binv[k * d + i] * mi;
                }
            };
            compute_w();
            if (!exact) {
                // Guard against a stale inverse: the direction must
                // reproduce the entering column through the actual basis
                // columns.  A bad residual here is how noise-level "pivots"
                // sneak in and wreck the basis.
                const std::vector<double>& row = lp.rows[static_cast<std::size_t>(entering)];
                double res = 0.0, scale = 0.0;
                for (std::size_t i = 0; i < d; ++i) {
                    double bw = 0.0;
                    for (std::size_t s = 0; s < d; ++s) bw += col_entry(basis[s], i) * w[s];
                    double mi = sgn[i] * row[i];
                    scale = std::max(scale, std::fabs(mi));
                    res = std::max(res, std::fabs(bw - mi));
                }
                if (res > 1e-7 * std::max(1.0, scale)) {
                    Refactor rr = refactor_repair();
                    if (rr == Refactor::dead) return Step::singular;
                    if (rr == Refactor::repaired) {
                        rebuild_basic();
                        if (!phase_one_mode) return Step::lost_feasibility;
                        std::fill(ineligible.begin(), ineligible.end(), false);
                        continue;
                    }
                    if (!xb_feasible()) return Step::lost_feasibility;
                    compute_w();
                    since_refactor = 0;
                }
            }

            // Two-pass ratio test.  Pass one finds the largest step that
            // keeps every basic value above its own allowance (an absolute
            // floor per slot, so violations never accumulate).  Pass two
            // picks, among rows whose signed entering value xb/w stays above
            // the allowance and whose ratio fits under the cap, the largest
            // pivot element.  Preferring big pivots keeps the basis well
            // conditioned on programs with near-parallel columns, and the
            // signed-value screen stops a small pivot from amplifying a
            // slightly negative basic value into a large violation.
            long leave = -1;
            double theta = 0.0;
            bool any_strong = false;
            bool any_blocker = false;
            {
                // Pivot floor relative to the direction's own scale: an
                // entry tiny relative to the rest of the direction means the
                // entering column is numerically inside the span of the
                // other basis columns through that slot, and pivoting there
                // makes the basis near-singular no matter how the step is
                // chosen.
                double wmax = 0.0;
                double viol_rel = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    wmax = std::max(wmax, std::fabs(w[k]));
                    viol_rel = std::max(viol_rel, -xb[k] / allow[k]);
                }
                const double floor = std::max(kWeakPivot, kRelPivot * wmax);
                // Expanded allowance: twice the worst current violation in
                // allowance units, so even the deepest row leaves a strictly
                // positive cap.
                const double expand = std::min(kBudgetCeil, std::max(1.0, 2.0 * viol_rel));
                // Every nonzero entry caps the step, including those below
                // the pivot floor: a step large enough makes even a 1e-17
                // entry move its slot by more than the slot's allowance, so
                // "too small to pivot on" must never mean "free to ignore".
                double cap = std::numeric_limits<double>::infinity();
                for (std::size_t k = 0; k < d; ++k) {
                    double wk = w[k];
                    if (std::fabs(wk) > kMinPivot) any_strong = true;
                    if (wk > floor) any_blocker = true;
                    if (wk > 0.0) {
                        cap = std::min(cap, std::max(xb[k] + expand * allow[k], 0.0) / wk);
                    } else if (!phase_one_mode && basis[k] < 0 && wk < 0.0) {
                        // an auxiliary column parked near zero must not rise
                        // past tolerance: cap the step accordingly
                        cap = std::min(cap, (expand * allow[k] + std::max(-xb[k], 0.0)) / (-wk));
                    }
                }
                double best_piv = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    double wk = w[k];
                    double ratio;
                    double mag;
                    if (wk > floor) {
                        double entering_value = xb[k] / wk;
                        if (entering_value < -expand * allow[k]) continue;
                        ratio = std::max(entering_value, 0.0);
                        mag = wk;
                    } else if (!phase_one_mode && basis[k] < 0 && wk < -floor) {
                        ratio = 0.0;
                        mag = -wk;
                    } else {
                        continue;
                    }
                    if (ratio <= cap && mag > best_piv) {
                        best_piv = mag;
                        leave = static_cast<long>(k);
                        theta = ratio;
                    }
                }
            }
            if (leave < 0) {
                if (!phase_one_mode && any_strong && !any_blocker)
                    return Step::unbounded_below;
                // The direction is at noise level (the column is spanned by
                // the basis), or every blocking row was screened out as
                // numerically unusable: drop the column for this basis.
                static const bool dbg_skip = std::getenv("LP_DEBUG2") != nullptr;
                if (dbg_skip) {
                    double wmax = 0.0;
                    for (std::size_t k = 0; k < d; ++k)
                        wmax = std::max(wmax, std::fabs(w[k]));
                    double viol2 = 0.0;
                    for (std::size_t k = 0; k < d; ++k)
                        viol2 = std::max(viol2, -xb[k] / allow[k]);
                    double ex2 = std::min(kBudgetCeil, std::max(1.0, 2.0 * viol2));
                    double cap2 = std::numeric_limits<double>::infinity();
                    double flr = std::max(kWeakPivot, kRelPivot * wmax);
                    for (std::size_t k = 0; k < d; ++k)
                        if (w[k] > flr)
                            cap2 = std::min(cap2,
                                            std::max(xb[k] + ex2 * allow[k], 0.0) / w[k]);
                    std::fprintf(stderr,
                                 "[lp]   skip col=%ld rc=%.3e wmax=%.3e blocker=%d "
                                 "cap=%.3e expand=%.3e\n",
                                 entering, best_rc, wmax, any_blocker ? 1 : 0, cap2, ex2);
                    for (std::size_t k = 0; k < d; ++k)
                        if (w[k] > flr)
                            std::fprintf(stderr,
                                         "[lp]     k=%zu w=%.3e xb=%.3e xb/w=%.3e allow=%.3e\n",
                                         k, w[k], xb[k], xb[k] / w[k], allow[k]);
                }
                ineligible[static_cast<std::size_t>(entering)] = true;
                degraded = true;
                continue;
            }
            if (theta < 0.0) theta = 0.0;

            static const bool dbg_piv = std::getenv("LP_DEBUG2") != nullptr;
            if (dbg_piv)
                std::fprintf(stderr,
                             "[lp]   iter=%ld enter=%ld out=%ld w=%.3e theta=%.3e\n",
                             iters, entering, basis[static_cast<std::size_t>(leave)],
                             w[static_cast<std::size_t>(leave)], theta);

            std::size_t r = static_cast<std::size_t>(leave);
            if (basis[r] >= 0) basic[static_cast<std::size_t>(basis[r])] = false;
            basis[r] = entering;
            basic[static_cast<std::size_t>(entering)] = true;
            std::fill(ineligible.begin(), ineligible.end(), false);
            ++iters;

            if (exact) {
                Refactor rr = refactor_repair();
                if (rr == Refactor::dead) return Step::singular;
                if (rr == Refactor::repaired) {
                    rebuild_basic();
                    if (!phase_one_mode) return Step::lost_feasibility;
                    continue;
                }
                if (!xb_feasible()) {
                    if (dbg_piv) {
                        double mn = 0.0;
                        std::size_t mk = 0;
                        for (std::size_t k = 0; k < d; ++k)
                            if (xb[k] < mn) { mn = xb[k]; mk = k; }
                        std::fprintf(stderr, "[lp]   infeas slot=%zu xb=%.3e basis=%ld\n",
                                     mk, mn, basis[mk]);
                    }
                    return Step::lost_feasibility;
                }
            } else {
                double piv = w[r];
                for (std::size_t k = 0; k < d; ++k) binv[r * d + k] /= piv;
                for (std::size_t k = 0; k < d; ++k) {
                    if (k == r || w[k] == 0.0) continue;
                    double f = w[k];
                    for (std::size_t i = 0; i < d; ++i) binv[k * d + i] -= f * binv[r * d + i];
                }
                for (std::size_t k = 0; k < d; ++k) {
                    if (k == r) continue;
                    xb[k] -= w[k] * theta;
                    if (xb[k] < 0.0 && xb[k] > -1e-11) xb[k] = 0.0;
                }
                xb[r] = theta;
                if (++since_refactor >= 8) {
                    since_refactor = 0;
                    Refactor rr = refactor_repair();
                    if (rr == Refactor::dead) return Step::singular;
                    if (rr == Refactor::repaired) {
                        rebuild_basic();
                        if (!phase_one_mode) return Step::lost_feasibility;
                        continue;
                    }
                    if (!xb_feasible()) return Step::lost_feasibility;
                }
            }
        }
    }
};

LpSolution run(const LinearProgram& lp, long limit, const std::vector<long>* warm,
               bool allow_probe);

LpSolution extract_point(const LinearProgram& lp, Simplex& sx, LpStatus status) {
    LpSolution sol;
    sol.status = status;
    std::vector<double> y = sx.multipliers();
    sol.point.assign(sx.d, 0.0);
    for (std::size_t i = 0; i < sx.d; ++i) sol.point[i] = sx.sgn[i] * y[i];
    sol.value = 0.0;
    for (std::size_t i = 0; i < sx.d; ++i) sol.value += lp.objective[i] * sol.point[i];
    sol.iterations = sx.iters;
    sol.basis = sx.basis;
    return sol;
}

// Phase 1 ended with a positive artificial sum: the standard form is
// infeasible, so the original program is unbounded or infeasible.  The
// phase-1 multipliers give a Farkas direction r with A r <= 0 and
// objective.r improving; feasibility of the original program is settled by
// the origin test (bounds >= 0) or, failing that, by one auxiliary program
// maximizing the slack margin t with rows (A_j, 1) <= b_j.
LpSolution standard_form_infeasible(const LinearProgram& lp, Simplex& sx, long limit,
                                    bool allow_probe) {
    std::vector<double> y = sx.multipliers();  // phase-1 costs still active
    std::vector<double> ray(sx.d, 0.0);
    for (std::size_t i = 0; i < sx.d; ++i) ray[i] = sx.sgn[i] * y[i];

    bool origin_ok = true;
    for (double b : lp.bounds)
        if (b < 0.0) {
            origin_ok = false;
            break;
        }

    LpSolution sol;
    sol.iterations = sx.iters;
    sol.ray = ray;

    if (!origin_ok && allow_probe) {
        LinearProgram aux;
        aux.dim = lp.dim + 1;
        aux.objective.assign(aux.dim, 0.0);
        aux.objective.back() = 1.0;
        aux.maximize = true;
        for (std::size_t j = 0; j < lp.rows.size(); ++j) {
            std::vector<double> row = lp.rows[j];
            row.push_back(1.0);
            aux.add_constraint(std::move(row), lp.bounds[j]);
        }
        LpSolution probe = run(aux, limit, nullptr, false);
        if (probe.status == LpStatus::iteration_limit) {
            sol.status = LpStatus::iteration_limit;
            sol.point.assign(lp.dim, 0.0);
            sol.value = 0.0;
            return sol;
        }
        if (probe.status == LpStatus::optimal && probe.value < -kFeasTol) {
            sol.status = LpStatus::infeasible;
            sol.ray.clear();
            return sol;
        }
        if (probe.status == LpStatus::optimal) {
            sol.point.assign(probe.point.begin(), probe.point.end() - 1);
        } else {
            sol.point.assign(lp.dim, 0.0);
        }
    } else {
        sol.point.assign(lp.dim, 0.0);  // the origin is feasible when bounds >= 0
    }
    sol.status = LpStatus::unbounded;
    sol.value = lp.maximize ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
    return sol;
}

LpSolution run(const LinearProgram& lp, long limit, const std::vector<long>* warm,
               bool allow_probe) {
    lp.validate();
    Simplex sx(lp, limit);

    bool warmed = false;
    if (warm && warm->size() == lp.dim) {
        bool indices_ok = true;
        for (long s : *warm)
            if (s >= static_cast<long>(lp.rows.size())) {
                indices_ok = false;
                break;
            }
        if (indices_ok) {
            sx.basis = *warm;
            warmed = sx.refactor_repair() == Simplex::Refactor::clean;
            if (warmed)
                for (std::size_t k = 0; k < sx.d; ++k)
                    if (sx.xb[k] < -sx.allow[k]) {
                        warmed = false;
                        break;
                    }
            if (warmed)
                for (double& v : sx.xb)
                    if (v < 0.0) v = 0.0;
        }
    }

    // A lost basis (numerically dependent columns, or feasibility broken by
    // a repair) is recovered by restarting the two-phase run from the
    // identity basis with a different perturbation seed, so the failed pivot
    // path is not replayed; further failures surface as an iteration-limit
    // result.
    for (int attempt = 0; attempt < 4; ++attempt) {
        if (attempt > 0) {
            warmed = false;
            sx.set_perturbation(attempt);
        }
        sx.degraded = false;
        if (!warmed) {
            sx.identity_basis();
            sx.phase_one_mode = true;
            Simplex::Step r1 = sx.iterate_verified();
            if (r1 == Simplex::Step::singular || r1 == Simplex::Step::lost_feasibility ||
                r1 == Simplex::Step::stalled)
                continue;
            if (r1 == Simplex::Step::iteration_limit) {
                LpSolution sol;
                sol.status = LpStatus::iteration_limit;
                sol.point.assign(lp.dim, 0.0);
                sol.value = 0.0;
                sol.iterations = sx.iters;
                return sol;
            }
            double scale = 0.0;
            for (double v : sx.rhs) scale = std::max(scale, std::fabs(v));
            // The perturbation itself can park the objective vector a hair
            // outside the constraint-row cone, so the infeasibility gate
            // budgets for the total shift in addition to round-off.
            double gate = (kFeasTol + 2.0 * kPerturb * static_cast<double>(sx.d)) *
                          (1.0 + scale);
            if (sx.phase_objective() > gate) {
                // A positive optimum reached while skipping numerically
                // unusable columns proves nothing: restart with a different
                // perturbation instead of declaring infeasibility.
                if (sx.degraded) continue;
                return standard_form_infeasible(lp, sx, limit, allow_probe);
            }
            sx.phase_one_mode = false;
            // Auxiliary columns left basic sit at level zero; they never
            // re-enter and carry zero phase-2 cost, so they are harmless.
        }

        sx.phase_one_mode = false;
        Simplex::Step r2 = sx.iterate_verified();
        if (r2 == Simplex::Step::singular || r2 == Simplex::Step::lost_feasibility ||
            r2 == Simplex::Step::stalled)
            continue;
        if (r2 == Simplex::Step::iteration_limit)
            return extract_point(lp, sx, LpStatus::iteration_limit);
        if (r2 == Simplex::Step::unbounded_below) {
            // The standard form is unbounded below, so no point satisfies
            // the original constraints.
            LpSolution sol;
            sol.status = LpStatus::infeasible;
            sol.iterations = sx.iters;
            return sol;
        }
        return extract_point(lp, sx, LpStatus::optimal);
    }
    return extract_point(lp, sx, LpStatus::iteration_limit);
}

}  // namespace

void LinearProgram::add_constraint(std::vector<double> row, double bound) {
    rows.push_back(std::move(row));
    bounds.push_back(bound);
}

void LinearProgram::validate() const {
    require(dim >= 1, Error::Kind::invalid_input, "lp: dimension must be at least 1");
    require(objective.size() == dim, Error::Kind::invalid_input,
            "lp: objective length does not match dimension");
    require(rows.size() == bounds.size(), Error::Kind::invalid_input,
            "lp: row/bound count mismatch");
    for (double v : objective)
        require(std::isfinite(v), Error::Kind::invalid_input, "lp: non-finite objective entry");
    for (std::size_t j = 0; j < rows.size(); ++j) {
        require(rows[j].size() == dim, Error::Kind::invalid_input,
                "lp: constraint row length mismatch at row " + std::to_string(j));
        for (double v : rows[j])
            require(std::isfinite(v), Error::Kind::invalid_input, "lp: non-finite row entry");
        require(std::isfinite(bounds[j]), Error::Kind::invalid_input, "lp: bounds must be finite");
    }
}

std::string to_string(LpStatus s) {
    switch (s) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::unbounded: return "unbounded";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::iteration_limit: return "iteration-limit";
    }
    return "unknown";
}

LpSolution solve(const LinearProgram& lp, long iteration_limit) {
    return run(lp, iteration_limit, nullptr, true);
}

LpSolution resolve_with_added_constraints(
    const LpSolution& previous, LinearProgram& lp,
    const std::vector<std::pair<std::vector<double>, double>>& new_rows, long iteration_limit) {
    for (const auto& [row, bound] : new_rows) lp.add_constraint(row, bound);
    bool warmable = previous.status == LpStatus::optimal && previous.basis.size() == lp.dim;
    return run(lp, iteration_limit, warmable ? &previous.basis : nullptr, true);
}

}  // namespace pluripot::lp
