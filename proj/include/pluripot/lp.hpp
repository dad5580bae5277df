#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace pluripot::lp {

/// max (or min) objective . x  subject to  rows[i] . x <= bounds[i], x free.
///
/// Variables are unrestricted in sign: every program built by the extremal
/// solver optimizes over real/imaginary parts of polynomial coefficients.
/// Constraint rows are stored as an append-only list so that cutting-plane
/// refinement can add tangents without rebuilding the program.
struct LinearProgram {
    std::size_t dim = 0;
    std::vector<double> objective;              // length dim
    bool maximize = true;
    std::vector<std::vector<double>> rows;      // each length dim
    std::vector<double> bounds;                 // one per row

    void add_constraint(std::vector<double> row, double bound);
    /// Throws Error(invalid_input) on shape mismatch or non-finite data.
    void validate() const;
};

enum class LpStatus { optimal, unbounded, infeasible, iteration_limit };

std::string to_string(LpStatus s);

struct LpSolution {
    LpStatus status = LpStatus::optimal;
    std::vector<double> point;      // length dim (primal solution, or a feasible
                                    // point when status == unbounded and one is known)
    double value = 0.0;             // objective . point in the program's sense
    long iterations = 0;            // simplex pivots, both phases
    std::vector<double> ray;        // improving direction when status == unbounded

    /// Warm-start handle: basic set of the internal standard form.  Row
    /// indices are nonnegative; slots < 0 encode auxiliary columns.  Opaque
    /// to callers; consumed by resolve_with_added_constraints.
    std::vector<long> basis;
};

inline constexpr double kPivotTol = 1e-9;        // reduced-cost threshold
inline constexpr double kFeasTol = 1e-8;         // constraint satisfaction
inline constexpr long kDefaultIterationLimit = 1000000;

/// Solve from scratch (Bland's anti-cycling rule; deterministic).
LpSolution solve(const LinearProgram& lp, long iteration_limit = kDefaultIterationLimit);

/// Append the given rows to `lp` and re-solve, reusing the basis of
/// `previous` (which must have solved `lp` as it was before the append,
/// with the same objective).  Falls back to a cold solve when the handle
/// cannot be reused.  The appended rows only tighten the feasible set, so
/// the returned value never exceeds (for maximize) the previous one beyond
/// round-off.
LpSolution resolve_with_added_constraints(
    const LpSolution& previous, LinearProgram& lp,
    const std::vector<std::pair<std::vector<double>, double>>& new_rows,
    long iteration_limit = kDefaultIterationLimit);

}  // namespace pluripot::lp
