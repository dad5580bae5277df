#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pluripot/common.hpp"

namespace pluripot::region {

enum class SpecKind {
    disk,          // {|z - center| <= radius} in C
    ball,          // {|z| <= radius} in C^2
    polydisk,      // {|z1| <= r1, |z2| <= r2} in C^2
    segment,       // real interval [a, b] in C
    halfline,      // {origin + t*direction : t >= 0} in C
    slab,          // {z in C^2 : ell(z) real, lo <= ell(z) <= hi}
    cone,          // {z in C^2 : |ell(z)| <= aperture * |z|}
    example1,      // {|z2| <= 1} union {z1 = 0} in C^2
    product,       // E1 x E2 with one-dimensional factors
    union_of,      // union of same-dimension members
    fatten,        // {dist(z, inner) <= epsilon}
    remove_slice,  // inner with a zero hyperplane of a linear form struck out;
                   // a marker consumed by the closed-form oracle only, since
                   // finite sampling cannot see the removal of a null set
};

std::string to_string(SpecKind k);

/// Region description tree.  Build through the static constructors, which
/// validate parameters (positive radii, nonempty intervals, nonzero forms,
/// matching dimensions).
struct RegionSpec {
    SpecKind kind = SpecKind::disk;

    cx center{0.0, 0.0};      // disk
    double radius = 1.0;      // disk/ball
    double r1 = 1.0, r2 = 1.0;  // polydisk
    double a = 0.0, b = 1.0;    // segment endpoints (real), slab interval
    cx origin{0.0, 0.0};      // halfline
    cx direction{1.0, 0.0};   // halfline
    LinearForm form;          // slab/cone/remove_slice
    double aperture = 0.5;    // cone
    double epsilon = 0.0;     // fatten
    std::vector<RegionSpec> children;  // product/union_of/fatten/remove_slice

    static RegionSpec disk(cx center, double radius);
    static RegionSpec ball(double radius);
    static RegionSpec polydisk(double r1, double r2);
    static RegionSpec segment(double a, double b);
    static RegionSpec halfline(cx origin, cx direction);
    static RegionSpec slab(LinearForm ell, double lo, double hi);
    static RegionSpec cone(LinearForm ell, double aperture);
    static RegionSpec example1();
    static RegionSpec product(RegionSpec e1, RegionSpec e2);
    static RegionSpec union_of(std::vector<RegionSpec> members);
    static RegionSpec fatten(RegionSpec inner, double epsilon);
    static RegionSpec remove_slice(RegionSpec inner, LinearForm ell);

    std::size_t dim() const;
    bool bounded() const;
    /// Radius of the smallest origin-centered ball containing the region.
    /// Throws Error(unsupported) for unbounded specs.
    double circumradius() const;
};

/// Membership predicate.  Points produced by sample() satisfy it; the
/// comparisons carry a 1e-12 relative guard so constructive points a couple
/// of ulps off their defining surface still count as members.
bool member(const RegionSpec& spec, const Pt& z);

/// Strict topological interior (used for boundary bookkeeping in unions).
bool member_interior(const RegionSpec& spec, const Pt& z);

/// Euclidean distance to the region.  Supported for every constructor
/// except cone (Error(unsupported)); fatten composes through it.
double distance(const RegionSpec& spec, const Pt& z);

struct Density {
    std::size_t boundary = 0;
    std::size_t interior = 0;
    std::size_t total() const { return boundary + interior; }
};

/// Per-constructor default sampling density at truncation radius R.
/// Bounded constructors use fixed budgets; unbounded ones grow with R.
Density default_density(const RegionSpec& spec, double R);

/// Deterministic sample of spec ∩ {|z| <= R}.  Boundary points are stored
/// first (boundary_count of them; at least half of all points for the
/// constructive specs).  Low-discrepancy lattices, no randomness: calling
/// twice yields identical output.  Throws Error(empty_region) when the
/// truncated region is empty.
struct SampledRegion {
    RegionSpec spec;
    double R = 0.0;
    std::size_t dim = 1;
    std::vector<Pt> points;          // boundary first, then interior
    std::size_t boundary_count = 0;
    Density requested;
};

SampledRegion sample(const RegionSpec& spec, double R, const Density& density);
SampledRegion sample(const RegionSpec& spec, double R);

/// Increasing truncation radii; profiling requires at least three.
struct TruncationSchedule {
    std::vector<double> radii;

    static TruncationSchedule geometric(double first, double factor, std::size_t count);
    void validate(std::size_t min_count = 3) const;
};

/// sample(spec, R) for every radius in the schedule, in schedule order.
/// The density argument applies to every entry; the overload without one
/// uses each radius's default density.
std::vector<SampledRegion> truncate_schedule(const RegionSpec& spec,
                                             const TruncationSchedule& schedule,
                                             const Density& density);
std::vector<SampledRegion> truncate_schedule(const RegionSpec& spec,
                                             const TruncationSchedule& schedule);

/// Exact Green value of the *untruncated* region, where one is known:
/// disk, ball, polydisk, segment, halfline, and example1 with its singular
/// slice removed.  Returns nullopt otherwise.
std::optional<double> closed_form_green(const RegionSpec& spec, const Pt& z);

/// log|u + sqrt(u^2 - 1)| with the branch that is >= 0; the Green function
/// of [-1, 1] evaluated at a complex point.
double joukowski_green(cx u);

}  // namespace pluripot::region
