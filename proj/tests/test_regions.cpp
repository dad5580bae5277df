#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pluripot/common.hpp"
#include "pluripot/region.hpp"

using namespace pluripot;
using namespace pluripot::region;

namespace {

const double kLog2 = 0.6931471805599453;

std::vector<RegionSpec> zoo() {
    std::vector<RegionSpec> specs;
    specs.push_back(RegionSpec::disk(cx(0.0, 0.0), 1.0));
    specs.push_back(RegionSpec::disk(cx(0.5, 0.5), 2.0));
    specs.push_back(RegionSpec::ball(1.0));
    specs.push_back(RegionSpec::polydisk(1.0, 2.0));
    specs.push_back(RegionSpec::segment(-2.0, 2.0));
    specs.push_back(RegionSpec::halfline(cx(0.0, 0.0), cx(1.0, 1.0)));
    specs.push_back(RegionSpec::slab(LinearForm{cx(1.0, 0.0), cx(0.0, 0.0), 2}, -2.0, 2.0));
    specs.push_back(RegionSpec::slab(LinearForm{cx(1.0, 0.5), cx(0.5, -1.0), 2}, 0.0, 1.0));
    specs.push_back(RegionSpec::cone(LinearForm{cx(1.0, 0.0), cx(0.0, 0.0), 2}, 0.5));
    specs.push_back(RegionSpec::example1());
    specs.push_back(RegionSpec::product(RegionSpec::segment(-2.0, 2.0),
                                        RegionSpec::segment(0.0, 1.0)));
    specs.push_back(RegionSpec::union_of({RegionSpec::disk(cx(-1.5, 0.0), 1.0),
                                          RegionSpec::disk(cx(1.5, 0.0), 1.0)}));
    specs.push_back(RegionSpec::union_of({RegionSpec::disk(cx(0.0, 0.0), 1.0),
                                          RegionSpec::disk(cx(0.5, 0.0), 1.0)}));
    specs.push_back(RegionSpec::fatten(RegionSpec::segment(-2.0, 2.0), 0.5));
    specs.push_back(RegionSpec::fatten(RegionSpec::ball(1.0), 0.25));
    specs.push_back(RegionSpec::remove_slice(RegionSpec::example1(),
                                             LinearForm{cx(1.0, 0.0), cx(0.0, 0.0), 2}));
    return specs;
}

}  // namespace

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(RegionSpec::disk(cx(0, 0), 0.0), Error);
    CHECK_THROWS_AS(RegionSpec::disk(cx(0, 0), -1.0), Error);
    CHECK_THROWS_AS(RegionSpec::ball(-2.0), Error);
    CHECK_THROWS_AS(RegionSpec::polydisk(1.0, 0.0), Error);
    CHECK_THROWS_AS(RegionSpec::segment(2.0, 1.0), Error);
    CHECK_THROWS_AS(RegionSpec::segment(1.0, 1.0), Error);
    CHECK_THROWS_AS(RegionSpec::halfline(cx(0, 0), cx(0, 0)), Error);
    CHECK_THROWS_AS(RegionSpec::slab(LinearForm{cx(0, 0), cx(0, 0), 2}, 0.0, 1.0), Error);
    CHECK_THROWS_AS(RegionSpec::slab(LinearForm{cx(1, 0), cx(0, 0), 2}, 2.0, 1.0), Error);
    CHECK_THROWS_AS(RegionSpec::cone(LinearForm{cx(1, 0), cx(0, 0), 2}, 0.0), Error);
    CHECK_THROWS_AS(RegionSpec::fatten(RegionSpec::segment(-1, 1), -0.1), Error);
    CHECK_THROWS_AS(RegionSpec::fatten(RegionSpec::segment(-1, 1), 0.0), Error);
    // no distance oracle behind a cone, so it cannot be thickened
    CHECK_THROWS_AS(
        RegionSpec::fatten(RegionSpec::cone(LinearForm{cx(1, 0), cx(0, 0), 2}, 0.5), 0.1),
        Error);
    // ambient dimension cap: factors must be one-dimensional
    CHECK_THROWS_AS(RegionSpec::product(RegionSpec::ball(1.0), RegionSpec::segment(0, 1)),
                    Error);
    CHECK_THROWS_AS(RegionSpec::union_of({}), Error);
    CHECK_THROWS_AS(RegionSpec::union_of({RegionSpec::disk(cx(0, 0), 1.0), RegionSpec::ball(1.0)}),
                    Error);
    CHECK_THROWS_AS(RegionSpec::remove_slice(RegionSpec::example1(),
                                             LinearForm{cx(1, 0), cx(0, 0), 1}),
                    Error);
}

TEST_CASE("dimensions and boundedness") {
    CHECK(RegionSpec::disk(cx(0, 0), 1.0).dim() == 1);
    CHECK(RegionSpec::ball(1.0).dim() == 2);
    CHECK(RegionSpec::product(RegionSpec::segment(0, 1), RegionSpec::segment(0, 1)).dim() == 2);
    CHECK(RegionSpec::disk(cx(0, 0), 1.0).bounded());
    CHECK_FALSE(RegionSpec::halfline(cx(0, 0), cx(1, 0)).bounded());
    CHECK_FALSE(RegionSpec::example1().bounded());
    CHECK(RegionSpec::fatten(RegionSpec::segment(-2, 2), 0.5).bounded());
    CHECK(RegionSpec::disk(cx(3, 4), 1.0).circumradius() == doctest::Approx(6.0));
    CHECK(RegionSpec::segment(-2, 5).circumradius() == doctest::Approx(5.0));
    CHECK_THROWS_AS(RegionSpec::example1().circumradius(), Error);
}

TEST_CASE("unit disk sample at its own radius") {
    SampledRegion sr = sample(RegionSpec::disk(cx(0, 0), 1.0), 1.0);
    CHECK(sr.boundary_count == 256);
    CHECK(sr.points.size() >= 256 + 32);
    for (std::size_t i = 0; i < sr.points.size(); ++i) {
        const Pt& p = sr.points[i];
        CHECK(member(sr.spec, p));
        CHECK(p.norm() <= 1.0 + 1e-12);
        if (i < sr.boundary_count) CHECK(std::abs(p.z1) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("every sampled point is a member; boundary labels are not interior") {
    for (const auto& spec : zoo()) {
        SampledRegion sr = sample(spec, 4.0);
        CHECK(!sr.points.empty());
        for (std::size_t i = 0; i < sr.points.size(); ++i) {
            const Pt& p = sr.points[i];
            REQUIRE(member(spec, p));
            CHECK(p.norm() <= 4.0 * (1.0 + 1e-12));
            if (i < sr.boundary_count) CHECK_FALSE(member_interior(spec, p));
        }
    }
}

TEST_CASE("boundary points dominate the sample") {
    for (const auto& spec : zoo()) {
        SampledRegion sr = sample(spec, 4.0);
        CHECK(2 * sr.boundary_count >= sr.points.size());
    }
}

TEST_CASE("sampling is deterministic") {
    for (const auto& spec : zoo()) {
        SampledRegion a = sample(spec, 4.0);
        SampledRegion b = sample(spec, 4.0);
        REQUIRE(a.points.size() == b.points.size());
        CHECK(a.boundary_count == b.boundary_count);
        for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
    }
}

TEST_CASE("empty truncations are reported") {
    CHECK_THROWS_AS(sample(RegionSpec::disk(cx(5.0, 0.0), 1.0), 2.0), Error);
    CHECK_THROWS_AS(sample(RegionSpec::segment(3.0, 4.0), 2.0), Error);
    CHECK_THROWS_AS(sample(RegionSpec::halfline(cx(3.0, 0.0), cx(1.0, 0.0)), 2.0), Error);
    try {
        sample(RegionSpec::disk(cx(5.0, 0.0), 1.0), 2.0);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == Error::Kind::empty_region);
    }
}

TEST_CASE("off-center halfline truncation") {
    // ray from 3 toward +infinity clipped by |z| <= 5: the segment [3, 5]
    RegionSpec hl = RegionSpec::halfline(cx(3.0, 0.0), cx(1.0, 0.0));
    SampledRegion sr = sample(hl, 5.0);
    for (const Pt& p : sr.points) {
        CHECK(p.z1.imag() == 0.0);
        CHECK(p.z1.real() >= 3.0 - 1e-12);
        CHECK(p.z1.real() <= 5.0 + 1e-12);
    }
}

TEST_CASE("slab samples satisfy the defining form") {
    LinearForm ell{cx(1.0, 0.5), cx(0.5, -1.0), 2};
    RegionSpec sl = RegionSpec::slab(ell, -1.0, 2.0);
    SampledRegion sr = sample(sl, 4.0);
    CHECK(sr.boundary_count == sr.points.size());
    for (const Pt& p : sr.points) {
        cx w = ell.eval(p);
        CHECK(std::abs(w.imag()) <= 1e-10);
        CHECK(w.real() >= -1.0 - 1e-10);
        CHECK(w.real() <= 2.0 + 1e-10);
    }
}

TEST_CASE("cone samples satisfy the aperture inequality") {
    RegionSpec cn = RegionSpec::cone(LinearForm{cx(1.0, 0.0), cx(0.0, 0.0), 2}, 0.5);
    SampledRegion sr = sample(cn, 4.0);
    std::size_t on_edge = 0;
    for (const Pt& p : sr.points) {
        CHECK(std::abs(p.z1) <= 0.5 * p.norm() * (1.0 + 1e-10) + 1e-300);
        if (std::abs(std::abs(p.z1) - 0.5 * p.norm()) <= 1e-9 * p.norm()) ++on_edge;
    }
    CHECK(on_edge * 2 >= sr.points.size());
}

TEST_CASE("fattened segment stays within the advertised thickness") {
    RegionSpec fat = RegionSpec::fatten(RegionSpec::segment(-2.0, 2.0), 0.5);
    RegionSpec seg = RegionSpec::segment(-2.0, 2.0);
    SampledRegion sr = sample(fat, 4.0);
    CHECK(sr.boundary_count * 2 >= sr.points.size());
    for (std::size_t i = 0; i < sr.points.size(); ++i) {
        double dist = distance(seg, sr.points[i]);
        CHECK(dist <= 0.5 * (1.0 + 1e-10));
        if (i < sr.boundary_count)
            CHECK(dist >= 0.5 * (1.0 - 1e-10));
    }
}

TEST_CASE("union relabels swallowed boundary points") {
    RegionSpec u = RegionSpec::union_of(
        {RegionSpec::disk(cx(0.0, 0.0), 1.0), RegionSpec::disk(cx(0.5, 0.0), 1.0)});
    SampledRegion sr = sample(u, 4.0);
    std::size_t inside_other = 0;
    for (std::size_t i = 0; i < sr.points.size(); ++i) {
        if (i < sr.boundary_count) {
            CHECK_FALSE(member_interior(u, sr.points[i]));
        } else if (member_interior(u, sr.points[i])) {
            ++inside_other;
        }
    }
    CHECK(inside_other > 0);
}

TEST_CASE("membership oracles") {
    RegionSpec seg = RegionSpec::segment(-2.0, 2.0);
    CHECK(member(seg, Pt::c1(cx(1.5, 0.0))));
    CHECK_FALSE(member(seg, Pt::c1(cx(2.5, 0.0))));
    CHECK_FALSE(member(seg, Pt::c1(cx(1.0, 0.1))));

    RegionSpec e1 = RegionSpec::example1();
    CHECK(member(e1, Pt::c2(cx(10.0, 0.0), cx(0.5, 0.5))));
    CHECK(member(e1, Pt::c2(cx(0.0, 0.0), cx(40.0, 0.0))));
    CHECK_FALSE(member(e1, Pt::c2(cx(1.0, 0.0), cx(2.0, 0.0))));

    RegionSpec fat = RegionSpec::fatten(seg, 0.5);
    CHECK(member(fat, Pt::c1(cx(2.4, 0.3))));
    CHECK_FALSE(member(fat, Pt::c1(cx(2.5, 0.31))));
}

TEST_CASE("distance oracles") {
    RegionSpec seg = RegionSpec::segment(-2.0, 2.0);
    CHECK(distance(seg, Pt::c1(cx(3.0, 0.0))) == doctest::Approx(1.0));
    CHECK(distance(seg, Pt::c1(cx(0.0, 1.0))) == doctest::Approx(1.0));
    CHECK(distance(seg, Pt::c1(cx(3.0, 4.0))) == doctest::Approx(std::sqrt(17.0)));
    CHECK(distance(RegionSpec::ball(1.0), Pt::c2(cx(0, 0), cx(0, 2))) == doctest::Approx(1.0));
    CHECK(distance(RegionSpec::example1(), Pt::c2(cx(0.5, 0), cx(3, 0))) == doctest::Approx(0.5));
    RegionSpec prod = RegionSpec::product(seg, seg);
    CHECK(distance(prod, Pt::c2(cx(3, 0), cx(3, 0))) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(
        distance(RegionSpec::cone(LinearForm{cx(1, 0), cx(0, 0), 2}, 0.5), Pt::c2(cx(1, 0), cx(0, 0))),
        Error);
}

TEST_CASE("interval map evaluations") {
    CHECK(joukowski_green(cx(1.5, 0.0)) == doctest::Approx(0.9624236501192069).epsilon(1e-12));
    CHECK(joukowski_green(cx(0.0, 1.0)) == doctest::Approx(0.8813735870195430).epsilon(1e-12));
    CHECK(joukowski_green(cx(0.3, 0.0)) == doctest::Approx(0.0));
    CHECK(joukowski_green(cx(-1.0, 0.0)) == doctest::Approx(0.0));
}

TEST_CASE("closed forms: one-dimensional specs") {
    Pt three = Pt::c1(cx(3.0, 0.0));
    Pt twoi = Pt::c1(cx(0.0, 2.0));
    RegionSpec seg = RegionSpec::segment(-2.0, 2.0);
    CHECK(*closed_form_green(seg, three) == doctest::Approx(0.9624236501192069).epsilon(1e-12));
    CHECK(*closed_form_green(seg, twoi) == doctest::Approx(0.8813735870195430).epsilon(1e-12));
    CHECK(*closed_form_green(seg, Pt::c1(cx(1.0, 0.0))) == doctest::Approx(0.0));
    CHECK(*closed_form_green(RegionSpec::segment(0.0, 8.0), Pt::c1(cx(-1.0, 0.0))) ==
          doctest::Approx(kLog2).epsilon(1e-12));
    CHECK(*closed_form_green(RegionSpec::segment(0.0, 4.0), Pt::c1(cx(-1.0, 0.0))) ==
          doctest::Approx(0.9624236501192069).epsilon(1e-12));

    RegionSpec dk = RegionSpec::disk(cx(0, 0), 1.0);
    CHECK(*closed_form_green(dk, Pt::c1(cx(2.0, 0.0))) == doctest::Approx(kLog2).epsilon(1e-12));
    CHECK(*closed_form_green(dk, Pt::c1(cx(0.0, 0.5))) == doctest::Approx(0.0));
    CHECK(*closed_form_green(RegionSpec::disk(cx(1.0, 0.0), 2.0), Pt::c1(cx(5.0, 0.0))) ==
          doctest::Approx(kLog2).epsilon(1e-12));
    CHECK(*closed_form_green(RegionSpec::halfline(cx(0, 0), cx(1, 0)), three) ==
          doctest::Approx(0.0));
}

TEST_CASE("closed forms: two-dimensional specs") {
    CHECK(*closed_form_green(RegionSpec::ball(1.0), Pt::c2(cx(3.0, 0.0), cx(0.0, 4.0))) ==
          doctest::Approx(std::log(5.0)).epsilon(1e-12));
    CHECK(*closed_form_green(RegionSpec::ball(1.0), Pt::c2(cx(0.5, 0.0), cx(0.0, 0.5))) ==
          doctest::Approx(0.0));
    CHECK(*closed_form_green(RegionSpec::polydisk(1.0, 2.0), Pt::c2(cx(2.0, 0.0), cx(2.0, 0.0))) ==
          doctest::Approx(kLog2).epsilon(1e-12));

    RegionSpec pruned = RegionSpec::remove_slice(RegionSpec::example1(),
                                                 LinearForm{cx(1.0, 0.0), cx(0.0, 0.0), 2});
    CHECK(*closed_form_green(pruned, Pt::c2(cx(1.0, 0.0), cx(2.0, 0.0))) ==
          doctest::Approx(0.8047189562170502).epsilon(1e-12));
    CHECK(*closed_form_green(pruned, Pt::c2(cx(0.5, 0.0), cx(0.5, 0.0))) == doctest::Approx(0.0));
    CHECK_FALSE(closed_form_green(RegionSpec::example1(), Pt::c2(cx(1, 0), cx(2, 0))).has_value());
    CHECK_FALSE(closed_form_green(RegionSpec::union_of({RegionSpec::disk(cx(0, 0), 1.0)}),
                                  Pt::c1(cx(2, 0)))
                    .has_value());
}

TEST_CASE("truncation schedules") {
    TruncationSchedule ts = TruncationSchedule::geometric(2.0, 2.0, 4);
    REQUIRE(ts.radii.size() == 4);
    CHECK(ts.radii[0] == doctest::Approx(2.0));
    CHECK(ts.radii[3] == doctest::Approx(16.0));
    ts.validate();

    TruncationSchedule bad;
    bad.radii = {1.0, 2.0};
    CHECK_THROWS_AS(bad.validate(), Error);
    bad.radii = {1.0, 3.0, 2.0};
    CHECK_THROWS_AS(bad.validate(), Error);
    CHECK_THROWS_AS(TruncationSchedule::geometric(-1.0, 2.0, 4), Error);
    CHECK_THROWS_AS(TruncationSchedule::geometric(1.0, 1.0, 4), Error);
}

TEST_CASE("default densities grow with the truncation radius on unbounded specs") {
    RegionSpec hl = RegionSpec::halfline(cx(0, 0), cx(1, 0));
    CHECK(default_density(hl, 32.0).boundary > default_density(hl, 4.0).boundary);
    RegionSpec dk = RegionSpec::disk(cx(0, 0), 1.0);
    CHECK(default_density(dk, 32.0).boundary == default_density(dk, 4.0).boundary);
}

TEST_CASE("sphere lattice is balanced") {
    SampledRegion sr = sample(RegionSpec::ball(1.0), 1.0);
    double mean_share = 0.0;
    cx mean_z1{0.0, 0.0};
    for (std::size_t i = 0; i < sr.boundary_count; ++i) {
        mean_share += std::norm(sr.points[i].z1);
        mean_z1 += sr.points[i].z1;
    }
    mean_share /= static_cast<double>(sr.boundary_count);
    mean_z1 /= static_cast<double>(sr.boundary_count);
    CHECK(mean_share == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(mean_z1) <= 0.02);
}
