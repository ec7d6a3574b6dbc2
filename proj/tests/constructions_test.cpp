#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fixtures.hpp"

using namespace kleincl;

namespace {

/// Spectrum helper: sizes of plane sections of a point set.
std::set<long long> plane_section_sizes(const PointPlaneSystem& s) {
    std::set<long long> out;
    for (std::size_t pl = 0; pl < s.geom->planes.size(); ++pl)
        out.insert(static_cast<long long>(s.geom->plane_points[pl].count_and(s.p0)));
    return out;
}

}  // namespace

TEST_CASE("disjoint line unions") {
    const auto& I = fixtures::q2();
    const Geometry& G = *I.geom;
    const KleinModel& M = *I.klein;
    SECTION("one line gives the pencil") {
        PointPlaneSystem s = from_disjoint_lines(G, {0});
        int qp = M.line_to_quadric_point(0);
        REQUIRE(from_pg3(M, s).members == M.point_pencil(qp));
        REQUIRE(check_property31(s, 1).pass);
    }
    SECTION("meeting lines are rejected") {
        for (std::size_t b = 1; b < G.lines.size(); ++b)
            if (!G.lines_disjoint(0, static_cast<int>(b))) {
                REQUIRE_THROWS_AS(from_disjoint_lines(G, {0, static_cast<int>(b)}),
                                  std::invalid_argument);
                return;
            }
        FAIL("no meeting line found");
    }
    SECTION("a full spread gives x = q^2 + 1") {
        PartialSpread sp = greedy_partial_spread(G, 0);
        REQUIRE(sp.lines.size() == 5);
        PointPlaneSystem s = from_disjoint_lines(G, sp.lines);
        REQUIRE(s.p0.count() == G.points.size());  // spread covers everything
        CLCandidate c = from_pg3(M, s);
        REQUIRE(parameter_of(c) == 5);
        REQUIRE(verify_all(c).all_pass());
    }
}

TEST_CASE("disjoint line unions at q = 3, all x") {
    const auto& I = fixtures::q3();
    const Geometry& G = *I.geom;
    const KleinModel& M = *I.klein;
    PartialSpread sp = greedy_partial_spread(G, 0);
    REQUIRE(sp.lines.size() == 10);  // full spread
    for (std::size_t x = 1; x <= sp.lines.size(); ++x) {
        std::vector<int> pick(sp.lines.begin(), sp.lines.begin() + x);
        CLCandidate c = from_pg3(M, from_disjoint_lines(G, pick));
        REQUIRE(parameter_of(c) == static_cast<long long>(x));
        REQUIRE(check_disjointness(c).pass);
        REQUIRE(check_intersection_numbers(c).pass);
    }
}

TEST_CASE("greedy partial spreads") {
    const auto& I3 = fixtures::q3();
    SECTION("deterministic for a fixed seed") {
        PartialSpread a = greedy_partial_spread(*I3.geom, 17);
        PartialSpread b = greedy_partial_spread(*I3.geom, 17);
        REQUIRE(a.lines == b.lines);
    }
    SECTION("frozen outcomes") {
        REQUIRE(greedy_partial_spread(*fixtures::q2().geom, 0).lines.size() == 5);
        PartialSpread full = greedy_partial_spread(*I3.geom, 0);
        REQUIRE(full.lines.size() == 10);
        REQUIRE(full.maximality == Maximality::Maximal);
        PartialSpread seven = greedy_partial_spread(*I3.geom, 2);
        REQUIRE(seven.lines.size() == 7);
        REQUIRE(seven.maximality == Maximality::Maximal);
        REQUIRE(is_maximal(*I3.geom, seven));
    }
    SECTION("stop_size leaves maximality unknown") {
        PartialSpread s = greedy_partial_spread(*I3.geom, 0, 3);
        REQUIRE(s.lines.size() == 3);
        REQUIRE(s.maximality == Maximality::Unknown);
        REQUIRE_FALSE(is_maximal(*I3.geom, s));
        REQUIRE(s.maximality == Maximality::Extendable);
    }
}

TEST_CASE("spread holes") {
    const auto& I = fixtures::q3();
    const Geometry& G = *I.geom;
    const KleinModel& M = *I.klein;
    SECTION("complement identity") {
        PartialSpread sp = greedy_partial_spread(G, 0, 4);
        PointPlaneSystem covered = from_disjoint_lines(G, sp.lines);
        PointPlaneSystem holes = holes_construction(G, sp);
        REQUIRE(holes.p0.count() + covered.p0.count() == G.points.size());
        REQUIRE(holes.p2.count() + covered.p2.count() == G.planes.size());
        REQUIRE_FALSE(holes.p0.intersects(covered.p0));
        CLCandidate c = from_pg3(M, holes);
        REQUIRE(parameter_of(c) == 10 - 4);
        REQUIRE(check_disjointness(c).pass);
    }
    SECTION("holes of a maximal non-full spread pass but do not decompose") {
        PartialSpread seven = greedy_partial_spread(G, 2);
        REQUIRE(seven.lines.size() == 7);
        CLCandidate c = from_pg3(M, holes_construction(G, seven));
        REQUIRE(parameter_of(c) == 3);
        REQUIRE(verify_all(c).all_pass());
        // No pencil fits inside: its vertex line would extend the spread.
        for (std::size_t p = 0; p < M.quadric_points().size(); ++p)
            REQUIRE_FALSE(M.point_pencil(static_cast<int>(p)).subset_of(c.members));
    }
}

TEST_CASE("baer subgeometry over PG(3,4)") {
    const auto& I = fixtures::q4();
    const Geometry& G = *I.geom;
    const KleinModel& M = *I.klein;
    PointPlaneSystem s = baer_construction(G);
    REQUIRE(s.p0.count() == 15);  // theta_3(2)
    REQUIRE(s.p2.count() == 15);
    CLCandidate c = from_pg3(M, s);
    REQUIRE(parameter_of(c) == 3);  // q + 1 with q = 2 the subfield order
    REQUIRE(verify_all(c).all_pass());
    REQUIRE(plane_section_sizes(s) == std::set<long long>{3, 7});
    // A point off the subgeometry lies on exactly x planes of P2.
    for (std::size_t p = 0; p < G.points.size(); ++p)
        if (!s.p0.test(p)) {
            REQUIRE(G.point_planes[p].count_and(s.p2) == 3);
            break;
        }
    // The wrong tower degree is refused.
    REQUIRE_THROWS_AS(baer_construction(*fixtures::q2().geom), std::invalid_argument);
}

TEST_CASE("linear sets") {
    SECTION("rank and scatteredness at t = 2") {
        const auto& I = fixtures::q4();
        const Field& F = *I.field;
        LinearSetSpec spec = canonical_subgeometry_spec(F);
        REQUIRE(detail::subfield_rank(spec) == 4);
        REQUIRE(scattered_test(spec));
        auto pts = linear_set_points(spec);
        REQUIRE(pts.size() == 15);  // (q^4-1)/(q-1) with q = 2
        // Identical to the subfield-representative description.
        for (const Vec& v : pts) REQUIRE(has_subfield_representative(F, v));
        PointPlaneSystem lin = linear_set_construction(*I.geom, spec);
        PointPlaneSystem baer = baer_construction(*I.geom);
        REQUIRE(lin.p0 == baer.p0);
        REQUIRE(lin.p2 == baer.p2);
    }
    SECTION("dependent basis is rejected") {
        const auto& I = fixtures::q4();
        LinearSetSpec spec = canonical_subgeometry_spec(*I.field);
        spec.basis[3] = spec.basis[0];
        REQUIRE_THROWS_AS(linear_set_points(spec), std::invalid_argument);
    }
    SECTION("scattered set at t = 3 over PG(3,8)") {
        const auto& I = fixtures::q8();
        const Field& F = *I.field;
        LinearSetSpec spec = find_scattered_spec(F, 7);
        auto pts = linear_set_points(spec);
        REQUIRE(pts.size() == 63);  // (q^6-1)/(q-1) with q = 2
        PointPlaneSystem s = linear_set_construction(*I.geom, spec);
        REQUIRE(s.p0.count() == 63);
        REQUIRE(plane_section_sizes(s) == std::set<long long>{7, 15});
        CLCandidate c = from_pg3(*I.klein, s);
        REQUIRE(parameter_of(c) == 7);
        REQUIRE(check_disjointness(c).pass);
        REQUIRE(check_property31(s, 7).pass);
    }
}

TEST_CASE("projected subgeometry over PG(3,8)") {
    const auto& I = fixtures::q8();
    const Geometry& G = *I.geom;
    ProjectedResult res = projected_pg5_construction(G, 1);
    REQUIRE(res.system.p0.count() == 63);  // theta_5(2), projected injectively
    REQUIRE(res.projection_line.pdim() == 1);
    REQUIRE(res.trials >= 1);
    REQUIRE(plane_section_sizes(res.system) == std::set<long long>{7, 15});
    CLCandidate c = from_pg3(*I.klein, res.system);
    REQUIRE(parameter_of(c) == 7);
    REQUIRE(check_disjointness(c).pass);
    REQUIRE(check_intersection_numbers(c).pass);
    REQUIRE(check_property31(res.system, 7).pass);
    // Wrong tower degree is refused.
    REQUIRE_THROWS_AS(projected_pg5_construction(*fixtures::q4().geom, 1), std::invalid_argument);
}
