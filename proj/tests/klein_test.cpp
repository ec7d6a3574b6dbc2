#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace kleincl;

TEST_CASE("pluecker coordinates, worked examples") {
    const auto& I = fixtures::q2();
    const Field& F = *I.field;
    Subspace l1 = span(F, {Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}}, 4);
    REQUIRE(pluecker(F, l1) == Vec{1, 0, 0, 0, 0, 0});
    Subspace l2 = span(F, {Vec{1, 0, 0, 0}, Vec{0, 1, 1, 1}}, 4);
    REQUIRE(pluecker(F, l2) == Vec{1, 1, 1, 0, 0, 0});
    Subspace not_a_line = span(F, {Vec{1, 0, 0, 0}}, 4);
    REQUIRE_THROWS_AS(pluecker(F, not_a_line), std::invalid_argument);
}

TEST_CASE("line <-> quadric point bijection") {
    for (const auto* I : {&fixtures::q2(), &fixtures::q3()}) {
        const Geometry& G = *I->geom;
        const KleinModel& M = *I->klein;
        REQUIRE(M.quadric_points().size() == G.lines.size());
        std::vector<bool> hit(M.quadric_points().size(), false);
        for (std::size_t l = 0; l < G.lines.size(); ++l) {
            int qp = M.line_to_quadric_point(static_cast<int>(l));
            REQUIRE(!hit[qp]);
            hit[qp] = true;
            REQUIRE(M.klein_inverse(qp) == G.lines[l]);
            // Vec overload roundtrip.
            REQUIRE(M.klein_inverse(M.quadric_points()[qp]) == G.lines[l]);
        }
    }
    REQUIRE_THROWS_AS(fixtures::q2().klein->klein_inverse(Vec{1, 0, 0, 0, 0, 1}),
                      std::invalid_argument);
}

TEST_CASE("quadric point counts match (q+1)(q^2+1)theta_1") {
    // |Q+(5,q)| = (q^2+1)(q^2+q+1)
    for (auto [p, h, t, expect] : std::vector<std::array<long long, 4>>{
             {2, 1, 1, 35}, {3, 1, 1, 130}, {2, 1, 2, 357}}) {
        const auto& I = fixtures::instance(static_cast<unsigned>(p), static_cast<unsigned>(h),
                                           static_cast<unsigned>(t));
        long long q = I.field->order();
        REQUIRE(static_cast<long long>(I.klein->quadric_points().size()) == expect);
        REQUIRE(expect == (q * q + 1) * (q * q + q + 1));
        REQUIRE(static_cast<long long>(I.klein->num_generators()) == 2 * (q * q + 1) * (q + 1));
    }
}

TEST_CASE("generator families") {
    for (const auto* I : {&fixtures::q2(), &fixtures::q3()}) {
        const Geometry& G = *I->geom;
        const KleinModel& M = *I->klein;
        const unsigned q = I->field->order();
        std::size_t latin = 0, greek = 0;
        for (const auto& g : M.generators()) {
            (g.cls == GenClass::Latin ? latin : greek)++;
            REQUIRE(g.qpoints.count() == q * q + q + 1);  // a plane's worth of points
        }
        REQUIRE(latin == G.points.size());
        REQUIRE(greek == G.planes.size());
        // Index maps are consistent.
        for (std::size_t p = 0; p < G.points.size(); ++p) {
            int g = M.latin_of_point(static_cast<int>(p));
            REQUIRE(M.generators()[g].origin == static_cast<int>(p));
            REQUIRE(M.generators()[g].cls == GenClass::Latin);
            REQUIRE(M.generator_index(M.generators()[g].plane) == g);
        }
        for (std::size_t pl = 0; pl < G.planes.size(); ++pl) {
            int g = M.greek_of_plane(static_cast<int>(pl));
            REQUIRE(M.generators()[g].origin == static_cast<int>(pl));
            REQUIRE(M.generators()[g].cls == GenClass::Greek);
        }
    }
}

TEST_CASE("meeting rules against an independent subspace oracle") {
    const auto& I = fixtures::q2();
    const Field& F = *I.field;
    const KleinModel& M = *I.klein;
    const std::size_t n = M.num_generators();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            int d = meet(F, M.generators()[a].plane, M.generators()[b].plane).pdim();
            REQUIRE(M.meet_dim(static_cast<int>(a), static_cast<int>(b)) == d);
            REQUIRE(M.disjoint_from(a).test(b) == (d == -1));
            // Same class meets in a point (or everything), opposite class in
            // a line or not at all.
            bool same = M.generators()[a].cls == M.generators()[b].cls;
            if (a == b) REQUIRE(d == 2);
            else if (same) REQUIRE(d == 0);
            else REQUIRE((d == 1 || d == -1));
        }
}

TEST_CASE("point pencils") {
    for (const auto* I : {&fixtures::q2(), &fixtures::q3()}) {
        const Geometry& G = *I->geom;
        const KleinModel& M = *I->klein;
        const unsigned q = I->field->order();
        for (std::size_t p = 0; p < M.quadric_points().size(); ++p) {
            const Bitset& pen = M.point_pencil(static_cast<int>(p));
            REQUIRE(pen.count() == 2 * (q + 1));
            std::size_t latin = 0;
            pen.for_each([&](std::size_t g) {
                if (M.generators()[g].cls == GenClass::Latin) ++latin;
                REQUIRE(M.generators()[g].qpoints.test(p));
            });
            REQUIRE(latin == q + 1);
            // Dictionary equivalence: the pencil of a quadric point consists
            // of the stars of the points of the corresponding line and the
            // line sets of the planes through it.
            int l = G.line_index.at(M.klein_inverse(static_cast<int>(p)));
            Bitset expect(M.num_generators());
            G.line_points[l].for_each([&](std::size_t pt) { expect.set(M.latin_of_point(static_cast<int>(pt))); });
            G.line_planes[l].for_each([&](std::size_t pl) { expect.set(M.greek_of_plane(static_cast<int>(pl))); });
            REQUIRE(pen == expect);
        }
    }
}

TEST_CASE("pencils of non-collinear quadric points are disjoint enough") {
    const auto& I = fixtures::q2();
    const Geometry& G = *I.geom;
    const KleinModel& M = *I.klein;
    // Two pencils share a generator iff the two PG(3,2) lines meet.
    for (std::size_t a = 0; a < M.quadric_points().size(); ++a)
        for (std::size_t b = a + 1; b < M.quadric_points().size(); ++b) {
            int la = G.line_index.at(M.klein_inverse(static_cast<int>(a)));
            int lb = G.line_index.at(M.klein_inverse(static_cast<int>(b)));
            bool share = M.point_pencil(static_cast<int>(a)).intersects(M.point_pencil(static_cast<int>(b)));
            REQUIRE(share == !G.lines_disjoint(la, lb));
        }
}

TEST_CASE("quadric lines lie on one generator per class") {
    const auto& I = fixtures::q2();
    const Field& F = *I.field;
    const KleinModel& M = *I.klein;
    // Totally singular lines of Q+(5,2); there are 105 of them, each on
    // exactly one Latin and one Greek generator.
    auto lines5 = enumerate_subspaces(F, 5, 2);
    long long singular = 0;
    for (const auto& l : lines5) {
        bool ts = true;
        // All q+1 = 3 points must satisfy the form.
        for (const Vec& combo : {l.rows[0], l.rows[1],
                                 [&] { Vec v(6); for (unsigned k = 0; k < 6; ++k) v[k] = F.add(l.rows[0][k], l.rows[1][k]); return v; }()})
            if (quadric_form(F, combo) != 0) { ts = false; break; }
        if (!ts) continue;
        ++singular;
        int latin = 0, greek = 0;
        for (const auto& g : M.generators())
            if (meet(F, g.plane, l).pdim() == 1)
                (g.cls == GenClass::Latin ? latin : greek)++;
        REQUIRE(latin == 1);
        REQUIRE(greek == 1);
    }
    REQUIRE(singular == 105);
}

TEST_CASE("dictionary commutes with incidence") {
    for (const auto* I : {&fixtures::q2(), &fixtures::q3()}) {
        const Geometry& G = *I->geom;
        const KleinModel& M = *I->klein;
        for (std::size_t l = 0; l < G.lines.size(); ++l) {
            int qp = M.line_to_quadric_point(static_cast<int>(l));
            for (std::size_t p = 0; p < G.points.size(); ++p)
                REQUIRE(G.line_points[l].test(p) ==
                        M.generators()[M.latin_of_point(static_cast<int>(p))].qpoints.test(qp));
            for (std::size_t pl = 0; pl < G.planes.size(); ++pl)
                REQUIRE(G.line_planes[l].test(pl) ==
                        M.generators()[M.greek_of_plane(static_cast<int>(pl))].qpoints.test(qp));
        }
    }
}
