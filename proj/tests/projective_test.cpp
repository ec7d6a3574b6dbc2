#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "kleincl/projective.hpp"

using namespace kleincl;

TEST_CASE("gaussian binomials") {
    REQUIRE(gaussian_binomial(4, 2, 2) == 35);
    REQUIRE(gaussian_binomial(4, 1, 2) == 15);
    REQUIRE(gaussian_binomial(4, 3, 2) == 15);
    REQUIRE(gaussian_binomial(6, 3, 2) == 1395);
    REQUIRE(gaussian_binomial(4, 2, 3) == 130);
    REQUIRE(gaussian_binomial(5, 0, 7) == 1);
    REQUIRE(gaussian_binomial(3, 4, 2) == 0);
    REQUIRE(gaussian_binomial(-1, 0, 2) == 0);
    REQUIRE(theta(3, 2) == 15);
    REQUIRE(theta(3, 3) == 40);
    REQUIRE(theta(5, 8) == 37449);
}

TEST_CASE("enumeration counts match the closed forms") {
    for (unsigned q : {2u, 3u}) {
        Field F(q, 1, 1);
        auto pts = enumerate_points(F, 3);
        auto lines = enumerate_subspaces(F, 3, 2);
        auto planes = enumerate_subspaces(F, 3, 3);
        REQUIRE(static_cast<long long>(pts.size()) == theta(3, q));
        REQUIRE(static_cast<long long>(lines.size()) == gaussian_binomial(4, 2, q));
        REQUIRE(static_cast<long long>(planes.size()) == gaussian_binomial(4, 3, q));
        // Canonical order and uniqueness.
        REQUIRE(std::is_sorted(pts.begin(), pts.end()));
        REQUIRE(std::adjacent_find(lines.begin(), lines.end()) == lines.end());
        REQUIRE(std::is_sorted(lines.begin(), lines.end()));
    }
    Field F2(2, 1, 1);
    REQUIRE(enumerate_subspaces(F2, 5, 3).size() == 1395);  // planes of PG(5,2)
}

TEST_CASE("span, meet and containment") {
    Field F(2, 1, 1);
    Subspace l = span(F, {Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}}, 4);
    REQUIRE(l.pdim() == 1);
    REQUIRE(contains(F, l, Vec{1, 1, 0, 0}));
    REQUIRE_FALSE(contains(F, l, Vec{0, 0, 1, 0}));

    Subspace m = span(F, {Vec{0, 1, 0, 0}, Vec{0, 0, 1, 0}}, 4);
    Subspace mt = meet(F, l, m);
    REQUIRE(mt.pdim() == 0);
    REQUIRE(mt.rows[0] == Vec{0, 1, 0, 0});

    Subspace skew = span(F, {Vec{0, 0, 1, 0}, Vec{0, 0, 0, 1}}, 4);
    REQUIRE(meet(F, l, skew).pdim() == -1);
}

TEST_CASE("modular dimension law, randomized") {
    Field F(3, 1, 1);
    std::mt19937 rng(11);
    std::uniform_int_distribution<Elem> d(0, 2);
    std::uniform_int_distribution<int> nrows(1, 3);
    auto random_subspace = [&]() {
        std::vector<Vec> rows;
        int k = nrows(rng);
        for (int i = 0; i < k; ++i) {
            Vec v(4);
            for (auto& x : v) x = d(rng);
            rows.push_back(std::move(v));
        }
        return rref(F, std::move(rows), 4);
    };
    for (int it = 0; it < 300; ++it) {
        Subspace a = random_subspace(), b = random_subspace();
        Subspace sp = span(F, a, b), mt = meet(F, a, b);
        REQUIRE(sp.rank() + mt.rank() == a.rank() + b.rank());
        // The meet lies in both operands.
        for (const Vec& r : mt.rows) {
            REQUIRE(contains(F, a, r));
            REQUIRE(contains(F, b, r));
        }
    }
}

TEST_CASE("duality") {
    Field F(2, 1, 1);
    auto pts = enumerate_points(F, 3);
    auto planes = enumerate_subspaces(F, 3, 3);
    SECTION("involution") {
        for (const auto& pl : planes) REQUIRE(dual(F, dual(F, pl)) == pl);
    }
    SECTION("point-plane incidence count is preserved") {
        // Each plane's dual is a point; each point lies on 7 planes and each
        // plane holds 7 points in PG(3,2).
        long long flags = 0;
        for (const auto& pl : planes)
            for (const auto& p : pts)
                if (contains(F, pl, p)) ++flags;
        REQUIRE(flags == 15 * 7);
        long long dual_flags = 0;
        for (const auto& pl : planes) {
            Subspace dp = dual(F, pl);
            REQUIRE(dp.pdim() == 0);
            for (const auto& other : planes)
                if (contains(F, other, dp.rows[0])) ++dual_flags;
        }
        REQUIRE(dual_flags == 15 * 7);
    }
}

TEST_CASE("canonical RREF form is basis independent") {
    Field F(3, 1, 1);
    std::mt19937 rng(5);
    auto lines = enumerate_subspaces(F, 3, 2);
    std::uniform_int_distribution<Elem> scalar(1, 2);
    for (const auto& l : lines) {
        // Replace the basis by random invertible combinations; rref recovers
        // the stored canonical form.
        Vec a = l.rows[0], b = l.rows[1];
        Vec u(4), v(4);
        Elem s = scalar(rng), t = scalar(rng);
        for (unsigned k = 0; k < 4; ++k) {
            u[k] = F.add(F.mul(s, a[k]), b[k]);
            v[k] = F.mul(t, a[k]);
        }
        REQUIRE(rref(F, {u, v}, 4) == l);
    }
}

TEST_CASE("geometry incidence tables") {
    Field F(2, 1, 1);
    Geometry G(F);
    REQUIRE(G.points.size() == 15);
    REQUIRE(G.lines.size() == 35);
    REQUIRE(G.planes.size() == 15);
    for (std::size_t l = 0; l < G.lines.size(); ++l) {
        REQUIRE(G.line_points[l].count() == 3);   // q+1 points per line
        REQUIRE(G.line_planes[l].count() == 3);   // q+1 planes per line
    }
    for (std::size_t p = 0; p < G.points.size(); ++p) REQUIRE(G.point_planes[p].count() == 7);
    for (std::size_t pl = 0; pl < G.planes.size(); ++pl) REQUIRE(G.plane_points[pl].count() == 7);
    // Disjointness agrees with meet().
    for (std::size_t a = 0; a < G.lines.size(); ++a)
        for (std::size_t b = a + 1; b < G.lines.size(); ++b)
            REQUIRE(G.lines_disjoint(static_cast<int>(a), static_cast<int>(b)) ==
                    (meet(F, G.lines[a], G.lines[b]).pdim() == -1));
    SECTION("size budget is enforced") {
        REQUIRE_THROWS_AS(Geometry(F, 10), std::runtime_error);
    }
}

TEST_CASE("normalize_point") {
    Field F(3, 1, 1);
    REQUIRE(normalize_point(F, Vec{2, 1, 0, 2}) == Vec{1, 2, 0, 1});
    REQUIRE(normalize_point(F, Vec{0, 0, 2, 1}) == Vec{0, 0, 1, 2});
    REQUIRE_THROWS_AS(normalize_point(F, Vec{0, 0, 0, 0}), std::invalid_argument);
}
