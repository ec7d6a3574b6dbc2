#pragma once

#include <array>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "kleincl/cl.hpp"
#include "kleincl/klein.hpp"

namespace kleincl {

// ---------------------------------------------------------------- spreads

enum class Maximality : std::uint8_t { Unknown, Maximal, Extendable };

/// A set of pairwise disjoint lines of PG(3,q).
struct PartialSpread {
    std::vector<int> lines;
    Maximality maximality = Maximality::Unknown;
};

/// Union of x pairwise disjoint lines: P0 = their points, P2 = the planes
/// containing at least one of them. Corresponds to a union of x pencils.
inline PointPlaneSystem from_disjoint_lines(const Geometry& G, const std::vector<int>& lines) {
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            if (!G.lines_disjoint(lines[i], lines[j]))
                throw std::invalid_argument("lines " + std::to_string(lines[i]) + " and " +
                                            std::to_string(lines[j]) + " meet");
    PointPlaneSystem s(G);
    for (int l : lines) {
        s.p0 |= G.line_points[l];
        s.p2 |= G.line_planes[l];
    }
    return s;
}

/// Greedy partial spread: first-fit over the canonical line order (seed 0)
/// or a seeded shuffle of it. A full pass with no stop_size certifies
/// maximality, since a line rejected once stays blocked.
inline PartialSpread greedy_partial_spread(const Geometry& G, unsigned seed,
                                           std::optional<std::size_t> stop_size = std::nullopt) {
    std::vector<int> order(G.lines.size());
    std::iota(order.begin(), order.end(), 0);
    if (seed != 0) {
        std::mt19937 rng(seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    PartialSpread s;
    Bitset covered(G.points.size());
    for (int l : order) {
        if (stop_size && s.lines.size() >= *stop_size) break;
        if (!covered.intersects(G.line_points[l])) {
            s.lines.push_back(l);
            covered |= G.line_points[l];
        }
    }
    s.maximality = stop_size && s.lines.size() >= *stop_size ? Maximality::Unknown : Maximality::Maximal;
    return s;
}

/// True iff no line of PG(3,q) is disjoint from every member; sets the flag.
inline bool is_maximal(const Geometry& G, PartialSpread& s) {
    Bitset covered(G.points.size());
    for (int l : s.lines) covered |= G.line_points[l];
    for (std::size_t l = 0; l < G.lines.size(); ++l)
        if (!covered.intersects(G.line_points[l])) {
            s.maximality = Maximality::Extendable;
            return false;
        }
    s.maximality = Maximality::Maximal;
    return true;
}

/// Hole-type system: P0 = points on no spread line, P2 = planes containing
/// no spread line. Exactly the complement of from_disjoint_lines(s).
inline PointPlaneSystem holes_construction(const Geometry& G, const PartialSpread& s) {
    PointPlaneSystem covered = from_disjoint_lines(G, s.lines);
    PointPlaneSystem out(G);
    for (std::size_t p = 0; p < G.points.size(); ++p)
        if (!covered.p0.test(p)) out.p0.set(p);
    for (std::size_t pl = 0; pl < G.planes.size(); ++pl)
        if (!covered.p2.test(pl)) out.p2.set(pl);
    return out;
}

// ------------------------------------------------------------- subfields

/// A projective point over GF(q^t) lies in the canonical subgeometry PG(n,q)
/// iff its normalized representative has all coordinates in GF(q).
inline bool has_subfield_representative(const Field& F, const Vec& normalized) {
    for (Elem c : normalized)
        if (!F.in_subfield(c)) return false;
    return true;
}

/// Baer subgeometry system over PG(3,q^2): P0 = subgeometry points, P2 =
/// planes whose dual point lies in the dual subgeometry. Parameter q+1.
inline PointPlaneSystem baer_construction(const Geometry& G) {
    const Field& F = *G.F;
    if (F.tower_degree() != 2)
        throw std::invalid_argument("baer construction needs a degree-2 field tower");
    PointPlaneSystem s(G);
    for (std::size_t p = 0; p < G.points.size(); ++p)
        if (has_subfield_representative(F, G.points[p])) s.p0.set(p);
    for (std::size_t pl = 0; pl < G.planes.size(); ++pl) {
        Subspace d = dual(F, G.planes[pl]);
        if (has_subfield_representative(F, normalize_point(F, d.rows[0]))) s.p2.set(pl);
    }
    return s;
}

// ------------------------------------------------------------ linear sets

/// A rank-2t GF(q)-subspace W of the 4-dimensional vector space over
/// GF(q^t), given by 2t spanning vectors.
struct LinearSetSpec {
    const Field* F = nullptr;  // the tower GF(q^t)
    std::vector<std::array<Elem, 4>> basis;  // 2t vectors
};

namespace detail {
/// GF(q)-rank of the spec's vectors, via expansion into length-4t vectors
/// over the subfield. Subfield elements are the constant indices < q.
inline unsigned subfield_rank(const LinearSetSpec& spec) {
    const Field& F = *spec.F;
    const unsigned t = F.tower_degree(), q = F.subfield_order();
    std::vector<Vec> rows;
    for (const auto& v : spec.basis) {
        Vec r(4 * t);
        for (unsigned c = 0; c < 4; ++c)
            for (unsigned i = 0; i < t; ++i) r[c * t + i] = F.coeff(v[c], i);
        rows.push_back(std::move(r));
    }
    // Eliminate with subfield arithmetic (closed on indices < q).
    unsigned rank = 0;
    for (unsigned c = 0; c < 4 * t && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        Elem li = F.inv(rows[rank][c]);
        for (unsigned j = c; j < 4 * t; ++j) rows[rank][j] = F.mul(rows[rank][j], li);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][c] == 0) continue;
            Elem f = rows[i][c];
            for (unsigned j = c; j < 4 * t; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[rank][j]));
        }
        ++rank;
    }
    (void)q;
    return rank;
}
}  // namespace detail

/// B(W): the projective points spanned by the nonzero vectors of W.
inline std::vector<Vec> linear_set_points(const LinearSetSpec& spec) {
    const Field& F = *spec.F;
    const unsigned q = F.subfield_order();
    const unsigned r = static_cast<unsigned>(spec.basis.size());
    if (detail::subfield_rank(spec) != r)
        throw std::invalid_argument("linear set basis is GF(q)-dependent");
    unsigned long long total = 1;
    for (unsigned i = 0; i < r; ++i) total *= q;
    std::vector<Vec> pts;
    for (unsigned long long code = 1; code < total; ++code) {
        Vec v(4, 0);
        unsigned long long c = code;
        for (unsigned i = 0; i < r; ++i) {
            Elem scalar = static_cast<Elem>(c % q);
            c /= q;
            if (scalar == 0) continue;
            for (unsigned k = 0; k < 4; ++k) v[k] = F.add(v[k], F.mul(scalar, spec.basis[i][k]));
        }
        pts.push_back(normalize_point(F, std::move(v)));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/// Scattered iff |B(W)| attains the maximum (q^{2t}-1)/(q-1).
inline bool scattered_test(const LinearSetSpec& spec) {
    const Field& F = *spec.F;
    const unsigned t = F.tower_degree();
    long long maxsize = (static_cast<long long>(F.order()) * F.order() - 1) / (F.subfield_order() - 1);
    (void)t;
    return static_cast<long long>(linear_set_points(spec).size()) == maxsize;
}

/// The canonical rank-4 spec at t = 2: W = <e0, e1, e2, e3> over GF(q),
/// whose linear set is the Baer subgeometry point set.
inline LinearSetSpec canonical_subgeometry_spec(const Field& F) {
    if (F.tower_degree() != 2)
        throw std::invalid_argument("no canonical spec for t != 2; use a seeded search");
    LinearSetSpec spec{&F, {}};
    for (unsigned k = 0; k < 4; ++k) {
        std::array<Elem, 4> v{0, 0, 0, 0};
        v[k] = 1;
        spec.basis.push_back(v);
    }
    return spec;
}

/// Seeded randomized search for a scattered rank-2t spec; restarts until
/// the scattered test accepts or the trial budget runs out.
inline LinearSetSpec find_scattered_spec(const Field& F, unsigned seed,
                                         unsigned long long trial_budget = 10000) {
    const unsigned t = F.tower_degree();
    std::mt19937 rng(seed);
    std::uniform_int_distribution<Elem> dist(0, F.order() - 1);
    for (unsigned long long trial = 0; trial < trial_budget; ++trial) {
        LinearSetSpec spec{&F, {}};
        for (unsigned i = 0; i < 2 * t; ++i)
            spec.basis.push_back({dist(rng), dist(rng), dist(rng), dist(rng)});
        if (detail::subfield_rank(spec) != 2 * t) continue;
        if (scattered_test(spec)) return spec;
    }
    throw std::runtime_error("scattered linear set search exhausted its trial budget");
}

/// Scattered-linear-set system: P0 = B(W), P2 = planes meeting P0 in
/// theta_t(q) points. Parameter (q^t-1)/(q-1).
inline PointPlaneSystem linear_set_construction(const Geometry& G, const LinearSetSpec& spec) {
    const Field& F = *G.F;
    if (!scattered_test(spec)) throw std::invalid_argument("linear set is not scattered");
    PointPlaneSystem s(G);
    for (const Vec& v : linear_set_points(spec)) s.p0.set(G.point_index.at(v));
    const long long heavy = theta(F.tower_degree(), F.subfield_order());
    for (std::size_t pl = 0; pl < G.planes.size(); ++pl)
        if (static_cast<long long>(G.plane_points[pl].count_and(s.p0)) == heavy) s.p2.set(pl);
    return s;
}

// ----------------------------------------------------- projected PG(5,q)

struct ProjectedResult {
    PointPlaneSystem system;
    Subspace projection_line;    // the line of PG(5,q^3) projected from
    unsigned long long trials = 0;
};

/// Projected-PG(5,q) system over PG(3,q^3): pick (seeded, with rejection) a
/// line skew to the subgeometry PG(5,q) whose conjugate span is the whole
/// space, project the subgeometry from it onto a coordinate solid, and read
/// off P0 and the heavy planes. Parameter q^2+q+1.
inline ProjectedResult projected_pg5_construction(const Geometry& G, unsigned seed,
                                                  unsigned long long trial_budget = 10000) {
    const Field& F = *G.F;
    if (F.tower_degree() != 3)
        throw std::invalid_argument("projected construction needs a degree-3 field tower");
    const unsigned q = F.subfield_order();

    // Subgeometry PG(5,q): normalized 6-vectors with subfield coordinates.
    std::vector<Vec> sub_points;
    for (unsigned l = 0; l < 6; ++l) {
        unsigned long long total = 1;
        for (unsigned i = 0; i < 5 - l; ++i) total *= q;
        for (unsigned long long code = 0; code < total; ++code) {
            Vec v(6, 0);
            v[l] = 1;
            unsigned long long c = code;
            for (unsigned i = l + 1; i < 6; ++i) {
                v[i] = static_cast<Elem>(c % q);
                c /= q;
            }
            sub_points.push_back(std::move(v));
        }
    }

    std::mt19937 rng(seed);
    std::uniform_int_distribution<Elem> dist(0, F.order() - 1);
    auto random_vec = [&]() {
        Vec v(6);
        bool nz = false;
        do {
            nz = false;
            for (auto& x : v) {
                x = dist(rng);
                nz |= (x != 0);
            }
        } while (!nz);
        return v;
    };

    for (unsigned long long trial = 1; trial <= trial_budget; ++trial) {
        Subspace line = rref(F, {random_vec(), random_vec()}, 6);
        if (line.pdim() != 1) continue;

        // Skew to the subgeometry: none of its q^3+1 points has a subfield
        // representative.
        bool skew = true;
        for (Elem b = 0; b < F.order() && skew; ++b) {
            Vec v(6);
            for (unsigned k = 0; k < 6; ++k) v[k] = F.add(line.rows[0][k], F.mul(b, line.rows[1][k]));
            if (has_subfield_representative(F, normalize_point(F, std::move(v)))) skew = false;
        }
        if (skew && has_subfield_representative(F, line.rows[1])) skew = false;
        if (!skew) continue;

        // <line, line^q, line^{q^2}> must be the whole space.
        std::vector<Vec> stack;
        for (unsigned k = 0; k < 3; ++k)
            for (const Vec& r : line.rows) {
                Vec c(6);
                for (unsigned j = 0; j < 6; ++j) c[j] = F.conjugate(r[j], k);
                stack.push_back(std::move(c));
            }
        if (rref(F, std::move(stack), 6).rank() != 6) continue;

        // Projection target: the coordinate solid {x_i = x_j = 0} for the
        // first column pair (i,j), canonical (4,5) first, on which the
        // line's basis has a nonzero 2x2 minor (then the solid avoids it).
        auto minor = [&](unsigned i, unsigned j) {
            return F.sub(F.mul(line.rows[0][i], line.rows[1][j]), F.mul(line.rows[0][j], line.rows[1][i]));
        };
        int di = -1, dj = -1;
        if (minor(4, 5) != 0) {
            di = 4;
            dj = 5;
        } else {
            for (unsigned i = 0; i < 6 && di < 0; ++i)
                for (unsigned j = i + 1; j < 6 && di < 0; ++j)
                    if (minor(i, j) != 0) {
                        di = static_cast<int>(i);
                        dj = static_cast<int>(j);
                    }
        }
        std::vector<Vec> solid_rows;
        for (unsigned k = 0; k < 6; ++k)
            if (static_cast<int>(k) != di && static_cast<int>(k) != dj) {
                Vec e(6, 0);
                e[k] = 1;
                solid_rows.push_back(std::move(e));
            }
        Subspace solid = rref(F, std::move(solid_rows), 6);

        // Project every subgeometry point: <line, P> meets the solid in one
        // point; drop the two deleted coordinates to land in PG(3,q^3).
        PointPlaneSystem sys(G);
        bool injective = true;
        std::size_t placed = 0;
        for (const Vec& P : sub_points) {
            std::vector<Vec> pr = line.rows;
            pr.push_back(P);
            Subspace plane = rref(F, std::move(pr), 6);
            Subspace img = meet(F, plane, solid);
            if (img.pdim() != 0) {
                injective = false;
                break;
            }
            Vec v4;
            for (unsigned k = 0; k < 6; ++k)
                if (static_cast<int>(k) != di && static_cast<int>(k) != dj) v4.push_back(img.rows[0][k]);
            v4 = normalize_point(F, std::move(v4));
            int idx = G.point_index.at(v4);
            if (sys.p0.test(idx)) {
                injective = false;
                break;
            }
            sys.p0.set(idx);
            ++placed;
        }
        if (!injective || placed != sub_points.size()) continue;

        const long long heavy = static_cast<long long>(F.order()) + theta(2, q);  // q^3 + q^2+q+1
        for (std::size_t pl = 0; pl < G.planes.size(); ++pl)
            if (static_cast<long long>(G.plane_points[pl].count_and(sys.p0)) == heavy) sys.p2.set(pl);
        return ProjectedResult{std::move(sys), std::move(line), trial};
    }
    throw std::runtime_error("projected construction exhausted its trial budget");
}

}  // namespace kleincl
