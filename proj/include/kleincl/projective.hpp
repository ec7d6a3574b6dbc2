#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "kleincl/bits.hpp"
#include "kleincl/field.hpp"

namespace kleincl {

using Vec = std::vector<Elem>;  // coordinate vector over the working field

/// Gaussian binomial [n k]_q as an exact integer; 0 outside 0 <= k <= n.
inline long long gaussian_binomial(long long n, long long k, long long q) {
    if (k < 0 || n < 0 || k > n) return 0;
    __int128 r = 1;
    for (long long i = 1; i <= k; ++i) {
        __int128 num = 1, den = 1;
        for (long long j = 0; j < n - k + i; ++j) num *= q;
        for (long long j = 0; j < i; ++j) den *= q;
        r = r * (num - 1) / (den - 1);
    }
    return static_cast<long long>(r);
}

/// theta_n(q) = number of points of PG(n,q).
inline long long theta(long long n, long long q) { return gaussian_binomial(n + 1, 1, q); }

/// A subspace of PG(n,q) held as its unique reduced row-echelon basis,
/// k rows by cols columns (projective dimension k-1). The empty subspace
/// has no rows. Row data doubles as the canonical sort key.
struct Subspace {
    unsigned cols = 0;
    std::vector<Vec> rows;

    unsigned rank() const { return static_cast<unsigned>(rows.size()); }
    int pdim() const { return static_cast<int>(rows.size()) - 1; }

    bool operator==(const Subspace& o) const { return cols == o.cols && rows == o.rows; }
    bool operator<(const Subspace& o) const {
        if (rows.size() != o.rows.size()) return rows.size() < o.rows.size();
        return rows < o.rows;
    }
};

/// In-place reduction of a stack of vectors to the canonical RREF basis.
inline Subspace rref(const Field& F, std::vector<Vec> rows, unsigned cols) {
    std::size_t r = 0;
    for (unsigned c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        Elem lead_inv = F.inv(rows[r][c]);
        for (unsigned j = c; j < cols; ++j) rows[r][j] = F.mul(rows[r][j], lead_inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Elem f = rows[i][c];
            for (unsigned j = c; j < cols; ++j)
                rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
        }
        ++r;
    }
    rows.resize(r);
    return Subspace{cols, std::move(rows)};
}

inline Subspace span(const Field& F, const std::vector<Vec>& pts, unsigned cols) {
    return rref(F, pts, cols);
}

inline Subspace span(const Field& F, const Subspace& a, const Subspace& b) {
    std::vector<Vec> rows = a.rows;
    rows.insert(rows.end(), b.rows.begin(), b.rows.end());
    return rref(F, std::move(rows), a.cols);
}

/// Nullspace of the row space (right kernel), canonicalized; this is the
/// orthogonal complement under the standard bilinear form sum x_i y_i.
inline Subspace orthogonal(const Field& F, const Subspace& s) {
    const unsigned n = s.cols;
    // Pivot columns of the RREF.
    std::vector<int> pivot_of_col(n, -1);
    for (unsigned r = 0; r < s.rank(); ++r) {
        unsigned c = 0;
        while (s.rows[r][c] == 0) ++c;
        pivot_of_col[c] = static_cast<int>(r);
    }
    std::vector<Vec> basis;
    for (unsigned fc = 0; fc < n; ++fc) {
        if (pivot_of_col[fc] >= 0) continue;
        Vec v(n, 0);
        v[fc] = 1;
        for (unsigned c = 0; c < n; ++c)
            if (pivot_of_col[c] >= 0) v[c] = F.neg(s.rows[pivot_of_col[c]][fc]);
        basis.push_back(std::move(v));
    }
    return rref(F, std::move(basis), n);
}

/// dual(s) under the standard form; dual(dual(s)) = s, incidence reverses.
inline Subspace dual(const Field& F, const Subspace& s) { return orthogonal(F, s); }

/// Intersection of two subspaces of the same ambient space.
inline Subspace meet(const Field& F, const Subspace& a, const Subspace& b) {
    return orthogonal(F, span(F, orthogonal(F, a), orthogonal(F, b)));
}

/// Row-space membership of a (nonzero) vector.
inline bool contains(const Field& F, const Subspace& s, Vec v) {
    for (const auto& row : s.rows) {
        unsigned c = 0;
        while (row[c] == 0) ++c;
        if (v[c] != 0) {
            Elem f = v[c];
            for (unsigned j = c; j < s.cols; ++j) v[j] = F.sub(v[j], F.mul(f, row[j]));
        }
    }
    for (Elem x : v)
        if (x != 0) return false;
    return true;
}

/// Projective normalization: scale so the first nonzero coordinate is 1.
inline Vec normalize_point(const Field& F, Vec v) {
    for (Elem x : v)
        if (x != 0) {
            Elem s = F.inv(x);
            for (auto& y : v) y = F.mul(y, s);
            return v;
        }
    throw std::invalid_argument("zero vector is not a projective point");
}

/// All points of PG(n,q), normalized, in lexicographic coordinate order.
inline std::vector<Vec> enumerate_points(const Field& F, unsigned n) {
    const unsigned cols = n + 1;
    std::vector<Vec> pts;
    // Representatives: leading 1 at position l, zeros before, free after.
    for (unsigned l = 0; l < cols; ++l) {
        unsigned free = cols - l - 1;
        unsigned long long total = 1;
        for (unsigned i = 0; i < free; ++i) total *= F.order();
        for (unsigned long long code = 0; code < total; ++code) {
            Vec v(cols, 0);
            v[l] = 1;
            unsigned long long c = code;
            for (unsigned i = l + 1; i < cols; ++i) {
                v[i] = static_cast<Elem>(c % F.order());
                c /= F.order();
            }
            pts.push_back(std::move(v));
        }
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

/// All k-dimensional row spaces (projective (k-1)-subspaces) of PG(n,q),
/// each exactly once in canonical RREF form, sorted. Count = [n+1 k]_q.
inline std::vector<Subspace> enumerate_subspaces(const Field& F, unsigned n, unsigned k) {
    const unsigned cols = n + 1;
    if (k < 1 || k > cols) throw std::invalid_argument("subspace rank out of range");
    std::vector<Subspace> out;
    std::vector<unsigned> piv(k);
    // Iterate over pivot-column combinations.
    for (unsigned i = 0; i < k; ++i) piv[i] = i;
    while (true) {
        // Free positions: entries (r, c) with c > piv[r], c not a pivot column.
        std::vector<std::pair<unsigned, unsigned>> free_pos;
        for (unsigned r = 0; r < k; ++r)
            for (unsigned c = piv[r] + 1; c < cols; ++c)
                if (std::find(piv.begin(), piv.end(), c) == piv.end()) free_pos.emplace_back(r, c);
        unsigned long long total = 1;
        for (std::size_t i = 0; i < free_pos.size(); ++i) total *= F.order();
        for (unsigned long long code = 0; code < total; ++code) {
            Subspace s;
            s.cols = cols;
            s.rows.assign(k, Vec(cols, 0));
            for (unsigned r = 0; r < k; ++r) s.rows[r][piv[r]] = 1;
            unsigned long long c = code;
            for (auto [r, col] : free_pos) {
                s.rows[r][col] = static_cast<Elem>(c % F.order());
                c /= F.order();
            }
            out.push_back(std::move(s));
        }
        // Next combination.
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && piv[i] == cols - k + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (unsigned j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Enumerated PG(3,q) with incidence bitmaps. Immutable after construction.
struct Geometry {
    const Field* F = nullptr;
    unsigned n = 3;
    std::vector<Vec> points;
    std::vector<Subspace> lines;
    std::vector<Subspace> planes;
    std::map<Vec, int> point_index;
    std::map<Subspace, int> line_index;
    std::map<Subspace, int> plane_index;

    std::vector<Bitset> line_points;   // per line: points on it
    std::vector<Bitset> plane_points;  // per plane: points on it
    std::vector<Bitset> point_planes;  // per point: planes through it
    std::vector<Bitset> line_planes;   // per line: planes containing it

    Geometry(const Field& field, std::size_t max_points = 200000) : F(&field) {
        const long long np = theta(3, F->order());
        if (np > static_cast<long long>(max_points))
            throw std::runtime_error("geometry exceeds the configured size budget (" +
                                     std::to_string(np) + " points)");
        points = enumerate_points(*F, 3);
        lines = enumerate_subspaces(*F, 3, 2);
        planes = enumerate_subspaces(*F, 3, 3);
        for (std::size_t i = 0; i < points.size(); ++i) point_index[points[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < lines.size(); ++i) line_index[lines[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < planes.size(); ++i) plane_index[planes[i]] = static_cast<int>(i);

        line_points.assign(lines.size(), Bitset(points.size()));
        plane_points.assign(planes.size(), Bitset(points.size()));
        point_planes.assign(points.size(), Bitset(planes.size()));
        for (std::size_t p = 0; p < points.size(); ++p) {
            for (std::size_t l = 0; l < lines.size(); ++l)
                if (contains(*F, lines[l], points[p])) line_points[l].set(p);
            for (std::size_t pl = 0; pl < planes.size(); ++pl)
                if (contains(*F, planes[pl], points[p])) {
                    plane_points[pl].set(p);
                    point_planes[p].set(pl);
                }
        }
        line_planes.assign(lines.size(), Bitset(planes.size()));
        for (std::size_t l = 0; l < lines.size(); ++l)
            for (std::size_t pl = 0; pl < planes.size(); ++pl)
                if (line_points[l].subset_of(plane_points[pl])) line_planes[l].set(pl);
    }

    bool lines_disjoint(int a, int b) const { return !line_points[a].intersects(line_points[b]); }
};

}  // namespace kleincl
