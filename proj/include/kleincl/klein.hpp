#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "kleincl/bits.hpp"
#include "kleincl/field.hpp"
#include "kleincl/projective.hpp"

namespace kleincl {

/// Evaluate the quadric form X0X5 + X1X4 + X2X3.
inline Elem quadric_form(const Field& F, const Vec& v) {
    Elem s = F.mul(v[0], v[5]);
    s = F.add(s, F.mul(v[1], v[4]));
    s = F.add(s, F.mul(v[2], v[3]));
    return s;
}

/// Pluecker coordinates (p01, p02, p03, p12, p31, p23) of a line of PG(3,q),
/// normalized as a projective point. Basis-independent.
inline Vec pluecker(const Field& F, const Subspace& line) {
    if (line.pdim() != 1) throw std::invalid_argument("pluecker: input is not a line");
    const Vec& x = line.rows[0];
    const Vec& y = line.rows[1];
    auto minor = [&](unsigned i, unsigned j) { return F.sub(F.mul(x[i], y[j]), F.mul(x[j], y[i])); };
    Vec p{minor(0, 1), minor(0, 2), minor(0, 3), minor(1, 2), minor(3, 1), minor(2, 3)};
    return normalize_point(F, std::move(p));
}

enum class GenClass : std::uint8_t { Latin, Greek };

/// One generator (totally singular plane) of the Klein quadric.
struct Generator {
    Subspace plane;     // 3x6 RREF in PG(5,q)
    GenClass cls;       // Latin <-> point of PG(3,q), Greek <-> plane
    int origin;         // index of that point/plane in the PG(3,q) geometry
    Bitset qpoints;     // quadric points lying on this generator
};

/// The Klein quadric Q+(5,q) over the geometry's field: quadric points, the
/// line <-> point dictionary, both generator families, and the pairwise
/// meeting-dimension table. All tables are immutable after construction.
class KleinModel {
public:
    explicit KleinModel(const Geometry& pg3) : G_(&pg3), F_(pg3.F) {
        const Field& F = *F_;
        // Quadric points, in canonical point order.
        for (const Vec& v : enumerate_points(F, 5))
            if (quadric_form(F, v) == 0) {
                qpoint_index_[v] = static_cast<int>(qpoints_.size());
                qpoints_.push_back(v);
            }

        // Klein correspondence: line index <-> quadric point index.
        line_to_qpoint_.resize(G_->lines.size());
        qpoint_to_line_.assign(qpoints_.size(), -1);
        for (std::size_t l = 0; l < G_->lines.size(); ++l) {
            auto it = qpoint_index_.find(pluecker(F, G_->lines[l]));
            if (it == qpoint_index_.end())
                throw std::logic_error("pluecker image off the quadric");
            line_to_qpoint_[l] = it->second;
            if (qpoint_to_line_[it->second] != -1)
                throw std::logic_error("pluecker map is not injective");
            qpoint_to_line_[it->second] = static_cast<int>(l);
        }

        // Generators via the dictionary: Latin = image of a line star,
        // Greek = image of a plane's line set. Canonical order afterwards.
        std::vector<Generator> gens;
        auto make_generator = [&](GenClass cls, int origin, const Bitset& line_set) {
            Generator g;
            g.cls = cls;
            g.origin = origin;
            g.qpoints = Bitset(qpoints_.size());
            std::vector<Vec> reps;
            line_set.for_each([&](std::size_t l) {
                int qp = line_to_qpoint_[l];
                g.qpoints.set(qp);
                reps.push_back(qpoints_[qp]);
            });
            g.plane = rref(F, std::move(reps), 6);
            if (g.plane.pdim() != 2) throw std::logic_error("generator is not a plane");
            for (const Vec& row : g.plane.rows)
                if (quadric_form(F, row) != 0) throw std::logic_error("generator not totally singular");
            gens.push_back(std::move(g));
        };
        for (std::size_t p = 0; p < G_->points.size(); ++p) {
            Bitset star(G_->lines.size());
            for (std::size_t l = 0; l < G_->lines.size(); ++l)
                if (G_->line_points[l].test(p)) star.set(l);
            make_generator(GenClass::Latin, static_cast<int>(p), star);
        }
        for (std::size_t pl = 0; pl < G_->planes.size(); ++pl) {
            Bitset inside(G_->lines.size());
            for (std::size_t l = 0; l < G_->lines.size(); ++l)
                if (G_->line_planes[l].test(pl)) inside.set(l);
            make_generator(GenClass::Greek, static_cast<int>(pl), inside);
        }
        std::sort(gens.begin(), gens.end(),
                  [](const Generator& a, const Generator& b) { return a.plane < b.plane; });
        gens_ = std::move(gens);

        latin_of_point_.assign(G_->points.size(), -1);
        greek_of_plane_.assign(G_->planes.size(), -1);
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            gen_index_[gens_[i].plane] = static_cast<int>(i);
            if (gens_[i].cls == GenClass::Latin)
                latin_of_point_[gens_[i].origin] = static_cast<int>(i);
            else
                greek_of_plane_[gens_[i].origin] = static_cast<int>(i);
        }

        // Meeting dimensions from shared quadric points: a plane pair shares
        // 0, 1, q+1 or q^2+q+1 points, i.e. meets in dim -1, 0, 1 or 2.
        const unsigned q = F.order();
        meet_dim_.assign(gens_.size() * gens_.size(), -1);
        disjoint_from_.assign(gens_.size(), Bitset(gens_.size()));
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t j = i; j < gens_.size(); ++j) {
                std::size_t shared = gens_[i].qpoints.count_and(gens_[j].qpoints);
                int d;
                if (shared == 0) d = -1;
                else if (shared == 1) d = 0;
                else if (shared == q + 1) d = 1;
                else if (shared == static_cast<std::size_t>(q) * q + q + 1) d = 2;
                else throw std::logic_error("unexpected generator intersection size");
                meet_dim_[i * gens_.size() + j] = static_cast<std::int8_t>(d);
                meet_dim_[j * gens_.size() + i] = static_cast<std::int8_t>(d);
                if (d == -1) {
                    disjoint_from_[i].set(j);
                    disjoint_from_[j].set(i);
                }
            }

        pencil_.assign(qpoints_.size(), Bitset(gens_.size()));
        for (std::size_t g = 0; g < gens_.size(); ++g)
            gens_[g].qpoints.for_each([&](std::size_t qp) { pencil_[qp].set(g); });
    }

    const Geometry& pg3() const { return *G_; }
    const Field& field() const { return *F_; }

    const std::vector<Vec>& quadric_points() const { return qpoints_; }
    const std::vector<Generator>& generators() const { return gens_; }
    std::size_t num_generators() const { return gens_.size(); }

    int quadric_point_index(const Vec& v) const {
        auto it = qpoint_index_.find(v);
        return it == qpoint_index_.end() ? -1 : it->second;
    }
    int generator_index(const Subspace& plane) const {
        auto it = gen_index_.find(plane);
        return it == gen_index_.end() ? -1 : it->second;
    }

    int line_to_quadric_point(int line) const { return line_to_qpoint_[line]; }

    /// Inverse of the Pluecker map, as a lookup (bijection at desk scale).
    const Subspace& klein_inverse(int qpoint) const { return G_->lines[qpoint_to_line_[qpoint]]; }
    const Subspace& klein_inverse(const Vec& v) const {
        int i = quadric_point_index(v);
        if (i < 0) throw std::invalid_argument("point is not on the quadric");
        return klein_inverse(i);
    }

    int meet_dim(int a, int b) const { return meet_dim_[static_cast<std::size_t>(a) * gens_.size() + b]; }
    const Bitset& disjoint_from(int g) const { return disjoint_from_[g]; }

    /// All generators through a quadric point: the point-pencil, 2(q+1) of
    /// them, q+1 per class.
    const Bitset& point_pencil(int qpoint) const { return pencil_[qpoint]; }

    int latin_of_point(int point) const { return latin_of_point_[point]; }
    int greek_of_plane(int plane) const { return greek_of_plane_[plane]; }

private:
    const Geometry* G_;
    const Field* F_;
    std::vector<Vec> qpoints_;
    std::map<Vec, int> qpoint_index_;
    std::vector<int> line_to_qpoint_, qpoint_to_line_;
    std::vector<Generator> gens_;
    std::map<Subspace, int> gen_index_;
    std::vector<int> latin_of_point_, greek_of_plane_;
    std::vector<std::int8_t> meet_dim_;
    std::vector<Bitset> disjoint_from_;
    std::vector<Bitset> pencil_;
};

}  // namespace kleincl
