#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kleincl/bits.hpp"
#include "kleincl/klein.hpp"
#include "kleincl/linalg.hpp"

namespace kleincl {

/// A candidate Cameron-Liebler set: a subset of the generator table.
struct CLCandidate {
    const KleinModel* model = nullptr;
    Bitset members;

    CLCandidate() = default;
    explicit CLCandidate(const KleinModel& m) : model(&m), members(m.num_generators()) {}

    std::size_t size() const { return members.count(); }
};

/// The PG(3,q)-side shadow: a point set P0 and a plane set P2.
struct PointPlaneSystem {
    const Geometry* geom = nullptr;
    Bitset p0, p2;

    PointPlaneSystem() = default;
    explicit PointPlaneSystem(const Geometry& g)
        : geom(&g), p0(g.points.size()), p2(g.planes.size()) {}
};

struct CheckResult {
    std::string check;
    bool pass = false;
    long witness = -1;  // offending generator/point index, -1 if none
    long long expected = 0;
    long long observed = 0;
    double millis = 0.0;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {
class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};
}  // namespace detail

/// Parameter x = |set| / (2(q+1)); throws if the size is not divisible.
inline long long parameter_of(const CLCandidate& c) {
    const long long denom = 2LL * (c.model->field().order() + 1);
    const long long sz = static_cast<long long>(c.size());
    if (sz % denom != 0)
        throw std::invalid_argument("not a CL-sized set: |set| = " + std::to_string(sz) +
                                    " is not divisible by 2(q+1) = " + std::to_string(denom));
    return sz / denom;
}

/// Disjointness criterion: every generator pi sees exactly (x - chi(pi)) q
/// members of the set disjoint from it.
inline CheckResult check_disjointness(const CLCandidate& c) {
    detail::Stopwatch sw;
    CheckResult r{"disjoint", true};
    const KleinModel& M = *c.model;
    const long long q = M.field().order();
    const long long x = parameter_of(c);
    for (std::size_t g = 0; g < M.num_generators(); ++g) {
        long long expected = (x - (c.members.test(g) ? 1 : 0)) * q;
        long long observed = static_cast<long long>(M.disjoint_from(g).count_and(c.members));
        if (observed != expected) {
            r.pass = false;
            r.witness = static_cast<long>(g);
            r.expected = expected;
            r.observed = observed;
            break;
        }
    }
    r.millis = sw.ms();
    return r;
}

/// Full intersection-number profile. Buckets partition the set by meeting
/// dimension with pi (pi itself lands in the plane bucket):
///   pi in L:     plane 1, line x+q, point xq+x-1, disjoint (x-1)q
///   pi not in L: plane 0, line x,   point x(q+1), disjoint xq
inline CheckResult check_intersection_numbers(const CLCandidate& c) {
    detail::Stopwatch sw;
    CheckResult r{"intersections", true};
    const KleinModel& M = *c.model;
    const long long q = M.field().order();
    const long long x = parameter_of(c);
    for (std::size_t g = 0; g < M.num_generators() && r.pass; ++g) {
        long long cnt[4] = {0, 0, 0, 0};  // dim -1, 0, 1, 2
        c.members.for_each([&](std::size_t m) { ++cnt[M.meet_dim(static_cast<int>(g), static_cast<int>(m)) + 1]; });
        const bool in = c.members.test(g);
        long long expected[4];
        if (in) {
            expected[0] = (x - 1) * q;
            expected[1] = x * q + x - 1;
            expected[2] = x + q;
            expected[3] = 1;
        } else {
            expected[0] = x * q;
            expected[1] = x * (q + 1);
            expected[2] = x;
            expected[3] = 0;
        }
        for (int b = 0; b < 4; ++b)
            if (cnt[b] != expected[b]) {
                r.pass = false;
                r.witness = static_cast<long>(g);
                r.expected = expected[b];
                r.observed = cnt[b];
                break;
            }
    }
    r.millis = sw.ms();
    return r;
}

enum class ImageMode { Auto, Exact, TwoPrimeModular };

namespace detail {
/// First n primes above 2^20, for the modular fast path.
inline std::vector<std::uint64_t> modular_primes(int n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = (1u << 20) + 1; static_cast<int>(out.size()) < n; c += 2)
        if (is_prime(static_cast<unsigned>(c))) out.push_back(c);
    return out;
}
}  // namespace detail

/// Degree-one criterion: the characteristic vector lies in the row space of
/// the point-generator incidence matrix. Exact rational elimination, or a
/// two-prime modular membership check for the larger instances.
inline CheckResult check_image(const CLCandidate& c, ImageMode mode = ImageMode::Auto) {
    detail::Stopwatch sw;
    CheckResult r{"image", true};
    const KleinModel& M = *c.model;
    const std::size_t ngen = M.num_generators();
    if (mode == ImageMode::Auto)
        mode = (M.field().order() <= 4) ? ImageMode::Exact : ImageMode::TwoPrimeModular;

    auto chi_bit = [&](std::size_t g) { return c.members.test(g) ? 1 : 0; };

    if (mode == ImageMode::Exact) {
        RationalRowBasis basis(ngen);
        for (std::size_t p = 0; p < M.quadric_points().size(); ++p) {
            std::vector<mpq_class> row(ngen, 0);
            M.point_pencil(static_cast<int>(p)).for_each([&](std::size_t g) { row[g] = 1; });
            basis.add_row(std::move(row));
        }
        std::vector<mpq_class> chi(ngen);
        for (std::size_t g = 0; g < ngen; ++g) chi[g] = chi_bit(g);
        r.pass = basis.contains(std::move(chi));
    } else {
        for (std::uint64_t prime : detail::modular_primes(2)) {
            ModularRowBasis basis(ngen, prime);
            for (std::size_t p = 0; p < M.quadric_points().size(); ++p) {
                std::vector<std::uint64_t> row(ngen, 0);
                M.point_pencil(static_cast<int>(p)).for_each([&](std::size_t g) { row[g] = 1; });
                basis.add_row(std::move(row));
            }
            std::vector<std::uint64_t> chi(ngen);
            for (std::size_t g = 0; g < ngen; ++g) chi[g] = static_cast<std::uint64_t>(chi_bit(g));
            if (!basis.contains(std::move(chi))) {
                r.pass = false;
                break;
            }
        }
    }
    r.millis = sw.ms();
    return r;
}

/// Two-valued incidence spectra on the PG(3,q) side:
///   (a) every plane meets P0 in x or q+x points, P2 = planes with q+x;
///   (b) every point is on x or q+x planes of P2, P0 = points with q+x.
inline CheckResult check_property31(const PointPlaneSystem& s, long long x) {
    detail::Stopwatch sw;
    CheckResult r{"property31", true};
    const Geometry& G = *s.geom;
    const long long q = G.F->order();
    for (std::size_t pl = 0; pl < G.planes.size() && r.pass; ++pl) {
        long long n = static_cast<long long>(G.plane_points[pl].count_and(s.p0));
        bool heavy = (n == q + x);
        if (!heavy && n != x) {
            r.pass = false;
            r.witness = static_cast<long>(pl);
            r.expected = x;
            r.observed = n;
        } else if (heavy != s.p2.test(pl)) {
            r.pass = false;
            r.witness = static_cast<long>(pl);
            r.expected = heavy ? 1 : 0;
            r.observed = heavy ? 0 : 1;
        }
    }
    for (std::size_t p = 0; p < G.points.size() && r.pass; ++p) {
        long long n = static_cast<long long>(G.point_planes[p].count_and(s.p2));
        bool heavy = (n == q + x);
        if (!heavy && n != x) {
            r.pass = false;
            r.witness = static_cast<long>(p);
            r.expected = x;
            r.observed = n;
        } else if (heavy != s.p0.test(p)) {
            r.pass = false;
            r.witness = static_cast<long>(p);
            r.expected = heavy ? 1 : 0;
            r.observed = heavy ? 0 : 1;
        }
    }
    r.millis = sw.ms();
    return r;
}

/// Klein transport: Latin members <-> points of P0, Greek members <-> planes
/// of P2, via the stored dictionary.
inline PointPlaneSystem to_pg3(const CLCandidate& c) {
    const KleinModel& M = *c.model;
    PointPlaneSystem s(M.pg3());
    c.members.for_each([&](std::size_t g) {
        const Generator& gen = M.generators()[g];
        if (gen.cls == GenClass::Latin)
            s.p0.set(gen.origin);
        else
            s.p2.set(gen.origin);
    });
    return s;
}

inline CLCandidate from_pg3(const KleinModel& M, const PointPlaneSystem& s) {
    CLCandidate c(M);
    s.p0.for_each([&](std::size_t p) { c.members.set(M.latin_of_point(static_cast<int>(p))); });
    s.p2.for_each([&](std::size_t pl) { c.members.set(M.greek_of_plane(static_cast<int>(pl))); });
    return c;
}

enum class SetOp { Complement, Union, Difference };

/// Closure operations: complement, disjoint union, contained difference.
inline CLCandidate combine(const CLCandidate& a, const CLCandidate& b, SetOp op) {
    CLCandidate r(*a.model);
    switch (op) {
        case SetOp::Complement:
            r.members = a.members;
            for (std::size_t g = 0; g < a.model->num_generators(); ++g)
                if (r.members.test(g)) r.members.reset(g); else r.members.set(g);
            break;
        case SetOp::Union:
            if (a.members.intersects(b.members))
                throw std::invalid_argument("union requires disjoint operands");
            r.members = a.members | b.members;
            break;
        case SetOp::Difference:
            if (!b.members.subset_of(a.members))
                throw std::invalid_argument("difference requires the second operand to be contained in the first");
            r.members = a.members - b.members;
            break;
    }
    return r;
}

inline CLCandidate complement(const CLCandidate& a) { return combine(a, a, SetOp::Complement); }

/// The point-pencil with the given vertex, as a candidate.
inline CLCandidate pencil_candidate(const KleinModel& M, int qpoint) {
    CLCandidate c(M);
    c.members = M.point_pencil(qpoint);
    return c;
}

/// Run the three quadric-side checks plus the PG(3,q) transport check.
inline VerificationReport verify_all(const CLCandidate& c, ImageMode mode = ImageMode::Auto) {
    VerificationReport rep;
    rep.checks.push_back(check_disjointness(c));
    rep.checks.push_back(check_intersection_numbers(c));
    rep.checks.push_back(check_image(c, mode));
    rep.checks.push_back(check_property31(to_pg3(c), parameter_of(c)));
    return rep;
}

}  // namespace kleincl
