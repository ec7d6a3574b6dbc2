#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kleincl {

/// Element of a finite field, stored as its table index 0..q^t-1.
using Elem = unsigned;

namespace detail {

inline bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Arithmetic tables for a field of order m, elements indexed 0..m-1.
/// 0 and 1 are the additive and multiplicative identities.
struct Tables {
    unsigned order = 0;
    std::vector<Elem> add, mul;  // order x order, row-major
    std::vector<Elem> neg, inv;  // inv[0] unused

    Elem a(Elem x, Elem y) const { return add[x * order + y]; }
    Elem m(Elem x, Elem y) const { return mul[x * order + y]; }
};

/// Polynomials over a table field, coefficient vector c[0] + c[1] X + ...
using Poly = std::vector<Elem>;

inline Poly poly_mul(const Tables& F, const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.a(r[i + j], F.m(a[i], b[j]));
    return r;
}

/// Remainder of a modulo monic m.
inline Poly poly_mod(const Tables& F, Poly a, const Poly& m) {
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        Elem lead = a.back();
        if (lead != 0) {
            std::size_t shift = a.size() - 1 - dm;
            for (std::size_t i = 0; i < dm; ++i) {
                Elem sub = F.m(lead, m[i]);
                a[shift + i] = F.a(a[shift + i], F.neg[sub]);
            }
        }
        a.pop_back();
    }
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    return a;
}

/// Decode the d low-degree coefficients of a monic degree-d polynomial from an
/// integer code (base F.order, constant term least significant).
inline Poly decode_monic(const Tables& F, unsigned deg, unsigned long long code) {
    Poly p(deg + 1, 0);
    for (unsigned i = 0; i < deg; ++i) {
        p[i] = static_cast<Elem>(code % F.order);
        code /= F.order;
    }
    p[deg] = 1;
    return p;
}

/// Irreducibility over a table field by trial division against all monic
/// divisors of degree 1..deg/2. Desk-scale degrees only.
inline bool poly_irreducible(const Tables& F, const Poly& p) {
    const unsigned deg = static_cast<unsigned>(p.size()) - 1;
    if (deg == 0) return false;
    if (deg == 1) return true;
    for (unsigned d = 1; 2 * d <= deg; ++d) {
        unsigned long long n = 1;
        for (unsigned i = 0; i < d; ++i) n *= F.order;
        for (unsigned long long code = 0; code < n; ++code) {
            Poly div = decode_monic(F, d, code);
            Poly rem = poly_mod(F, p, div);
            if (rem.size() == 1 && rem[0] == 0) return false;
        }
    }
    return true;
}

/// Least monic irreducible of the given degree, in integer-code order.
inline Poly least_irreducible(const Tables& F, unsigned deg) {
    unsigned long long n = 1;
    for (unsigned i = 0; i < deg; ++i) n *= F.order;
    for (unsigned long long code = 0; code < n; ++code) {
        Poly p = decode_monic(F, deg, code);
        if (poly_irreducible(F, p)) return p;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

/// Tables for the prime field GF(p).
inline Tables prime_tables(unsigned p) {
    Tables T;
    T.order = p;
    T.add.resize(p * p);
    T.mul.resize(p * p);
    T.neg.resize(p);
    T.inv.resize(p);
    for (unsigned i = 0; i < p; ++i) {
        T.neg[i] = (p - i) % p;
        for (unsigned j = 0; j < p; ++j) {
            T.add[i * p + j] = (i + j) % p;
            T.mul[i * p + j] = (i * j) % p;
        }
    }
    for (unsigned i = 1; i < p; ++i)
        for (unsigned j = 1; j < p; ++j)
            if ((i * j) % p == 1) T.inv[i] = j;
    return T;
}

/// Tables for the extension of a table field by a monic irreducible of
/// degree d. Element index = sum coeff[i] * base^i, so base-field elements
/// keep their index (constant polynomials).
inline Tables extension_tables(const Tables& B, const Poly& modulus) {
    const unsigned d = static_cast<unsigned>(modulus.size()) - 1;
    unsigned long long n = 1;
    for (unsigned i = 0; i < d; ++i) n *= B.order;
    if (n > 4096) throw std::invalid_argument("field too large (order > 4096)");
    const unsigned N = static_cast<unsigned>(n);

    auto digits = [&](Elem x) {
        Poly c(d);
        for (unsigned i = 0; i < d; ++i) {
            c[i] = x % B.order;
            x /= B.order;
        }
        return c;
    };
    auto index = [&](const Poly& c) {
        Elem x = 0;
        for (unsigned i = d; i-- > 0;) x = x * B.order + (i < c.size() ? c[i] : 0);
        return x;
    };

    Tables T;
    T.order = N;
    T.add.resize(static_cast<std::size_t>(N) * N);
    T.mul.resize(static_cast<std::size_t>(N) * N);
    T.neg.resize(N);
    T.inv.resize(N);
    std::vector<Poly> elems(N);
    for (unsigned i = 0; i < N; ++i) elems[i] = digits(i);
    for (unsigned i = 0; i < N; ++i) {
        Poly negc(d);
        for (unsigned k = 0; k < d; ++k) negc[k] = B.neg[elems[i][k]];
        T.neg[i] = index(negc);
        for (unsigned j = 0; j < N; ++j) {
            Poly s(d);
            for (unsigned k = 0; k < d; ++k) s[k] = B.a(elems[i][k], elems[j][k]);
            T.add[static_cast<std::size_t>(i) * N + j] = index(s);
            Poly prod = poly_mod(B, poly_mul(B, elems[i], elems[j]), modulus);
            T.mul[static_cast<std::size_t>(i) * N + j] = index(prod);
        }
    }
    for (unsigned i = 1; i < N; ++i)
        for (unsigned j = 1; j < N; ++j)
            if (T.m(i, j) == 1) T.inv[i] = j;
    return T;
}

}  // namespace detail

/// A tower field GF(q^t) over GF(q) = GF(p^h), with all arithmetic
/// table-driven. Element indices are deterministic in (p, h, t): both
/// irreducible polynomials are the least monic ones in coefficient-code
/// order, and indices are coefficient vectors read base-q (base-p inside).
///
/// GF(q) sits inside GF(q^t) as the indices 0..q-1 (constant polynomials),
/// so subfield embedding is the identity. Immutable after construction.
class Field {
public:
    Field(unsigned p, unsigned h, unsigned t) : p_(p), h_(h), t_(t) {
        if (!detail::is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
        if (h == 0 || t == 0) throw std::invalid_argument("field degree must be positive");
        base_tables_ = detail::prime_tables(p);
        if (h > 1) {
            base_poly_ = detail::least_irreducible(base_tables_, h);
            base_tables_ = detail::extension_tables(base_tables_, base_poly_);
        } else {
            base_poly_ = {0, 1};  // GF(p) itself; modulus X
        }
        q_ = base_tables_.order;
        tower_poly_ = detail::least_irreducible(base_tables_, t);
        if (t > 1)
            T_ = detail::extension_tables(base_tables_, tower_poly_);
        else
            T_ = base_tables_;

        // Frobenius x -> x^q, tabulated.
        frob_.resize(T_.order);
        for (Elem x = 0; x < T_.order; ++x) frob_[x] = pow(x, q_);
    }

    unsigned characteristic() const { return p_; }
    unsigned base_degree() const { return h_; }
    unsigned tower_degree() const { return t_; }
    unsigned subfield_order() const { return q_; }  // q = p^h
    unsigned order() const { return T_.order; }     // q^t

    const detail::Poly& base_poly() const { return base_poly_; }
    const detail::Poly& tower_poly() const { return tower_poly_; }

    Elem add(Elem a, Elem b) const { return T_.a(a, b); }
    Elem sub(Elem a, Elem b) const { return T_.a(a, T_.neg[b]); }
    Elem neg(Elem a) const { return T_.neg[a]; }
    Elem mul(Elem a, Elem b) const { return T_.m(a, b); }
    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("division by zero");
        return T_.inv[a];
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, unsigned long long e) const {
        Elem r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    /// x -> x^{q^k}, the k-th power of the relative Frobenius.
    Elem conjugate(Elem a, unsigned k) const {
        if (k >= t_) throw std::invalid_argument("conjugate exponent out of range");
        for (unsigned i = 0; i < k; ++i) a = frob_[a];
        return a;
    }

    /// Membership in the subfield GF(q), i.e. a^q = a.
    bool in_subfield(Elem a) const { return frob_[a] == a; }

    /// Tower coefficient i of a (an element of GF(q), index < q).
    Elem coeff(Elem a, unsigned i) const {
        for (unsigned k = 0; k < i; ++k) a /= q_;
        return a % q_;
    }

private:
    unsigned p_, h_, t_, q_ = 0;
    detail::Poly base_poly_, tower_poly_;
    detail::Tables base_tables_;  // GF(q)
    detail::Tables T_;            // GF(q^t)
    std::vector<Elem> frob_;
};

}  // namespace kleincl
