#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wkplus/numutil.hpp"
#include "wkplus/place.hpp"
#include "wkplus/rational.hpp"

namespace wkplus::padic {

// Square class of Q_2^x / (Q_2^x)^2, an eight-element group of exponent 2.
// Representatives are the fixed set {1, -1, 2, -2, 5, -5, 10, -10}: the unit
// classes 1, -5, 5, -1 (for unit part 1, 3, 5, 7 mod 8) and twice each for
// odd valuation.
class SquareClass2 {
public:
    explicit SquareClass2(int rep) : rep_(rep) {
        for (int r : {1, -1, 2, -2, 5, -5, 10, -10})
            if (rep == r) return;
        throw std::invalid_argument("SquareClass2: " + std::to_string(rep) + " is not a representative");
    }

    int representative() const { return rep_; }
    bool is_trivial() const { return rep_ == 1; }

    bool operator==(const SquareClass2& o) const = default;

private:
    int rep_;
};

// Square class of Q_ell^x / (Q_ell^x)^2 at an odd prime: four classes, keyed
// by valuation parity and whether the unit part is a quadratic residue.
struct OddLocalClass {
    int64_t prime;
    bool valuation_odd;
    bool unit_is_residue;

    bool is_trivial() const { return !valuation_odd && unit_is_residue; }
    bool operator==(const OddLocalClass& o) const = default;
};

// v2(ell^k - 1) by lifting the exponent.
inline int v2_pow_minus_one(int64_t ell, int64_t k) {
    if (ell < 3 || ell % 2 == 0)
        throw std::invalid_argument("v2_pow_minus_one: ell must be an odd integer >= 3");
    if (k < 1) throw std::invalid_argument("v2_pow_minus_one: k must be >= 1");
    int a = v2_of(static_cast<uint64_t>(ell - 1));
    if (k % 2 == 1) return a;
    int b = v2_of(static_cast<uint64_t>(ell + 1));
    return a + b + v2_of(static_cast<uint64_t>(k)) - 1;
}

inline SquareClass2 square_class_at_2(const Rational& q) {
    if (q.is_zero()) throw std::invalid_argument("square_class_at_2: zero");
    int e = q.vp(2);
    uint64_t u = q.unit_mod(2, 8);
    int unit_rep;
    switch (u) {
        case 1: unit_rep = 1; break;
        case 3: unit_rep = -5; break;
        case 5: unit_rep = 5; break;
        default: unit_rep = -1; break;  // u == 7
    }
    return SquareClass2(((e % 2 + 2) % 2) ? 2 * unit_rep : unit_rep);
}

inline SquareClass2 square_class_at_2(int64_t q) { return square_class_at_2(Rational(q)); }

inline SquareClass2 mul(const SquareClass2& a, const SquareClass2& b) {
    return square_class_at_2(Rational(static_cast<int64_t>(a.representative()) * b.representative()));
}

inline OddLocalClass odd_local_class(const Rational& q, int64_t ell) {
    if (q.is_zero()) throw std::invalid_argument("odd_local_class: zero");
    if (ell < 3 || !is_prime_u64(static_cast<uint64_t>(ell)))
        throw std::invalid_argument("odd_local_class: ell must be an odd prime");
    int v = q.vp(ell);
    uint64_t u = q.unit_mod(ell, static_cast<uint64_t>(ell));
    return OddLocalClass{ell, (v % 2 + 2) % 2 == 1, legendre(static_cast<int64_t>(u), static_cast<uint64_t>(ell)) == 1};
}

inline bool is_square_local(const Rational& q, const Place& v) {
    if (q.is_zero()) throw std::invalid_argument("is_square_local: zero");
    if (v.is_real()) return q.sign() > 0;
    if (v.is_dyadic()) return square_class_at_2(q).is_trivial();
    return odd_local_class(q, v.prime()).is_trivial();
}

inline bool is_square_local(int64_t q, const Place& v) { return is_square_local(Rational(q), v); }

namespace detail {

// (u-1)/2 mod 2 for odd u given mod 8.
inline int eps2(uint64_t u_mod8) { return (u_mod8 % 4 == 3) ? 1 : 0; }
// (u^2-1)/8 mod 2 for odd u given mod 8.
inline int omega2(uint64_t u_mod8) { return (u_mod8 == 3 || u_mod8 == 5) ? 1 : 0; }

}  // namespace detail

// Hilbert symbol (a,b)_v over Q_v: +1 iff z^2 = a x^2 + b y^2 has a
// nontrivial solution (the symbol is +1 exactly when the form is isotropic).
// Classical closed forms: Legendre symbols at odd v, the eps/omega mod-8
// formula at v = 2, signs at the real place.
inline int hilbert(const Rational& a, const Rational& b, const Place& v) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("hilbert: zero argument");
    if (v.is_real()) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
    int64_t p = v.prime();
    if (p == 2) {
        int alpha = a.vp(2), beta = b.vp(2);
        uint64_t u = a.unit_mod(2, 8), w = b.unit_mod(2, 8);
        int e = detail::eps2(u) * detail::eps2(w) + alpha * detail::omega2(w) + beta * detail::omega2(u);
        return (e % 2 + 2) % 2 ? -1 : 1;
    }
    int alpha = a.vp(p), beta = b.vp(p);
    int lu = legendre(static_cast<int64_t>(a.unit_mod(p, static_cast<uint64_t>(p))), static_cast<uint64_t>(p));
    int lw = legendre(static_cast<int64_t>(b.unit_mod(p, static_cast<uint64_t>(p))), static_cast<uint64_t>(p));
    int eps_p = static_cast<int>(((p - 1) / 2) % 2);
    int sign = 1;
    if ((alpha % 2 + 2) % 2 && (beta % 2 + 2) % 2 && eps_p) sign = -sign;
    if ((beta % 2 + 2) % 2 && lu == -1) sign = -sign;
    if ((alpha % 2 + 2) % 2 && lw == -1) sign = -sign;
    return sign;
}

inline int hilbert(int64_t a, int64_t b, const Place& v) { return hilbert(Rational(a), Rational(b), v); }

// The finite places where (a,b)_v can differ from +1, together with the real
// place and 2: exactly the odd primes at which a or b has nonzero valuation.
inline std::vector<Place> relevant_places(const Rational& a, const Rational& b) {
    std::vector<Place> places{Place::real(), Place::finite(2)};
    std::vector<int64_t> odd;
    for (const Rational* q : {&a, &b}) {
        for (int64_t part : {q->num(), q->den()}) {
            for (const auto& [p, e] : factor_abs(part))
                if (p > 2) odd.push_back(p);
        }
    }
    std::sort(odd.begin(), odd.end());
    odd.erase(std::unique(odd.begin(), odd.end()), odd.end());
    for (int64_t p : odd) places.push_back(Place::finite(p));
    return places;
}

// Product formula self-test: the product of (a,b)_v over all relevant places
// must be +1. Exposed as an always-true oracle.
inline bool hilbert_product_check(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("hilbert_product_check: zero argument");
    int prod = 1;
    for (const Place& v : relevant_places(a, b)) prod *= hilbert(a, b, v);
    return prod == 1;
}

inline bool hilbert_product_check(int64_t a, int64_t b) {
    return hilbert_product_check(Rational(a), Rational(b));
}

// Local norm test for Q_v(sqrt(d))/Q_v: x is a norm iff (x,d)_v = +1. If d is
// a square in Q_v the completion splits and every element is a norm.
inline bool is_local_norm(const Rational& x, int64_t d, const Place& v) {
    if (x.is_zero()) throw std::invalid_argument("is_local_norm: zero");
    if (d == 1 || d == 0 || squarefree_part(d) != d)
        throw std::invalid_argument("is_local_norm: d must be a squarefree non-square radicand");
    if (is_square_local(Rational(d), v)) return true;
    return hilbert(x, Rational(d), v) == 1;
}

inline bool is_local_norm(int64_t x, int64_t d, const Place& v) { return is_local_norm(Rational(x), d, v); }

// Brute-force local solvability of z^2 = a x^2 + b y^2 over Q_p, searching
// primitive solutions modulo p^3 (odd p) or 2^8. The moduli exceed the
// Hensel-lifting thresholds for the coefficient ranges this project sweeps
// (|a|, |b| <= 20); used only as an oracle against the closed forms.
inline int hilbert_by_search(int64_t a, int64_t b, int64_t p) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert_by_search: zero argument");
    if (p < 2 || !is_prime_u64(static_cast<uint64_t>(p)))
        throw std::invalid_argument("hilbert_by_search: p must be a finite prime");
    const uint64_t m = (p == 2) ? 256 : static_cast<uint64_t>(p) * p * p;
    auto reduce = [&](int64_t x) {
        return static_cast<uint64_t>(((x % static_cast<int64_t>(m)) + static_cast<int64_t>(m)) % static_cast<int64_t>(m));
    };
    const uint64_t am = reduce(a), bm = reduce(b);

    std::vector<char> sq_any(m, 0), sq_unit(m, 0);
    for (uint64_t z = 0; z < m; ++z) {
        uint64_t s = mulmod(z, z, m);
        sq_any[s] = 1;
        if (z % static_cast<uint64_t>(p) != 0) sq_unit[s] = 1;
    }
    std::vector<uint64_t> ax2(m), by2(m);
    for (uint64_t x = 0; x < m; ++x) {
        ax2[x] = mulmod(am, mulmod(x, x, m), m);
        by2[x] = mulmod(bm, mulmod(x, x, m), m);
    }
    for (uint64_t x = 0; x < m; ++x) {
        bool x_unit = (x % static_cast<uint64_t>(p)) != 0;
        for (uint64_t y = 0; y < m; ++y) {
            uint64_t s = ax2[x] + by2[y];
            if (s >= m) s -= m;
            if (x_unit || (y % static_cast<uint64_t>(p)) != 0) {
                if (sq_any[s]) return 1;  // any z keeps (x,y,z) primitive
            } else if (sq_unit[s]) {
                return 1;
            }
        }
    }
    return -1;
}

}  // namespace wkplus::padic
