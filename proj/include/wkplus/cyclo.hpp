#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "wkplus/padic.hpp"
#include "wkplus/quadfield.hpp"

namespace wkplus::cyclo {

using quadfield::QuadraticField;

// Position of the completion E_w at 2 relative to the cyclotomic Z_2-tower
// of Q_2, whose first layer is Q_2(sqrt(2)).
enum class TwoAdicLayerClass {
    TrivialCompletion,   // d a square in Q_2: E_w = Q_2
    TowerLayer,          // square class 2: E_w = Q_2(sqrt(2)), inside the tower
    OutsideUnramified,   // square class 5: the unramified quadratic extension
    OutsideRamified,     // any other class
};

inline const char* to_string(TwoAdicLayerClass c) {
    switch (c) {
        case TwoAdicLayerClass::TrivialCompletion: return "trivial-completion";
        case TwoAdicLayerClass::TowerLayer: return "tower-layer";
        case TwoAdicLayerClass::OutsideUnramified: return "outside-unramified";
        default: return "outside-ramified";
    }
}

// Cohomological twist. The concrete rank pipeline needs i odd >= 3; even i
// is accepted by the type so the bookkeeping evaluator can talk about it.
struct TwistIndex {
    int i;
    explicit TwistIndex(int i_) : i(i_) {
        if (i < 2) throw std::invalid_argument("TwistIndex: i must be >= 2");
    }
    bool odd() const { return i % 2 != 0; }
};

// E lies in the cyclotomic Z_2-extension of Q iff E = Q(sqrt(2)); the
// quadratic subfields of the 2-power cyclotomic fields are Q(i), Q(sqrt(-2)),
// Q(sqrt(2)), and only the last one is in the tower.
inline bool is_in_cyclo_z2_global(const QuadraticField& E) { return E.d() == 2; }

inline TwoAdicLayerClass two_adic_layer_class(const QuadraticField& E) {
    switch (padic::square_class_at_2(E.d()).representative()) {
        case 1: return TwoAdicLayerClass::TrivialCompletion;
        case 2: return TwoAdicLayerClass::TowerLayer;
        case 5: return TwoAdicLayerClass::OutsideUnramified;
        default: return TwoAdicLayerClass::OutsideRamified;
    }
}

// R = tamely ramified finite primes (the odd primes dividing the
// discriminant) plus the prime 2 when the completion at 2 escapes the local
// cyclotomic Z_2-tower.
inline std::vector<int64_t> r_set(const QuadraticField& E) {
    std::vector<int64_t> out;
    TwoAdicLayerClass c = two_adic_layer_class(E);
    if (c == TwoAdicLayerClass::OutsideUnramified || c == TwoAdicLayerClass::OutsideRamified)
        out.push_back(2);
    for (int64_t p : E.ramified_primes())
        if (p != 2) out.push_back(p);
    return out;
}

// log2 |H^0(E_w, Q_2/Z_2(m))| for a local field of odd residue
// characteristic ell and residue degree f: the 2-power cyclotomic character
// factors through Frobenius, so the order is the 2-part of ell^{f|m|} - 1.
inline int local_h0_log2(int64_t ell, int f, int64_t m) {
    if (ell < 3 || ell % 2 == 0) throw std::invalid_argument("local_h0: ell must be odd >= 3");
    if (f != 1 && f != 2) throw std::invalid_argument("local_h0: f must be 1 or 2");
    if (m == 0) throw std::invalid_argument("local_h0: m = 0 gives an infinite group");
    int64_t am = m < 0 ? -m : m;
    return padic::v2_pow_minus_one(ell, static_cast<int64_t>(f) * am);
}

inline uint64_t local_h0_order(int64_t ell, int f, int64_t m) {
    int c = local_h0_log2(ell, f, m);
    if (c >= 64) throw std::overflow_error("local_h0_order: order exceeds 64 bits, use local_h0_log2");
    return 1ull << c;
}

// Enumeration oracle for local_h0: count fixed points of the m-th power of
// Frobenius (acting as multiplication by ell^{fm}) on (1/2^k)Z/Z for
// k = 1..kmax, and report the stabilized count. Independent of the
// lifting-the-exponent route.
inline int local_h0_log2_enumerated(int64_t ell, int f, int64_t m, int kmax) {
    if (ell < 3 || ell % 2 == 0) throw std::invalid_argument("local_h0_enumerated: ell must be odd >= 3");
    if (f != 1 && f != 2) throw std::invalid_argument("local_h0_enumerated: f must be 1 or 2");
    if (m == 0) throw std::invalid_argument("local_h0_enumerated: m = 0");
    if (kmax < 2 || kmax > 30) throw std::invalid_argument("local_h0_enumerated: kmax out of range");
    uint64_t am = static_cast<uint64_t>(m < 0 ? -m : m);
    int prev = -1;
    for (int k = 1; k <= kmax; ++k) {
        uint64_t mod = 1ull << k;
        uint64_t g = powmod(static_cast<uint64_t>(ell) % mod, static_cast<uint64_t>(f) * am, mod);
        if (m < 0) g = inv_mod_pow2(g, k);
        int count_log2 = 0;
        uint64_t fixed = 0;
        for (uint64_t x = 0; x < mod; ++x)
            if (mulmod(g, x, mod) == x) ++fixed;
        while ((1ull << count_log2) < fixed) ++count_log2;
        if (k > 1 && count_log2 == prev) return count_log2;  // stopped growing
        prev = count_log2;
    }
    throw std::logic_error("local_h0_enumerated: fixed-point count did not stabilize by kmax");
}

namespace detail {

// Restriction on the image of the 2-cyclotomic character cut out by E: full
// odd units unless E contains Q(i), Q(sqrt(2)) or Q(sqrt(-2)); exhaustive
// for quadratic fields.
inline bool unit_in_character_image(uint64_t u, int64_t d) {
    if (d == -1) return u % 4 == 1;
    if (d == 2) return u % 8 == 1 || u % 8 == 7;
    if (d == -2) return u % 8 == 1 || u % 8 == 3;
    return true;
}

inline uint64_t global_h0_order_impl(int64_t d, int64_t m) {
    if (m == 0) throw std::invalid_argument("global_h0_order: m = 0 gives an infinite group");
    uint64_t am = static_cast<uint64_t>(m < 0 ? -m : m);
    int v2m = v2_of(am);
    if (v2m > 14) throw std::invalid_argument("global_h0_order: v2(m) too large for unit enumeration");
    const int kmax = v2m + 6;
    int prev = -1;
    for (int k = 2; k <= kmax; ++k) {
        uint64_t mod = 1ull << k;
        int c = k;
        for (uint64_t u = 1; u < mod; u += 2) {
            if (!unit_in_character_image(u, d)) continue;
            uint64_t r = powmod(u, am, mod);
            int cu = (r == 1) ? k : v2_of(r - 1);
            if (cu < c) c = cu;
        }
        if (k == kmax) {
            if (c != prev) throw std::logic_error("global_h0_order: not stabilized at kmax");
            return 1ull << c;
        }
        prev = c;
    }
    throw std::logic_error("global_h0_order: unreachable");
}

}  // namespace detail

// |H^0(E, Q_2/Z_2(m))|: the largest 2^c with u^m = 1 mod 2^c for every u in
// the image of the 2-cyclotomic character of G_E, found by enumerating units
// modulo 2^k until the answer stabilizes.
inline uint64_t global_h0_order(const QuadraticField& E, int64_t m) {
    return detail::global_h0_order_impl(E.d(), m);
}

// Same over the base field Q (full odd-unit image).
inline uint64_t global_h0_order_rational(int64_t m) { return detail::global_h0_order_impl(0, m); }

}  // namespace wkplus::cyclo
