#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wkplus {

inline int v2_of(uint64_t n) {
    if (n == 0) throw std::invalid_argument("v2_of: zero has no finite 2-adic valuation");
    return std::countr_zero(n);
}

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 1) return 0;
    uint64_t r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Trial-division factorization of |n|. Exact; intended for desk-scale inputs.
inline std::vector<std::pair<int64_t, int>> factor_abs(int64_t n) {
    if (n == 0) throw std::invalid_argument("factor_abs: zero");
    uint64_t m = n < 0 ? static_cast<uint64_t>(-(n + 1)) + 1 : static_cast<uint64_t>(n);
    std::vector<std::pair<int64_t, int>> out;
    int e2 = 0;
    while ((m & 1) == 0) {
        m >>= 1;
        ++e2;
    }
    if (e2) out.emplace_back(2, e2);
    for (uint64_t p = 3; p * p <= m; p += 2) {
        if (m % p == 0) {
            int e = 0;
            do {
                m /= p;
                ++e;
            } while (m % p == 0);
            out.emplace_back(static_cast<int64_t>(p), e);
        }
    }
    if (m > 1) out.emplace_back(static_cast<int64_t>(m), 1);
    return out;
}

// Squarefree part, sign preserved: n = s * square with s squarefree.
inline int64_t squarefree_part(int64_t n) {
    if (n == 0) throw std::invalid_argument("squarefree_part: zero");
    int64_t s = n < 0 ? -1 : 1;
    for (const auto& [p, e] : factor_abs(n))
        if (e & 1) s *= p;
    return s;
}

inline bool is_perfect_square(int64_t n) {
    if (n < 0) return false;
    if (n == 0) return true;
    return squarefree_part(n) == 1;
}

// Inverse of an odd unit modulo 2^b, b <= 63.
inline uint64_t inv_mod_pow2(uint64_t a, int b) {
    if ((a & 1) == 0) throw std::invalid_argument("inv_mod_pow2: even argument");
    uint64_t mask = b >= 64 ? ~0ull : ((1ull << b) - 1);
    uint64_t x = 1;
    for (int i = 0; i < 6; ++i) x = (x * (2 - a * x)) & mask;
    return x & mask;
}

inline uint64_t inv_mod_prime(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) throw std::invalid_argument("inv_mod_prime: not invertible");
    return powmod(a, p - 2, p);
}

// Legendre symbol (a|p) for odd prime p, via the Euler criterion.
inline int legendre(int64_t a, uint64_t p) {
    uint64_t r = static_cast<uint64_t>(((a % static_cast<int64_t>(p)) + static_cast<int64_t>(p)) % static_cast<int64_t>(p));
    if (r == 0) return 0;
    uint64_t e = powmod(r, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

}  // namespace wkplus
