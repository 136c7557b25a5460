#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "wkplus/numutil.hpp"

namespace wkplus {

// Exact reduced fraction of 64-bit integers, denominator > 0.
// All arithmetic in this project is integral; Rational exists so that local
// invariants (valuations, unit parts, signs) can be read off exactly.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int64_t n) : num_(n), den_(1) {}
    Rational(int64_t n, int64_t d) : num_(n), den_(d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        reduce();
    }

    int64_t num() const { return num_; }
    int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    bool operator==(const Rational& o) const = default;

    Rational operator*(const Rational& o) const {
        __int128 n = static_cast<__int128>(num_) * o.num_;
        __int128 d = static_cast<__int128>(den_) * o.den_;
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: product out of 64-bit range");
        Rational r;
        r.num_ = static_cast<int64_t>(n);
        r.den_ = static_cast<int64_t>(d);
        return r;
    }

    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }

    // p-adic valuation; p = 2 or an odd prime.
    int vp(int64_t p) const {
        if (num_ == 0) throw std::invalid_argument("vp: zero has no finite valuation");
        auto count = [p](int64_t x) {
            int v = 0;
            while (x % p == 0) {
                x /= p;
                ++v;
            }
            return v;
        };
        return count(num_ < 0 ? -num_ : num_) - count(den_);
    }

    // The p-free unit part reduced modulo m, where m is a power of the
    // same p (for p = 2) or p itself (odd p). Result in [0, m).
    uint64_t unit_mod(int64_t p, uint64_t m) const {
        if (num_ == 0) throw std::invalid_argument("unit_mod: zero");
        auto strip = [p](int64_t x) {
            while (x % p == 0) x /= p;
            return x;
        };
        int64_t n = strip(num_);
        int64_t d = strip(den_);
        uint64_t nm = static_cast<uint64_t>(((n % static_cast<int64_t>(m)) + static_cast<int64_t>(m)) % static_cast<int64_t>(m));
        uint64_t dm = static_cast<uint64_t>(d % static_cast<int64_t>(m));
        uint64_t dinv = (p == 2) ? inv_mod_pow2(dm, std::countr_zero(m)) : inv_mod_prime(dm, m);
        return mulmod(nm, dinv, m);
    }

    // Squarefree integer representing the same class modulo rational squares.
    int64_t squarefree_class() const {
        if (num_ == 0) throw std::invalid_argument("squarefree_class: zero");
        // num and den are coprime, so the parts multiply without interaction.
        __int128 s = static_cast<__int128>(squarefree_part(num_)) * squarefree_part(den_);
        if (s > INT64_MAX || s < INT64_MIN) throw std::overflow_error("squarefree_class: out of range");
        return static_cast<int64_t>(s);
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void reduce() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    int64_t num_;
    int64_t den_;
};

}  // namespace wkplus
