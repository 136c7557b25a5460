#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wkplus/numutil.hpp"

namespace wkplus::quadfield {

enum class SplittingType { Split, Inert, Ramified };

inline const char* to_string(SplittingType t) {
    switch (t) {
        case SplittingType::Split: return "split";
        case SplittingType::Inert: return "inert";
        default: return "ramified";
    }
}

// Squarefree core of n with Q(sqrt(n)) = Q(sqrt(core)). Rejects degenerate
// radicands (0 and perfect squares).
inline int64_t normalize_radicand(int64_t n) {
    if (n == 0) throw std::invalid_argument("normalize_radicand: 0 is not a radicand");
    int64_t core = squarefree_part(n);
    if (core == 1)
        throw std::invalid_argument("normalize_radicand: " + std::to_string(n) +
                                    " is a perfect square (degenerate field)");
    return core;
}

// The quadratic field E = Q(sqrt(d)), d squarefree, d != 0, 1.
class QuadraticField {
public:
    explicit QuadraticField(int64_t radicand) : d_(normalize_radicand(radicand)) {}

    int64_t d() const { return d_; }
    int real_place_count() const { return d_ > 0 ? 2 : 0; }

    int64_t discriminant() const {
        int64_t r = ((d_ % 4) + 4) % 4;
        return r == 1 ? d_ : 4 * d_;
    }

    std::vector<int64_t> ramified_primes() const {
        std::vector<int64_t> out;
        for (const auto& [p, e] : factor_abs(discriminant())) out.push_back(p);
        return out;  // factor_abs emits primes in ascending order
    }

    SplittingType splitting_at(int64_t p) const {
        if (p < 2 || !is_prime_u64(static_cast<uint64_t>(p)))
            throw std::invalid_argument("splitting_at: p must be prime");
        if (p == 2) {
            int64_t r = ((d_ % 8) + 8) % 8;
            if (r == 1) return SplittingType::Split;
            if (r == 5) return SplittingType::Inert;
            return SplittingType::Ramified;
        }
        if (d_ % p == 0) return SplittingType::Ramified;
        return legendre(d_, static_cast<uint64_t>(p)) == 1 ? SplittingType::Split : SplittingType::Inert;
    }

    bool operator==(const QuadraticField& o) const = default;

private:
    int64_t d_;
};

}  // namespace wkplus::quadfield
