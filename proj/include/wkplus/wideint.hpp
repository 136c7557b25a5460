#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wkplus/numutil.hpp"

namespace wkplus {

// Minimal arbitrary-width unsigned integer: just enough (multiply by a word,
// decrement, trailing-zero count) to evaluate v2(n^k - 1) directly.
class WideUint {
public:
    explicit WideUint(uint64_t v) {
        if (v) limbs_.push_back(v);
    }

    static WideUint pow(uint64_t base, uint64_t exp) {
        WideUint r(1);
        for (uint64_t i = 0; i < exp; ++i) r.mul_word(base);
        return r;
    }

    void mul_word(uint64_t w) {
        unsigned __int128 carry = 0;
        for (auto& limb : limbs_) {
            unsigned __int128 t = static_cast<unsigned __int128>(limb) * w + carry;
            limb = static_cast<uint64_t>(t);
            carry = t >> 64;
        }
        if (carry) limbs_.push_back(static_cast<uint64_t>(carry));
    }

    void decrement() {
        if (limbs_.empty()) throw std::underflow_error("WideUint: decrement of zero");
        for (auto& limb : limbs_) {
            if (limb-- != 0) break;
        }
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    bool is_zero() const { return limbs_.empty(); }

    int trailing_zero_bits() const {
        if (limbs_.empty()) throw std::invalid_argument("WideUint: zero has no finite 2-adic valuation");
        int v = 0;
        for (auto limb : limbs_) {
            if (limb == 0) {
                v += 64;
            } else {
                return v + std::countr_zero(limb);
            }
        }
        return v;
    }

private:
    std::vector<uint64_t> limbs_;  // little-endian, no trailing zero limbs
};

// Direct evaluation of v2(base^exp - 1); the independent route against the
// lifting-the-exponent closed form.
inline int v2_pow_minus_one_direct(uint64_t base, uint64_t exp) {
    WideUint x = WideUint::pow(base, exp);
    x.decrement();
    return x.trailing_zero_bits();
}

}  // namespace wkplus
