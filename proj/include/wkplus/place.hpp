#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "wkplus/numutil.hpp"

namespace wkplus {

// A place of Q: the real place or a finite prime. The real place is a
// distinguished token, never a prime value.
class Place {
public:
    static Place real() { return Place(0); }
    static Place finite(int64_t p) {
        if (p < 2 || !is_prime_u64(static_cast<uint64_t>(p)))
            throw std::invalid_argument("Place: " + std::to_string(p) + " is not prime");
        return Place(p);
    }

    bool is_real() const { return p_ == 0; }
    bool is_finite() const { return p_ != 0; }
    bool is_dyadic() const { return p_ == 2; }
    int64_t prime() const {
        if (p_ == 0) throw std::logic_error("Place: real place has no prime");
        return p_;
    }

    bool operator==(const Place& o) const = default;

    std::string str() const { return p_ == 0 ? "inf" : std::to_string(p_); }

private:
    explicit Place(int64_t p) : p_(p) {}
    int64_t p_;
};

}  // namespace wkplus
