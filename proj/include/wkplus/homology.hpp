#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "wkplus/cyclo.hpp"
#include "wkplus/numutil.hpp"
#include "wkplus/quadfield.hpp"

namespace wkplus::homology {

using cyclo::TwistIndex;
using quadfield::QuadraticField;

// Finite abelian 2-group (+) Z/2^{e_1} x ... x Z/2^{e_n} carrying an action
// of a cyclic group, given by an integer matrix applied per coordinate
// modulo the target coordinate's order. Only |G| = 2 is implemented; the
// declared order is kept so the cyclic-2^n generalization has a seam.
class Finite2Module {
public:
    Finite2Module(std::vector<int> exponents, std::vector<std::vector<int64_t>> action, int group_order = 2)
        : exps_(std::move(exponents)), sigma_(std::move(action)) {
        if (group_order != 2)
            throw std::invalid_argument("Finite2Module: only cyclic group order 2 is implemented");
        const size_t n = exps_.size();
        if (n == 0) throw std::invalid_argument("Finite2Module: empty module");
        total_exp_ = 0;
        for (int e : exps_) {
            if (e < 1 || e > 60) throw std::invalid_argument("Finite2Module: coordinate order out of range");
            total_exp_ += e;
        }
        if (total_exp_ > 60) throw std::invalid_argument("Finite2Module: module too large (|M| > 2^60)");
        if (sigma_.size() != n) throw std::invalid_argument("Finite2Module: action is not n x n");
        for (size_t j = 0; j < n; ++j) {
            if (sigma_[j].size() != n) throw std::invalid_argument("Finite2Module: action is not n x n");
            for (size_t k = 0; k < n; ++k) {
                int need = std::max(0, exps_[j] - exps_[k]);
                uint64_t mod = 1ull << exps_[j];
                uint64_t v = static_cast<uint64_t>(((sigma_[j][k] % static_cast<int64_t>(mod)) +
                                                    static_cast<int64_t>(mod)) % static_cast<int64_t>(mod));
                if (need > 0 && (v & ((1ull << need) - 1)) != 0)
                    throw std::invalid_argument("Finite2Module: action not well-defined on mixed orders");
                sigma_[j][k] = static_cast<int64_t>(v);
            }
        }
        check_involution();
        // sigma^2 = id makes sigma its own inverse, so it is automatically
        // an automorphism of the module.
    }

    size_t rank() const { return exps_.size(); }
    const std::vector<int>& exponents() const { return exps_; }
    const std::vector<std::vector<int64_t>>& action() const { return sigma_; }
    int total_exponent() const { return total_exp_; }
    bool enumerable() const { return total_exp_ <= 16; }

    // sigma applied to a coordinate tuple.
    std::vector<uint64_t> apply(const std::vector<uint64_t>& x) const {
        const size_t n = rank();
        std::vector<uint64_t> y(n);
        for (size_t j = 0; j < n; ++j) {
            unsigned __int128 acc = 0;
            for (size_t k = 0; k < n; ++k) acc += static_cast<unsigned __int128>(sigma_[j][k]) * x[k];
            y[j] = static_cast<uint64_t>(acc & ((1ull << exps_[j]) - 1));
        }
        return y;
    }

private:
    void check_involution() const {
        const size_t n = rank();
        for (size_t j = 0; j < n; ++j) {
            uint64_t mod = 1ull << exps_[j];
            for (size_t k = 0; k < n; ++k) {
                unsigned __int128 acc = 0;
                for (size_t t = 0; t < n; ++t)
                    acc += static_cast<unsigned __int128>(sigma_[j][t]) * static_cast<uint64_t>(sigma_[t][k]);
                uint64_t got = static_cast<uint64_t>(acc % mod);
                if (got != (j == k ? 1u : 0u))
                    throw std::invalid_argument("Finite2Module: action does not square to the identity");
            }
        }
    }

    std::vector<int> exps_;
    std::vector<std::vector<int64_t>> sigma_;
    int total_exp_ = 0;
};

struct TateOrders {
    uint64_t h0_order;
    uint64_t h_minus1_order;
};

namespace detail {

inline std::vector<uint64_t> decode(const Finite2Module& M, uint32_t code) {
    std::vector<uint64_t> x(M.rank());
    for (size_t j = 0; j < M.rank(); ++j) {
        int e = M.exponents()[j];
        x[j] = code & ((1u << e) - 1);
        code >>= e;
    }
    return x;
}

inline uint32_t encode(const Finite2Module& M, const std::vector<uint64_t>& x) {
    uint32_t code = 0;
    int off = 0;
    for (size_t j = 0; j < M.rank(); ++j) {
        code |= static_cast<uint32_t>(x[j]) << off;
        off += M.exponents()[j];
    }
    return code;
}

// |ker f| / |im g| by walking every element; requires im g contained in
// ker f, which holds for the norm/augmentation pairs used here.
template <typename F, typename G>
uint64_t quotient_order_by_enumeration(const Finite2Module& M, F&& in_kernel, G&& image_of) {
    if (!M.enumerable()) throw std::invalid_argument("tate enumeration: module larger than 2^16");
    const uint32_t size = 1u << M.total_exponent();
    uint64_t kernel = 0;
    std::vector<uint32_t> image;
    image.reserve(size);
    for (uint32_t c = 0; c < size; ++c) {
        std::vector<uint64_t> x = decode(M, c);
        std::vector<uint64_t> sx = M.apply(x);
        if (in_kernel(M, x, sx)) ++kernel;
        image.push_back(encode(M, image_of(M, x, sx)));
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (kernel % image.size() != 0) throw std::logic_error("tate enumeration: image does not sit in kernel");
    return kernel / image.size();
}

// log2 of [Z^n : L] for the lattice L spanned by the columns of an n x m
// integer matrix containing diag(2^{e_j}) among its columns. The index is a
// 2-power, so the whole diagonalization runs modulo 2^B ("Smith normal form
// with modular post-reduction"); entries never grow.
inline int lattice_index_log2(std::vector<std::vector<uint64_t>> mat, int B) {
    const size_t n = mat.size();
    const size_t m = mat[0].size();
    const uint64_t mask = (B >= 64) ? ~0ull : ((1ull << B) - 1);
    int total = 0;
    for (size_t t = 0; t < n; ++t) {
        size_t pr = n, pc = m;
        int pv = B;
        for (size_t r = t; r < n; ++r)
            for (size_t c = t; c < m; ++c) {
                uint64_t v = mat[r][c] & mask;
                if (v == 0) continue;
                int w = std::countr_zero(v);
                if (w < pv) {
                    pv = w;
                    pr = r;
                    pc = c;
                }
            }
        if (pr == n) throw std::logic_error("lattice_index_log2: rank deficiency (no pivot found)");
        std::swap(mat[pr], mat[t]);
        for (size_t r = 0; r < n; ++r) std::swap(mat[r][pc], mat[r][t]);
        const uint64_t unit_inv = inv_mod_pow2((mat[t][t] & mask) >> pv, B);
        // clear the pivot row with column operations
        for (size_t c = t + 1; c < m; ++c) {
            uint64_t v = mat[t][c] & mask;
            if (v == 0) continue;
            uint64_t q = ((v >> pv) * unit_inv) & mask;
            for (size_t r = t; r < n; ++r) mat[r][c] = (mat[r][c] - q * mat[r][t]) & mask;
        }
        // clear the pivot column with row operations
        for (size_t r = t + 1; r < n; ++r) {
            uint64_t v = mat[r][t] & mask;
            if (v == 0) continue;
            uint64_t q = ((v >> pv) * unit_inv) & mask;
            for (size_t c = t; c < m; ++c) mat[r][c] = (mat[r][c] - q * mat[t][c]) & mask;
        }
        total += pv;
    }
    return total;
}

// [Z^n : (sigma + shift) Z^n + D Z^n] as a log2, i.e. |ker(sigma + shift)|.
inline int kernel_log2(const Finite2Module& M, int shift) {
    const size_t n = M.rank();
    const int B = std::min(62, M.total_exponent() + 2);
    std::vector<std::vector<uint64_t>> mat(n, std::vector<uint64_t>(2 * n, 0));
    for (size_t j = 0; j < n; ++j) {
        for (size_t k = 0; k < n; ++k) {
            int64_t v = M.action()[j][k] + (j == k ? shift : 0);
            uint64_t mod = 1ull << B;
            mat[j][k] = static_cast<uint64_t>(((v % static_cast<int64_t>(mod)) + static_cast<int64_t>(mod)) %
                                              static_cast<int64_t>(mod));
        }
        mat[j][n + j] = 1ull << M.exponents()[j];
    }
    return lattice_index_log2(std::move(mat), B);
}

}  // namespace detail

// |ker(sigma - 1) / im(1 + sigma)| by exhaustive enumeration.
inline uint64_t tate_h0_by_enumeration(const Finite2Module& M) {
    return detail::quotient_order_by_enumeration(
        M,
        [](const Finite2Module&, const std::vector<uint64_t>& x, const std::vector<uint64_t>& sx) { return x == sx; },
        [](const Finite2Module& mod, const std::vector<uint64_t>& x, const std::vector<uint64_t>& sx) {
            std::vector<uint64_t> s(x.size());
            for (size_t j = 0; j < x.size(); ++j) s[j] = (x[j] + sx[j]) & ((1ull << mod.exponents()[j]) - 1);
            return s;
        });
}

// |ker(1 + sigma) / im(sigma - 1)| by exhaustive enumeration.
inline uint64_t tate_h_minus1_by_enumeration(const Finite2Module& M) {
    return detail::quotient_order_by_enumeration(
        M,
        [](const Finite2Module& mod, const std::vector<uint64_t>& x, const std::vector<uint64_t>& sx) {
            for (size_t j = 0; j < x.size(); ++j)
                if (((x[j] + sx[j]) & ((1ull << mod.exponents()[j]) - 1)) != 0) return false;
            return true;
        },
        [](const Finite2Module& mod, const std::vector<uint64_t>& x, const std::vector<uint64_t>& sx) {
            std::vector<uint64_t> s(x.size());
            for (size_t j = 0; j < x.size(); ++j) s[j] = (sx[j] - x[j]) & ((1ull << mod.exponents()[j]) - 1);
            return s;
        });
}

// Smith-normal-form route: |ker(sigma-1)|/|im(sigma+1)| via lattice indices,
// using |im A| = |M| / [Z^n : A Z^n + D Z^n].
inline uint64_t tate_h0_by_snf(const Finite2Module& M) {
    int log2 = detail::kernel_log2(M, -1) + detail::kernel_log2(M, +1) - M.total_exponent();
    if (log2 < 0) throw std::logic_error("tate_h0_by_snf: negative exponent");
    return 1ull << log2;
}

inline uint64_t tate_h_minus1_by_snf(const Finite2Module& M) {
    int log2 = detail::kernel_log2(M, +1) + detail::kernel_log2(M, -1) - M.total_exponent();
    if (log2 < 0) throw std::logic_error("tate_h_minus1_by_snf: negative exponent");
    return 1ull << log2;
}

inline uint64_t tate_h0(const Finite2Module& M) {
    return M.enumerable() ? tate_h0_by_enumeration(M) : tate_h0_by_snf(M);
}

inline uint64_t tate_h_minus1(const Finite2Module& M) {
    return M.enumerable() ? tate_h_minus1_by_enumeration(M) : tate_h_minus1_by_snf(M);
}

inline TateOrders tate_orders(const Finite2Module& M) { return {tate_h0(M), tate_h_minus1(M)}; }

// Herbrand quotient of a finite module over a cyclic group is 1; must always
// hold, kept as a consistency oracle.
inline bool herbrand_check(const Finite2Module& M) { return tate_h0(M) == tate_h_minus1(M); }

// |H_1(G_v, H^2(E_w, Z_2(i)))| for odd i: 2 exactly at the primes of R, 1
// elsewhere (split or unramified-outside-R decomposition groups give
// vanishing homology).
inline int local_h1_order(const QuadraticField& E, const TwistIndex& i, int64_t v) {
    if (!i.odd())
        throw std::invalid_argument("local_h1_order: even twists are outside the concrete pipeline");
    if (v < 2 || !is_prime_u64(static_cast<uint64_t>(v)))
        throw std::invalid_argument("local_h1_order: v must be a finite prime");
    for (int64_t p : cyclo::r_set(E))
        if (p == v) return 2;
    return 1;
}

struct GlobalH1 {
    int order;       // 1 or 2
    bool codescent;  // true when E sits in the cyclotomic Z_2-tower and the
                     // quantity is never consumed
};

// |H_1(G, H^0(E, Q_2/Z_2(1-i))^dual)| for odd i: 2 whenever E is outside the
// cyclotomic Z_2-extension of Q; in the codescent branch the order is not
// consumed and is reported as 1 with the marker set.
inline GlobalH1 global_h1_order(const QuadraticField& E, const TwistIndex& i) {
    (void)i;
    if (cyclo::is_in_cyclo_z2_global(E)) return {1, true};
    return {2, false};
}

}  // namespace wkplus::homology
