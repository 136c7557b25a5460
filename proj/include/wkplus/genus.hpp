#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wkplus/cyclo.hpp"
#include "wkplus/f2linalg.hpp"
#include "wkplus/homology.hpp"
#include "wkplus/kernels.hpp"
#include "wkplus/padic.hpp"
#include "wkplus/quadfield.hpp"

namespace wkplus::genus {

using cyclo::TwistIndex;
using quadfield::QuadraticField;

// Everything the rank pipeline knows about one (d, i) pair.
struct GenusReport {
    int64_t d = 0;
    int i = 0;
    int64_t discriminant = 0;
    std::vector<int64_t> ramified_primes;
    std::vector<int64_t> R;
    int r = 0;
    int t_plus = 0;
    int norm_index_log2 = 0;
    int x_term_log2_min = 0;
    int x_term_log2_max = 0;
    int rank = 0;
    bool codescent = false;
    bool vanishing_criterion = false;
    bool discrepancy = false;

    bool operator==(const GenusReport& o) const = default;
};

// t_i^+ = F2-dimension of the image of the D+ generators in the local
// square-class groups at the odd primes of R (each contributing a
// two-dimensional space: valuation parity and unit residue bit).
inline int t_plus(const QuadraticField& E, const TwistIndex& i, const std::vector<Rational>& dplus) {
    if (!i.odd()) throw std::invalid_argument("t_plus: twist must be odd");
    if (dplus.empty()) return 0;  // degenerate presentation; callers surface a warning
    std::vector<int64_t> odd_r;
    for (int64_t p : cyclo::r_set(E))
        if (p != 2) odd_r.push_back(p);
    if (odd_r.size() > 30) throw std::invalid_argument("t_plus: too many ramified primes");
    std::vector<uint64_t> rows;
    for (const Rational& g : dplus) {
        if (g.is_zero()) throw std::invalid_argument("t_plus: zero generator");
        uint64_t row = 0;
        for (size_t k = 0; k < odd_r.size(); ++k) {
            padic::OddLocalClass c = padic::odd_local_class(g, odd_r[k]);
            if (c.valuation_odd) row |= 1ull << (2 * k);
            if (!c.unit_is_residue) row |= 1ull << (2 * k + 1);
        }
        rows.push_back(row);
    }
    return f2_rank(rows);
}

struct VanishingVerdict {
    bool vanishes;
    bool ambiguous;  // no odd ramified prime: the +-3 mod 8 reading does not
                     // apply and the rank formula decides
};

namespace detail {

inline std::vector<Rational> default_dplus() { return {Rational(2)}; }

inline int raw_rank(const QuadraticField& E, const TwistIndex& i, const std::vector<Rational>& dplus) {
    int r = static_cast<int>(cyclo::r_set(E).size());
    return r - 1 - t_plus(E, i, dplus);
}

}  // namespace detail

// The kernel vanishes iff E is ramified at no odd prime beyond a single
// ell = +-3 mod 8. With no odd ramified prime the criterion is ambiguous and
// the verdict is taken from the rank formula (default generators).
inline VanishingVerdict vanishing_criterion(const QuadraticField& E) {
    std::vector<int64_t> odd;
    for (int64_t p : E.ramified_primes())
        if (p != 2) odd.push_back(p);
    if (odd.size() > 1) return {false, false};
    if (odd.size() == 1) {
        int64_t m = ((odd[0] % 8) + 8) % 8;
        return {m == 3 || m == 5, false};
    }
    if (cyclo::is_in_cyclo_z2_global(E)) return {true, true};
    return {detail::raw_rank(E, TwistIndex(3), detail::default_dplus()) == 0, true};
}

// 2-rank of the positive etale wild kernel of E for odd i >= 3, assembled
// into a full report. Codescent branch when E lies in the cyclotomic
// Z_2-tower of Q; otherwise rank = r - 1 - t_plus. A negative raw rank is
// clamped to 0 and flagged, never hidden.
inline GenusReport rank_quadratic(const QuadraticField& E, const TwistIndex& i,
                                  const std::vector<Rational>& dplus = detail::default_dplus()) {
    if (!i.odd()) throw std::invalid_argument("rank_quadratic: twist must be odd (even twists need no positive theory)");
    GenusReport rep;
    rep.d = E.d();
    rep.i = i.i;
    rep.discriminant = E.discriminant();
    rep.ramified_primes = E.ramified_primes();
    rep.R = cyclo::r_set(E);
    rep.r = static_cast<int>(rep.R.size());
    rep.t_plus = t_plus(E, i, dplus);
    rep.norm_index_log2 = kernels::norm_index_log2(dplus, E);
    rep.x_term_log2_min = 0;
    rep.x_term_log2_max = rep.R.empty() ? 1 : 0;
    rep.codescent = cyclo::is_in_cyclo_z2_global(E);

    bool clamped = false;
    if (rep.codescent) {
        rep.rank = 0;
    } else {
        int raw = rep.r - 1 - rep.t_plus;
        clamped = raw < 0;
        rep.rank = clamped ? 0 : raw;
    }
    rep.vanishing_criterion = vanishing_criterion(E).vanishes;
    rep.discrepancy = clamped || ((rep.rank == 0) != rep.vanishing_criterion);
    return rep;
}

// log2 of |(WK+ E)^G| / |WK+ Q| for the non-codescent quadratic case:
// (r - 1 + t_X) - norm index exponent, with the X-term exponent collapsed to
// 0 because R is nonempty whenever E is outside the tower.
inline int genus_ratio_quadratic(const QuadraticField& E, const TwistIndex& i,
                                 const std::vector<Rational>& dplus = detail::default_dplus()) {
    if (!i.odd()) throw std::invalid_argument("genus_ratio_quadratic: twist must be odd");
    if (cyclo::is_in_cyclo_z2_global(E))
        throw std::invalid_argument("genus_ratio_quadratic: codescent case, use rank_quadratic");
    std::vector<int64_t> R = cyclo::r_set(E);
    if (R.empty()) throw std::logic_error("genus_ratio_quadratic: R empty outside the codescent branch");
    return static_cast<int>(R.size()) - 1 - kernels::norm_index_log2(dplus, E);
}

// Order bookkeeping for the general genus identity: the caller supplies all
// constituent orders as log2 integers and this evaluates
// x + sum(local H_1) - global H_1 - norm index. No arithmetic of E happens
// here; a negative result means the inputs cannot be orders of the groups in
// the identity.
inline int genus_ratio_general(int x_log2, const std::vector<int>& local_h1_log2, int global_h1_log2,
                               int norm_index_log2) {
    if (x_log2 < 0 || global_h1_log2 < 0 || norm_index_log2 < 0)
        throw std::invalid_argument("genus_ratio_general: orders must be nonnegative log2");
    long long sum = x_log2;
    for (int l : local_h1_log2) {
        if (l < 0) throw std::invalid_argument("genus_ratio_general: orders must be nonnegative log2");
        sum += l;
    }
    sum -= global_h1_log2;
    sum -= norm_index_log2;
    if (sum < 0) throw std::invalid_argument("genus_ratio_general: inconsistent input, ratio below 1");
    return static_cast<int>(sum);
}

// Alternating product test for the orders of an exact sequence of finite
// groups (trivial ends included by the caller).
inline bool exact_sequence_order_check(const std::vector<uint64_t>& orders) {
    unsigned __int128 even = 1, odd = 1;
    for (size_t k = 0; k < orders.size(); ++k) {
        if (orders[k] == 0) throw std::invalid_argument("exact_sequence_order_check: zero order");
        unsigned __int128& side = (k % 2 == 0) ? even : odd;
        side *= orders[k];
        if (side >> 120) throw std::overflow_error("exact_sequence_order_check: product too large");
    }
    return even == odd;
}

// Classical genus theory: the 2-rank of the narrow class group of a
// quadratic field is (number of ramified primes) - 1. Used as an independent
// sanity oracle for the i = 1 analogue.
inline int narrow_2rank_oracle(const QuadraticField& E) {
    return static_cast<int>(E.ramified_primes().size()) - 1;
}

}  // namespace wkplus::genus
