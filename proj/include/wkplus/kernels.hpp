#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wkplus/f2linalg.hpp"
#include "wkplus/padic.hpp"
#include "wkplus/quadfield.hpp"
#include "wkplus/rational.hpp"

namespace wkplus::kernels {

using quadfield::QuadraticField;

// Element a + b*sqrt(d) of a quadratic field (b = 0 for rationals).
struct QuadElt {
    Rational a;
    Rational b;

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool is_rational() const { return b.is_zero(); }

    QuadElt times(const QuadElt& o, int64_t d) const {
        return {a * o.a + o.b * b * Rational(d), a * o.b + b * o.a};
    }

    std::string str() const {
        if (b.is_zero()) return a.str();
        return a.str() + (b.sign() >= 0 ? "+" : "") + b.str() + "*sqrt(d)";
    }
};

// Sign bits at the real embeddings: 0 = positive, 1 = negative. Empty for
// totally imaginary fields.
struct SignatureVector {
    std::vector<int> bits;
    bool all_positive() const {
        return std::all_of(bits.begin(), bits.end(), [](int b) { return b == 0; });
    }
    bool operator==(const SignatureVector& o) const = default;
};

namespace detail {

inline int cmp_rationals(const Rational& x, const Rational& y) {
    __int128 l = static_cast<__int128>(x.num()) * y.den();
    __int128 r = static_cast<__int128>(y.num()) * x.den();
    return l < r ? -1 : (l > r ? 1 : 0);
}

// Sign of a + b*sqrt(d) with sqrt(d) sent to sqrt_sign * sqrt(d), d > 0.
// Exact: compares a^2 with b^2 d when the two terms disagree in sign.
inline int embedded_sign(const Rational& a, const Rational& b, int64_t d, int sqrt_sign) {
    if (b.is_zero()) return a.sign();
    int bs = b.sign() * sqrt_sign;
    if (a.is_zero()) return bs;
    if (a.sign() == bs) return a.sign();
    int c = cmp_rationals(a * a, b * b * Rational(d));
    if (c == 0) throw std::logic_error("embedded_sign: sqrt(d) rational, invalid field");
    return c > 0 ? a.sign() : bs;
}

}  // namespace detail

inline SignatureVector signature_vector(const Rational& x) {
    if (x.is_zero()) throw std::invalid_argument("signature_vector: zero");
    return {{x.sign() > 0 ? 0 : 1}};
}

inline SignatureVector signature_vector(const QuadElt& x, const QuadraticField& F) {
    if (x.is_zero()) throw std::invalid_argument("signature_vector: zero");
    if (F.real_place_count() == 0) return {{}};
    SignatureVector s;
    for (int sqrt_sign : {1, -1})
        s.bits.push_back(detail::embedded_sign(x.a, x.b, F.d(), sqrt_sign) > 0 ? 0 : 1);
    return s;
}

enum class Provenance { Configured, UserSupplied };

// Presentation of the Tate kernel D^{(i)} by generators modulo squares. Over
// Q the independence check is exact (sign and valuation parities over the
// support); over a quadratic base it is certified through signatures and the
// square classes of norms, and an inconclusive certification is an error.
class TateKernelPresentation {
public:
    TateKernelPresentation(std::optional<QuadraticField> base, std::vector<QuadElt> generators,
                           Provenance provenance)
        : base_(std::move(base)), gens_(std::move(generators)), provenance_(provenance) {
        for (const QuadElt& g : gens_) {
            if (g.is_zero()) throw std::invalid_argument("TateKernelPresentation: zero generator");
            if (!base_ && !g.is_rational())
                throw std::invalid_argument("TateKernelPresentation: irrational generator over Q");
        }
        if (gens_.size() > 32) throw std::invalid_argument("TateKernelPresentation: too many generators");
        certify_independence();
    }

    static TateKernelPresentation over_q(std::vector<Rational> generators, Provenance provenance) {
        std::vector<QuadElt> g;
        for (Rational& r : generators) g.push_back({r, Rational(0)});
        return TateKernelPresentation(std::nullopt, std::move(g), provenance);
    }

    const std::optional<QuadraticField>& base() const { return base_; }
    const std::vector<QuadElt>& generators() const { return gens_; }
    Provenance provenance() const { return provenance_; }

    int real_place_count() const { return base_ ? base_->real_place_count() : 1; }

    SignatureVector signature_of(const QuadElt& g) const {
        if (!base_) return signature_vector(g.a);
        return signature_vector(g, *base_);
    }

private:
    // F2 coordinates of a rational modulo squares: sign bit, then valuation
    // parities at the primes of `support`.
    static uint64_t square_class_bits(const Rational& q, const std::vector<int64_t>& support) {
        uint64_t bits = q.sign() < 0 ? 1 : 0;
        int64_t sf = q.squarefree_class();
        for (size_t k = 0; k < support.size(); ++k)
            if (sf % support[k] == 0) bits |= 1ull << (k + 1);
        return bits;
    }

    static std::vector<int64_t> combined_support(const std::vector<Rational>& values) {
        std::vector<int64_t> primes;
        for (const Rational& q : values) {
            int64_t sf = q.squarefree_class();
            for (const auto& [p, e] : factor_abs(sf)) primes.push_back(p);
        }
        std::sort(primes.begin(), primes.end());
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
        return primes;
    }

    void certify_independence() const {
        std::vector<Rational> carriers;
        bool exact = !base_;
        for (const QuadElt& g : gens_) {
            if (!base_) {
                carriers.push_back(g.a);
            } else {
                // norm to Q: multiplicative, kills squares of E
                carriers.push_back(g.a * g.a - g.b * g.b * Rational(base_->d()));
            }
        }
        std::vector<int64_t> support = combined_support(carriers);
        if (support.size() + 1 + 2 > 64)
            throw std::invalid_argument("TateKernelPresentation: generator support too large");
        std::vector<uint64_t> rows;
        for (size_t i = 0; i < gens_.size(); ++i) {
            uint64_t row = square_class_bits(carriers[i], support);
            if (base_) {
                SignatureVector s = signature_of(gens_[i]);
                for (size_t k = 0; k < s.bits.size(); ++k)
                    if (s.bits[k]) row |= 1ull << (support.size() + 1 + k);
            }
            rows.push_back(row);
        }
        if (f2_rank(rows) == static_cast<int>(gens_.size())) return;
        if (exact)
            throw std::invalid_argument("TateKernelPresentation: generators are dependent modulo squares");
        throw std::invalid_argument(
            "TateKernelPresentation: independence certification inconclusive for quadratic-base "
            "generators (signature and norm square classes do not separate them)");
    }

    std::optional<QuadraticField> base_;
    std::vector<QuadElt> gens_;
    Provenance provenance_;
};

namespace detail {

inline std::vector<uint64_t> signature_rows(const TateKernelPresentation& P) {
    std::vector<uint64_t> rows;
    for (const QuadElt& g : P.generators()) {
        SignatureVector s = P.signature_of(g);
        uint64_t row = 0;
        for (size_t k = 0; k < s.bits.size(); ++k)
            if (s.bits[k]) row |= 1ull << k;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace detail

// delta_i = corank of the signature map on the presented kernel: number of
// real places minus the F2 rank of the signature matrix.
inline int delta_i(const TateKernelPresentation& P) {
    return P.real_place_count() - f2_rank(detail::signature_rows(P));
}

// Basis of the totally positive part D^{+(i)}: kernel of the signature
// matrix, each kernel combination realized as the product of its generators
// (reduced to a squarefree representative over Q).
inline std::vector<QuadElt> d_plus_basis(const TateKernelPresentation& P) {
    std::vector<uint64_t> rows = detail::signature_rows(P);
    std::vector<uint64_t> combos = f2_left_kernel(rows, P.real_place_count());
    std::vector<QuadElt> basis;
    int64_t d = P.base() ? P.base()->d() : 0;
    for (uint64_t mask : combos) {
        QuadElt prod{Rational(1), Rational(0)};
        for (size_t i = 0; i < P.generators().size(); ++i)
            if (mask >> i & 1) prod = prod.times(P.generators()[i], d);
        if (prod.is_rational()) prod.a = Rational(prod.a.squarefree_class());
        basis.push_back(prod);
    }
    return basis;
}

// log2 of [D+ : D+ and N_G E*] for E = Q(sqrt(d)): rank over F2 of the
// Hilbert-symbol matrix of the generators against d, with one column per
// place where a symbol can be nontrivial (infinity, 2, the odd primes of d
// and of the generators). By the Hasse norm theorem for cyclic extensions
// this rank is the index exponent.
inline int norm_index_log2(const std::vector<Rational>& dplus, const QuadraticField& E) {
    if (dplus.empty()) return 0;
    std::vector<Place> places{Place::real(), Place::finite(2)};
    std::vector<int64_t> odd;
    for (const auto& [p, e] : factor_abs(E.d()))
        if (p > 2) odd.push_back(p);
    for (const Rational& g : dplus) {
        if (g.is_zero()) throw std::invalid_argument("norm_index: zero generator");
        for (const auto& [p, e] : factor_abs(g.squarefree_class()))
            if (p > 2) odd.push_back(p);
    }
    std::sort(odd.begin(), odd.end());
    odd.erase(std::unique(odd.begin(), odd.end()), odd.end());
    for (int64_t p : odd) places.push_back(Place::finite(p));
    if (places.size() > 62) throw std::invalid_argument("norm_index: too many places");

    std::vector<uint64_t> rows;
    Rational dd(E.d());
    for (const Rational& g : dplus) {
        uint64_t row = 0;
        for (size_t k = 0; k < places.size(); ++k)
            if (padic::hilbert(g, dd, places[k]) == -1) row |= 1ull << k;
        rows.push_back(row);
    }
    return f2_rank(rows);
}

inline uint64_t norm_index(const std::vector<Rational>& dplus, const QuadraticField& E) {
    return 1ull << norm_index_log2(dplus, E);
}

}  // namespace wkplus::kernels
