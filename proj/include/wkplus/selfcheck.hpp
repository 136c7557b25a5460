#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wkplus/cyclo.hpp"
#include "wkplus/genus.hpp"
#include "wkplus/homology.hpp"
#include "wkplus/kernels.hpp"
#include "wkplus/padic.hpp"
#include "wkplus/wideint.hpp"

namespace wkplus::selfcheck {

// The Hilbert symbol is injectable so fault-injection tests can verify that
// a corrupted symbol is actually caught by the sweeps.
struct Hooks {
    std::function<int(const Rational&, const Rational&, const Place&)> hilbert =
        [](const Rational& a, const Rational& b, const Place& v) { return padic::hilbert(a, b, v); };
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    long long cases = 0;
    std::string counterexample;  // first failure, empty when passed

    void fail(const std::string& what) {
        if (passed) {
            passed = false;
            counterexample = what;
        }
    }
};

// Product formula sweep: prod over v of (a,b)_v = +1 for all nonzero
// integers |a|, |b| <= 50.
inline SuiteResult run_suite_product(const Hooks& hooks = {}) {
    SuiteResult res{"product"};
    for (int64_t a = -50; a <= 50 && res.passed; ++a) {
        if (a == 0) continue;
        for (int64_t b = -50; b <= 50; ++b) {
            if (b == 0) continue;
            ++res.cases;
            int prod = 1;
            Rational ra(a), rb(b);
            for (const Place& v : padic::relevant_places(ra, rb)) prod *= hooks.hilbert(ra, rb, v);
            if (prod != 1) {
                std::ostringstream os;
                os << "a=" << a << " b=" << b << " product=" << prod;
                res.fail(os.str());
                break;
            }
        }
    }
    return res;
}

// Closed-form symbols against the primitive-solution search modulo p^3
// (odd p <= 13) and 2^8, for all nonzero |a|, |b| <= 20.
inline SuiteResult run_suite_brute(const Hooks& hooks = {}) {
    SuiteResult res{"brute"};
    for (int64_t p : {2, 3, 5, 7, 11, 13}) {
        Place v = Place::finite(p);
        for (int64_t a = -20; a <= 20 && res.passed; ++a) {
            if (a == 0) continue;
            for (int64_t b = -20; b <= 20; ++b) {
                if (b == 0) continue;
                ++res.cases;
                int closed = hooks.hilbert(Rational(a), Rational(b), v);
                int searched = padic::hilbert_by_search(a, b, p);
                if (closed != searched) {
                    std::ostringstream os;
                    os << "p=" << p << " a=" << a << " b=" << b << " closed=" << closed
                       << " search=" << searched;
                    res.fail(os.str());
                    break;
                }
            }
        }
    }
    return res;
}

// Lifting-the-exponent closed form against direct wide-integer evaluation.
inline SuiteResult run_suite_lte() {
    SuiteResult res{"lte"};
    for (int64_t ell = 3; ell <= 49; ell += 2) {
        for (int64_t k = 1; k <= 40; ++k) {
            ++res.cases;
            int lte = padic::v2_pow_minus_one(ell, k);
            int direct = v2_pow_minus_one_direct(static_cast<uint64_t>(ell), static_cast<uint64_t>(k));
            if (lte != direct) {
                std::ostringstream os;
                os << "ell=" << ell << " k=" << k << " lte=" << lte << " direct=" << direct;
                res.fail(os.str());
                return res;
            }
        }
    }
    return res;
}

namespace detail {

using Matrix = std::vector<std::vector<int64_t>>;

inline Matrix identity(size_t n) {
    Matrix m(n, std::vector<int64_t>(n, 0));
    for (size_t j = 0; j < n; ++j) m[j][j] = 1;
    return m;
}

inline Matrix mat_mul(const Matrix& A, const Matrix& B, const std::vector<int>& exps) {
    size_t n = exps.size();
    Matrix C(n, std::vector<int64_t>(n, 0));
    for (size_t j = 0; j < n; ++j) {
        int64_t mod = int64_t(1) << exps[j];
        for (size_t k = 0; k < n; ++k) {
            __int128 acc = 0;
            for (size_t t = 0; t < n; ++t) acc += static_cast<__int128>(A[j][t]) * B[t][k];
            C[j][k] = static_cast<int64_t>(((acc % mod) + mod) % mod);
        }
    }
    return C;
}

// Random involution on a random module with |M| <= 2^10: a block-diagonal
// involution (signs, 2^{e-1}+-1 units, swaps of equal-order pairs)
// conjugated by random diagonal units and transvections, both of which have
// closed-form inverses.
inline homology::Finite2Module random_involution_module(std::mt19937_64& rng) {
    size_t n = 1 + rng() % 4;
    std::vector<int> exps;
    int budget = 10;
    for (size_t j = 0; j < n; ++j) {
        int room = budget - static_cast<int>(n - j - 1);
        int e = 1 + static_cast<int>(rng() % static_cast<uint64_t>(std::min(4, room)));
        exps.push_back(e);
        budget -= e;
    }

    Matrix base(n, std::vector<int64_t>(n, 0));
    for (size_t j = 0; j < n;) {
        if (j + 1 < n && exps[j] == exps[j + 1] && rng() % 3 == 0) {
            base[j][j + 1] = 1;  // swap pair: the induced-module block
            base[j + 1][j] = 1;
            j += 2;
            continue;
        }
        int64_t mod = int64_t(1) << exps[j];
        std::vector<int64_t> choices{1, mod - 1};
        if (exps[j] >= 2) {
            choices.push_back(mod / 2 - 1);
            choices.push_back(mod / 2 + 1);
        }
        base[j][j] = choices[rng() % choices.size()];
        ++j;
    }

    Matrix sigma = base;
    for (int step = 0; step < 6; ++step) {
        Matrix T = identity(n), Tinv = identity(n);
        if (n >= 2 && rng() % 2 == 0) {
            size_t j = rng() % n, k = rng() % n;
            if (j == k) k = (k + 1) % n;
            int shift = std::max(0, exps[j] - exps[k]);
            int64_t c = static_cast<int64_t>((rng() % 4) + 1) << shift;
            T[j][k] = c;
            Tinv[j][k] = -c;
        } else {
            size_t j = rng() % n;
            int64_t mod = int64_t(1) << exps[j];
            int64_t u = static_cast<int64_t>(rng() % static_cast<uint64_t>(mod)) | 1;
            T[j][j] = u;
            Tinv[j][j] = static_cast<int64_t>(
                inv_mod_pow2(static_cast<uint64_t>(u), exps[j]) & ((uint64_t(1) << exps[j]) - 1));
        }
        sigma = mat_mul(mat_mul(T, sigma, exps), Tinv, exps);
    }
    return homology::Finite2Module(exps, sigma);
}

}  // namespace detail

// Herbrand sweep: fixed fixtures plus randomized involutions; checks
// h^0 = h^-1 and that the enumeration and Smith-form routes agree.
inline SuiteResult run_suite_herbrand(uint64_t seed = 0x77696c64u, int random_count = 600) {
    SuiteResult res{"herbrand"};
    std::vector<homology::Finite2Module> fixtures;
    fixtures.emplace_back(std::vector<int>{1}, detail::Matrix{{1}});            // Z/2 trivial
    fixtures.emplace_back(std::vector<int>{2}, detail::Matrix{{3}});            // Z/4, sigma = -1
    fixtures.emplace_back(std::vector<int>{1, 1}, detail::Matrix{{0, 1}, {1, 0}});  // induced swap
    std::mt19937_64 rng(seed);
    for (int k = 0; k < random_count; ++k) fixtures.push_back(detail::random_involution_module(rng));

    for (const auto& M : fixtures) {
        ++res.cases;
        uint64_t h0e = homology::tate_h0_by_enumeration(M);
        uint64_t h1e = homology::tate_h_minus1_by_enumeration(M);
        uint64_t h0s = homology::tate_h0_by_snf(M);
        uint64_t h1s = homology::tate_h_minus1_by_snf(M);
        if (h0e != h1e || h0e != h0s || h1e != h1s) {
            std::ostringstream os;
            os << "module #" << res.cases << ": h0_enum=" << h0e << " h-1_enum=" << h1e
               << " h0_snf=" << h0s << " h-1_snf=" << h1s;
            res.fail(os.str());
            return res;
        }
    }
    return res;
}

// Local H^0 orders: lifting-the-exponent closed form against the fixed-point
// enumeration oracle.
inline SuiteResult run_suite_h0() {
    SuiteResult res{"h0"};
    for (int64_t ell = 3; ell <= 49; ell += 2) {
        for (int f = 1; f <= 2; ++f) {
            for (int64_t m = -20; m <= 20; ++m) {
                if (m == 0) continue;
                ++res.cases;
                int closed = cyclo::local_h0_log2(ell, f, m);
                int enumerated = cyclo::local_h0_log2_enumerated(ell, f, m, 12);
                if (closed != enumerated) {
                    std::ostringstream os;
                    os << "ell=" << ell << " f=" << f << " m=" << m << " closed=" << closed
                       << " enumerated=" << enumerated;
                    res.fail(os.str());
                    return res;
                }
            }
        }
    }
    return res;
}

// Norm-index invariance under multiplying generators by nonzero squares.
inline SuiteResult run_suite_norm() {
    SuiteResult res{"norm"};
    const std::vector<int64_t> squares{1, 4, 9, 49, 225};
    for (int64_t d : {-10, -7, -5, -2, -1, 2, 3, 5, 6, 7, 10, 15, 17, 30}) {
        if (squarefree_part(d) != d) continue;
        quadfield::QuadraticField E(d);
        for (int64_t g : {2, -1, 3, 6, 10, -5}) {
            int base = kernels::norm_index_log2({Rational(g)}, E);
            for (int64_t s : squares) {
                ++res.cases;
                int scaled = kernels::norm_index_log2({Rational(g * s)}, E);
                if (scaled != base) {
                    std::ostringstream os;
                    os << "d=" << d << " g=" << g << " square=" << s << " base=" << base
                       << " scaled=" << scaled;
                    res.fail(os.str());
                    return res;
                }
            }
        }
    }
    return res;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"product", "brute", "lte", "herbrand", "h0", "norm"};
    return names;
}

inline SuiteResult run_suite(const std::string& name, const Hooks& hooks = {}) {
    if (name == "product") return run_suite_product(hooks);
    if (name == "brute") return run_suite_brute(hooks);
    if (name == "lte") return run_suite_lte();
    if (name == "herbrand") return run_suite_herbrand();
    if (name == "h0") return run_suite_h0();
    if (name == "norm") return run_suite_norm();
    throw std::invalid_argument("selfcheck: unknown suite '" + name + "'");
}

inline std::vector<SuiteResult> run_all(const Hooks& hooks = {}) {
    std::vector<SuiteResult> out;
    for (const std::string& name : suite_names()) out.push_back(run_suite(name, hooks));
    return out;
}

}  // namespace wkplus::selfcheck
