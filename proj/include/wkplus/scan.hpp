#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "wkplus/genus.hpp"
#include "wkplus/report_io.hpp"

namespace wkplus::scanner {

struct ScanRow {
    genus::GenusReport report;
    double elapsed_ms = 0.0;  // diagnostics only; never serialized, so scan
                              // output stays byte-identical across runs
};

// One row per squarefree d in [dmin, dmax] (0, 1 and everything with a
// square factor are skipped), rows in ascending d. Rows are computed
// independently on up to `workers` threads and merged in index order, so the
// result is independent of the worker count.
inline std::vector<ScanRow> scan_range(int64_t dmin, int64_t dmax, const cyclo::TwistIndex& i,
                                       const std::vector<Rational>& dplus, int workers) {
    if (dmin > dmax) throw std::invalid_argument("scan: empty range (dmin > dmax)");
    if (workers < 1 || workers > 256) throw std::invalid_argument("scan: workers must be in [1, 256]");
    std::vector<int64_t> ds;
    for (int64_t d = dmin; d <= dmax; ++d) {
        if (d == 0 || d == 1) continue;
        if (squarefree_part(d) != d) continue;
        ds.push_back(d);
    }
    std::vector<ScanRow> rows(ds.size());
    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (;;) {
            size_t k = next.fetch_add(1);
            if (k >= ds.size()) return;
            auto t0 = std::chrono::steady_clock::now();
            rows[k].report = genus::rank_quadratic(quadfield::QuadraticField(ds[k]), i, dplus);
            rows[k].elapsed_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    size_t nthreads = std::min<size_t>(static_cast<size_t>(workers), ds.size());
    if (nthreads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return rows;
}

inline std::string render_csv(const std::vector<ScanRow>& rows) {
    std::string out = io::csv_header();
    out += '\n';
    for (const ScanRow& row : rows) {
        out += io::csv_row(row.report);
        out += '\n';
    }
    return out;
}

inline std::string render_json(const std::vector<ScanRow>& rows) {
    io::ordered_json arr = io::ordered_json::array();
    for (const ScanRow& row : rows) arr.push_back(io::to_json(row.report));
    return arr.dump(2) + "\n";
}

}  // namespace wkplus::scanner
