// Command-line front end: rank and genus reports for quadratic fields,
// batch scans, local arithmetic probes, and the oracle selfcheck harness.
//
// Exit codes: 0 ok, 1 selfcheck failure, 2 invalid input, 3 discrepancy
// under --strict.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wkplus/cyclo.hpp"
#include "wkplus/genus.hpp"
#include "wkplus/homology.hpp"
#include "wkplus/kernels.hpp"
#include "wkplus/padic.hpp"
#include "wkplus/quadfield.hpp"
#include "wkplus/report_io.hpp"
#include "wkplus/scan.hpp"
#include "wkplus/selfcheck.hpp"

namespace {

using namespace wkplus;

constexpr int kExitOk = 0;
constexpr int kExitSelfcheckFailure = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitStrictDiscrepancy = 3;

Rational parse_rational(const std::string& s) {
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("cannot parse rational '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

// D+ generators: --dplus-gens wins over WK_DPLUS_GENS; default {2}.
std::vector<Rational> resolve_dplus(const std::string& flag_value) {
    std::string spec = flag_value;
    if (spec.empty()) {
        const char* env = std::getenv("WK_DPLUS_GENS");
        if (env != nullptr && *env != '\0') spec = env;
    }
    if (spec.empty()) spec = "2";
    std::vector<Rational> gens;
    for (const std::string& part : split(spec, ','))
        if (!part.empty()) gens.push_back(parse_rational(part));
    if (gens.empty()) throw std::invalid_argument("empty D+ generator list");
    return gens;
}

Place parse_place(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "real" || s == "oo") return Place::real();
    return Place::finite(std::stoll(s));
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    f << text;
}

quadfield::QuadraticField field_from_flag(int64_t d_flag) {
    int64_t core = quadfield::normalize_radicand(d_flag);
    if (core != d_flag)
        std::cerr << "note: d = " << d_flag << " normalized to squarefree core " << core << "\n";
    return quadfield::QuadraticField(core);
}

cyclo::TwistIndex odd_twist(int i) {
    cyclo::TwistIndex t(i);
    if (!t.odd())
        throw std::invalid_argument("twist i must be odd (>= 3) for the rank pipeline");
    return t;
}

int cmd_rank(int64_t d_flag, int i_flag, const std::string& gens_flag, bool as_json, bool strict,
             const std::string& out_path) {
    auto E = field_from_flag(d_flag);
    auto report = genus::rank_quadratic(E, odd_twist(i_flag), resolve_dplus(gens_flag));
    emit(as_json ? io::to_json(report).dump(2) + "\n" : io::human_report(report), out_path);
    if (strict && report.discrepancy) {
        std::cerr << "discrepancy flagged for d = " << report.d << " (strict mode)\n";
        return kExitStrictDiscrepancy;
    }
    return kExitOk;
}

int cmd_scan(int64_t dmin, int64_t dmax, int i_flag, const std::string& format,
             const std::string& gens_flag, int workers, const std::string& out_path) {
    auto rows = scanner::scan_range(dmin, dmax, odd_twist(i_flag), resolve_dplus(gens_flag), workers);
    emit(format == "json" ? scanner::render_json(rows) : scanner::render_csv(rows), out_path);
    double total_ms = 0;
    for (const auto& row : rows) total_ms += row.elapsed_ms;
    std::cerr << rows.size() << " rows, " << total_ms << " ms of row compute\n";
    return kExitOk;
}

int cmd_genus(CLI::App* sub, int64_t d_flag, int i_flag, const std::string& gens_flag, int x_log2,
              const std::string& local_h1, int global_h1_log2, int norm_index_log2) {
    if (sub->count("--d")) {
        auto E = field_from_flag(d_flag);
        auto twist = odd_twist(i_flag);
        auto gens = resolve_dplus(gens_flag);
        int ratio = genus::genus_ratio_quadratic(E, twist, gens);
        auto report = genus::rank_quadratic(E, twist, gens);
        std::cout << "genus ratio log2   : " << ratio << "\n"
                  << "rank               : " << report.rank << "\n"
                  << "r                  : " << report.r << "\n"
                  << "norm index log2    : " << report.norm_index_log2 << "\n";
        return kExitOk;
    }
    std::vector<int> locals;
    for (const std::string& part : split(local_h1, ','))
        if (!part.empty()) locals.push_back(std::stoi(part));
    std::cout << genus::genus_ratio_general(x_log2, locals, global_h1_log2, norm_index_log2) << "\n";
    return kExitOk;
}

int cmd_hilbert(const std::string& a_str, const std::string& b_str, const std::string& place_str) {
    Rational a = parse_rational(a_str), b = parse_rational(b_str);
    if (!place_str.empty()) {
        int s = padic::hilbert(a, b, parse_place(place_str));
        std::cout << (s > 0 ? "+1" : "-1") << "\n";
        return kExitOk;
    }
    int prod = 1;
    for (const Place& v : padic::relevant_places(a, b)) {
        int s = padic::hilbert(a, b, v);
        prod *= s;
        std::cout << "(" << a.str() << "," << b.str() << ")_" << v.str() << " = "
                  << (s > 0 ? "+1" : "-1") << "\n";
    }
    std::cout << "product = " << (prod > 0 ? "+1" : "-1") << "\n";
    return kExitOk;
}

int cmd_local_orders(int64_t ell, int f, int64_t twist, int kmax) {
    int closed = cyclo::local_h0_log2(ell, f, twist);
    int enumerated = cyclo::local_h0_log2_enumerated(ell, f, twist, kmax);
    std::cout << "closed form     : 2^" << closed << "\n"
              << "enumerated      : 2^" << enumerated << "\n"
              << "agree           : " << (closed == enumerated ? "yes" : "NO") << "\n";
    return closed == enumerated ? kExitOk : kExitSelfcheckFailure;
}

int cmd_homology(const std::string& orders_str, const std::string& action_str) {
    std::vector<int> exps;
    for (const std::string& part : split(orders_str, ',')) {
        int64_t v = std::stoll(part);
        if (v < 2 || (v & (v - 1)) != 0)
            throw std::invalid_argument("orders must be powers of 2, got '" + part + "'");
        exps.push_back(std::countr_zero(static_cast<uint64_t>(v)));
    }
    std::vector<std::vector<int64_t>> action;
    for (const std::string& row : split(action_str, ';')) {
        std::vector<int64_t> r;
        for (const std::string& part : split(row, ',')) r.push_back(std::stoll(part));
        action.push_back(r);
    }
    homology::Finite2Module M(exps, action);
    auto orders = homology::tate_orders(M);
    std::cout << "|M|             : 2^" << M.total_exponent() << "\n"
              << "tate h^0        : " << orders.h0_order << "\n"
              << "tate h^-1       : " << orders.h_minus1_order << "\n"
              << "herbrand        : " << (orders.h0_order == orders.h_minus1_order ? "ok" : "VIOLATED")
              << "\n";
    return kExitOk;
}

int cmd_selfcheck(const std::string& suite) {
    std::vector<selfcheck::SuiteResult> results;
    if (suite.empty()) {
        results = selfcheck::run_all();
    } else {
        results.push_back(selfcheck::run_suite(suite));
    }
    bool all_ok = true;
    for (const auto& res : results) {
        if (res.passed) {
            std::cout << "[PASS] " << res.name << " (" << res.cases << " cases)\n";
        } else {
            all_ok = false;
            std::cout << "[FAIL] " << res.name << ": " << res.counterexample << "\n";
        }
    }
    return all_ok ? kExitOk : kExitSelfcheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"positive wild kernel 2-rank calculator for quadratic fields"};
    app.require_subcommand(1);

    int64_t d = 0, dmin = 0, dmax = 0, ell = 3, twist = 2;
    int i = 3, workers = 1, f = 1, kmax = 12;
    int x_log2 = 0, global_h1_log2 = 0, norm_log2 = 0;
    bool as_json = false, strict = false;
    std::string gens_flag, out_path, format = "csv", a_str, b_str, place_str, local_h1;
    std::string orders_str, action_str, suite;

    auto* rank = app.add_subcommand("rank", "2-rank report for Q(sqrt(d))");
    rank->add_option("--d", d, "radicand")->required();
    rank->add_option("--i", i, "odd twist >= 3")->required();
    rank->add_option("--dplus-gens", gens_flag, "D+ generators, comma separated (default 2)");
    rank->add_flag("--json", as_json, "emit the JSON schema");
    rank->add_flag("--strict", strict, "exit 3 when the discrepancy flag is raised");
    rank->add_option("--out", out_path, "write output to a file");

    auto* scan = app.add_subcommand("scan", "rank reports for every squarefree d in a range");
    scan->add_option("--dmin", dmin, "range start")->required();
    scan->add_option("--dmax", dmax, "range end")->required();
    scan->add_option("--i", i, "odd twist >= 3")->required();
    scan->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    scan->add_option("--workers", workers, "worker threads (output is identical for any count)");
    scan->add_option("--dplus-gens", gens_flag, "D+ generators");
    scan->add_option("--out", out_path, "write output to a file");

    auto* gen = app.add_subcommand("genus", "genus ratio: quadratic (--d) or order bookkeeping");
    gen->add_option("--d", d, "radicand (quadratic mode)");
    gen->add_option("--i", i, "odd twist >= 3");
    gen->add_option("--dplus-gens", gens_flag, "D+ generators");
    gen->add_option("--x-log2", x_log2, "log2 |X| (bookkeeping mode)");
    gen->add_option("--local-h1-log2", local_h1, "comma-separated log2 local H_1 orders");
    gen->add_option("--global-h1-log2", global_h1_log2, "log2 global H_1 order");
    gen->add_option("--norm-index-log2", norm_log2, "log2 norm index");

    auto* hil = app.add_subcommand("hilbert", "Hilbert symbol (a,b)_v");
    hil->add_option("--a", a_str, "nonzero rational")->required();
    hil->add_option("--b", b_str, "nonzero rational")->required();
    hil->add_option("--place", place_str, "prime or 'inf'; omit to list all relevant places");

    auto* loc = app.add_subcommand("local-orders", "local H^0 order, closed form vs enumeration");
    loc->add_option("--ell", ell, "odd residue characteristic")->required();
    loc->add_option("--f", f, "residue degree, 1 or 2")->required();
    loc->add_option("--twist", twist, "nonzero twist m")->required();
    loc->add_option("--kmax", kmax, "enumeration depth (default 12)");

    auto* hom = app.add_subcommand("homology", "Tate cohomology of a finite 2-module");
    hom->add_option("--orders", orders_str, "cyclic orders, e.g. 4,2 (powers of 2)")->required();
    hom->add_option("--action", action_str, "matrix rows ';'-separated, entries ','-separated")
        ->required();

    auto* self = app.add_subcommand("selfcheck", "run the oracle sweeps");
    self->add_option("--suite", suite, "one of: product, brute, lte, herbrand, h0, norm");

    CLI11_PARSE(app, argc, argv);

    try {
        if (rank->parsed()) return cmd_rank(d, i, gens_flag, as_json, strict, out_path);
        if (scan->parsed()) return cmd_scan(dmin, dmax, i, format, gens_flag, workers, out_path);
        if (gen->parsed()) return cmd_genus(gen, d, i, gens_flag, x_log2, local_h1, global_h1_log2, norm_log2);
        if (hil->parsed()) return cmd_hilbert(a_str, b_str, place_str);
        if (loc->parsed()) return cmd_local_orders(ell, f, twist, kmax);
        if (hom->parsed()) return cmd_homology(orders_str, action_str);
        if (self->parsed()) return cmd_selfcheck(suite);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitOk;
}
