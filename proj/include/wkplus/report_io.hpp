#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "wkplus/genus.hpp"

namespace wkplus::io {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const genus::GenusReport& rep) {
    ordered_json j;
    j["d"] = rep.d;
    j["i"] = rep.i;
    j["discriminant"] = rep.discriminant;
    j["ramified_primes"] = rep.ramified_primes;
    j["R"] = rep.R;
    j["r"] = rep.r;
    j["t_plus"] = rep.t_plus;
    j["norm_index_log2"] = rep.norm_index_log2;
    j["x_term_log2_min"] = rep.x_term_log2_min;
    j["x_term_log2_max"] = rep.x_term_log2_max;
    j["rank"] = rep.rank;
    j["codescent"] = rep.codescent;
    j["vanishing_criterion"] = rep.vanishing_criterion;
    j["discrepancy"] = rep.discrepancy;
    return j;
}

inline genus::GenusReport report_from_json(const ordered_json& j) {
    genus::GenusReport rep;
    rep.d = j.at("d").get<int64_t>();
    rep.i = j.at("i").get<int>();
    rep.discriminant = j.at("discriminant").get<int64_t>();
    rep.ramified_primes = j.at("ramified_primes").get<std::vector<int64_t>>();
    rep.R = j.at("R").get<std::vector<int64_t>>();
    rep.r = j.at("r").get<int>();
    rep.t_plus = j.at("t_plus").get<int>();
    rep.norm_index_log2 = j.at("norm_index_log2").get<int>();
    rep.x_term_log2_min = j.at("x_term_log2_min").get<int>();
    rep.x_term_log2_max = j.at("x_term_log2_max").get<int>();
    rep.rank = j.at("rank").get<int>();
    rep.codescent = j.at("codescent").get<bool>();
    rep.vanishing_criterion = j.at("vanishing_criterion").get<bool>();
    rep.discrepancy = j.at("discrepancy").get<bool>();
    return rep;
}

namespace detail {

inline std::string bracket_list(const std::vector<int64_t>& v) {
    std::string s = "[";
    for (size_t k = 0; k < v.size(); ++k) {
        if (k) s += ' ';
        s += std::to_string(v[k]);
    }
    return s + "]";
}

}  // namespace detail

// Fixed CSV column order, identical to the JSON key order. Lists are
// bracketed and space-separated so no quoting is ever needed.
inline const char* csv_header() {
    return "d,i,discriminant,ramified_primes,R,r,t_plus,norm_index_log2,"
           "x_term_log2_min,x_term_log2_max,rank,codescent,vanishing_criterion,discrepancy";
}

inline std::string csv_row(const genus::GenusReport& rep) {
    std::ostringstream out;
    out << rep.d << ',' << rep.i << ',' << rep.discriminant << ','
        << detail::bracket_list(rep.ramified_primes) << ',' << detail::bracket_list(rep.R) << ','
        << rep.r << ',' << rep.t_plus << ',' << rep.norm_index_log2 << ',' << rep.x_term_log2_min
        << ',' << rep.x_term_log2_max << ',' << rep.rank << ',' << (rep.codescent ? "true" : "false")
        << ',' << (rep.vanishing_criterion ? "true" : "false") << ','
        << (rep.discrepancy ? "true" : "false");
    return out.str();
}

inline std::string human_report(const genus::GenusReport& rep) {
    std::ostringstream out;
    out << "d                   : " << rep.d << "\n"
        << "i                   : " << rep.i << "\n"
        << "discriminant        : " << rep.discriminant << "\n"
        << "ramified primes     : " << detail::bracket_list(rep.ramified_primes) << "\n"
        << "R                   : " << detail::bracket_list(rep.R) << "  (r = " << rep.r << ")\n"
        << "t_plus              : " << rep.t_plus << "\n"
        << "norm index log2     : " << rep.norm_index_log2 << "\n"
        << "x term log2         : [" << rep.x_term_log2_min << ", " << rep.x_term_log2_max << "]\n"
        << "rank                : " << rep.rank << "\n"
        << "codescent           : " << (rep.codescent ? "true" : "false") << "\n"
        << "vanishing criterion : " << (rep.vanishing_criterion ? "true" : "false") << "\n"
        << "discrepancy         : " << (rep.discrepancy ? "true" : "false") << "\n";
    return out.str();
}

}  // namespace wkplus::io
