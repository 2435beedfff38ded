#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "genbound/algorithms.hpp"
#include "genbound/io.hpp"

namespace genbound {

// Everything one run of the tool knows about a field, ready to render.
struct RunReport {
    std::string poly_text;
    std::string hash;
    FieldInvariants inv;
    std::optional<AlgorithmResult> bdydf_result;
    std::optional<AlgorithmResult> multistep_result;
    std::optional<AlgorithmResult> simplified_result;
    std::optional<BoundReport> closed_forms;
    std::vector<IdealGenerator> generators;  // filled when ideal listing was requested
    bool generators_listed = false;
    std::vector<std::string> warnings;
};

inline void collect_warnings(RunReport& rep) {
    if (rep.inv.disc_source == DiscSource::poly_disc_conservative)
        rep.warnings.push_back(
            "discriminant taken from disc(P) without index certification; the bound is valid "
            "but may be inflated");
    if (!rep.inv.irreducible_certified)
        rep.warnings.push_back("irreducibility of P was not certified; results assume it");
    const auto scan_warn = [&](const std::optional<AlgorithmResult>& r, const char* name) {
        if (r && r->scan_capped)
            rep.warnings.push_back(std::string(name) + " hit the scan cap without success");
        if (r && r->safety_capped)
            rep.warnings.push_back(std::string(name) +
                                   " stopped at the dimension safety cap; bound is valid but "
                                   "possibly not minimal");
    };
    scan_warn(rep.bdydf_result, "bdydf");
    scan_warn(rep.multistep_result, "multistep");
    scan_warn(rep.simplified_result, "simplified");
}

namespace detail {

inline ordered_json algorithm_json(const AlgorithmResult& r, const std::string& field_hash) {
    ordered_json j;
    j["T"] = r.T;
    j["ideal_count"] = r.ideal_count;
    j["elapsed_seconds"] = round12(r.elapsed_seconds);
    if (r.scan_capped) j["scan_capped"] = true;
    if (r.safety_capped) j["safety_capped"] = true;
    if (r.certificate) j["certificate"] = certificate_to_json(*r.certificate, field_hash);
    return j;
}

}  // namespace detail

inline ordered_json report_to_json(const RunReport& rep) {
    ordered_json j;
    j["poly"] = rep.poly_text;
    j["field_hash"] = rep.hash;
    ordered_json f;
    f["n"] = rep.inv.n;
    f["r1"] = rep.inv.r1;
    f["r2"] = rep.inv.r2;
    f["log_disc"] = round12(rep.inv.log_disc);
    if (rep.inv.disc_exact) f["disc"] = rep.inv.disc_exact->get_str();
    f["disc_source"] = to_string(rep.inv.disc_source);
    j["field"] = std::move(f);
    if (rep.bdydf_result) j["bdydf"] = detail::algorithm_json(*rep.bdydf_result, rep.hash);
    if (rep.multistep_result) j["multistep"] = detail::algorithm_json(*rep.multistep_result, rep.hash);
    if (rep.simplified_result)
        j["simplified"] = detail::algorithm_json(*rep.simplified_result, rep.hash);
    if (rep.closed_forms) {
        const BoundReport& b = *rep.closed_forms;
        ordered_json c;
        c["teasynt_general"] = round12(b.teasynt_general);
        if (b.teasynt_large_disc) c["teasynt_large_disc"] = round12(*b.teasynt_large_disc);
        c["coro2"] = round12(b.coro2);
        c["coro2_four_log_sq_applies"] = b.coro2_four_applies;
        c["bach401"] = round12(b.bach401);
        c["two_step"] = round12(b.two_step);
        c["three_step"] = round12(b.three_step);
        c["cap_T0"] = round12(b.cap_T0);
        j["closed_forms"] = std::move(c);
    }
    if (rep.generators_listed) {
        auto arr = ordered_json::array();
        for (const auto& g : rep.generators) {
            ordered_json e;
            e["p"] = g.p;
            e["f"] = g.f;
            e["norm"] = g.norm;
            arr.push_back(std::move(e));
        }
        j["generators"] = std::move(arr);
    }
    if (!rep.warnings.empty()) j["warnings"] = rep.warnings;
    return j;
}

inline std::string report_to_text(const RunReport& rep) {
    std::ostringstream out;
    out << "field: " << rep.poly_text << "\n";
    out << "  hash: " << rep.hash << "\n";
    out << "  n = " << rep.inv.n << ", signature (r1, r2) = (" << rep.inv.r1 << ", " << rep.inv.r2
        << ")\n";
    out << "  log|disc| = " << round12(rep.inv.log_disc) << " [" << to_string(rep.inv.disc_source)
        << "]";
    if (rep.inv.disc_exact) out << ", disc = " << rep.inv.disc_exact->get_str();
    out << "\n";
    const auto line = [&](const std::optional<AlgorithmResult>& r, const char* name) {
        if (!r) return;
        out << "  " << name << ": T = " << r->T << ", prime ideals with norm <= T: "
            << r->ideal_count << " (" << round12(r->elapsed_seconds) << " s)";
        if (r->certificate)
            out << ", certificate N = " << r->certificate->N
                << ", q = " << round12(r->certificate->q_value);
        out << "\n";
    };
    line(rep.bdydf_result, "bdydf      T(K) ");
    line(rep.multistep_result, "multistep  T1(K)");
    line(rep.simplified_result, "simplified T2(K)");
    if (rep.closed_forms) {
        const BoundReport& b = *rep.closed_forms;
        out << "  closed forms: teasynt = " << round12(b.teasynt_general);
        if (b.teasynt_large_disc) out << " (large-disc " << round12(*b.teasynt_large_disc) << ")";
        out << ", coro2 = " << round12(b.coro2) << ", 4.01 log^2 = " << round12(b.bach401)
            << ",\n                two-step = " << round12(b.two_step)
            << ", three-step = " << round12(b.three_step) << ", cap T0 = " << round12(b.cap_T0)
            << "\n";
    }
    if (rep.generators_listed) {
        out << "  generators (p, f, norm):";
        for (const auto& g : rep.generators)
            out << " (" << g.p << "," << g.f << "," << g.norm << ")";
        out << "\n";
    }
    for (const auto& w : rep.warnings) out << "  warning: " << w << "\n";
    return out.str();
}

// Batch CSV: stable versioned header, one row per input line.
inline constexpr const char* batch_csv_header =
    "schema,poly_hash,n,log_disc,T,T1,T2,cap_T0,bach401,ratio_T1_T,ratio_T1_logsq,elapsed_seconds,"
    "error";
inline constexpr const char* batch_csv_schema = "genbound.batch.v1";

struct BatchRow {
    std::string hash;
    int n = 0;
    double log_disc = 0.0;
    std::optional<std::uint64_t> T, T1, T2;
    double cap_T0 = 0.0;
    double bach401 = 0.0;
    double elapsed = 0.0;
    std::string error;
};

inline std::string batch_row_csv(const BatchRow& row) {
    std::ostringstream out;
    out << batch_csv_schema << "," << row.hash << ",";
    if (row.error.empty()) {
        out << row.n << "," << round12(row.log_disc) << ",";
        if (row.T) out << *row.T;
        out << ",";
        if (row.T1) out << *row.T1;
        out << ",";
        if (row.T2) out << *row.T2;
        out << "," << round12(row.cap_T0) << "," << round12(row.bach401) << ",";
        if (row.T && row.T1 && *row.T > 0)
            out << round12(static_cast<double>(*row.T1) / static_cast<double>(*row.T));
        out << ",";
        if (row.T1 && row.log_disc > 0)
            out << round12(static_cast<double>(*row.T1) / (row.log_disc * row.log_disc));
        out << "," << round12(row.elapsed) << ",";
    } else {
        std::string msg = row.error;
        for (auto& c : msg)
            if (c == ',' || c == '\n') c = ';';
        out << ",,,,,,,,,," << msg;
    }
    return out.str();
}

}  // namespace genbound
