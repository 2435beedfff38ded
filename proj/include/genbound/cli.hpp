#pragma once

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "genbound/report.hpp"

namespace genbound {

struct RunConfig {
    std::string poly_text;
    std::optional<std::string> disc_override;      // decimal integer
    std::optional<double> log_disc_override;
    std::set<std::string> algorithms{"bdydf", "multistep", "simplified", "closed_forms"};
    std::string output_format = "text";  // text | json | csv
    bool list_ideals = false;
    std::optional<std::string> certificate_path;
    double delta_grid = 0.0625;
    int n_safety = 1 << 14;
    std::optional<std::string> cache_path;
    std::optional<double> t_max_override;
    int jobs = 1;
    std::optional<std::string> batch_output;  // batch CSV target; stdout when empty
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 2;
inline constexpr int exit_integrity_error = 3;

namespace detail {

inline std::optional<std::string> cache_file_for(const RunConfig& config, const std::string& hash) {
    if (config.cache_path) return config.cache_path;
    if (const char* dir = std::getenv("GENBOUND_CACHE_DIR"))
        return std::string(dir) + "/" + hash + ".json";
    return std::nullopt;
}

// Builds the context, going through the splitting cache when one is
// configured and its coverage suffices.
inline FieldContext make_context(const Polynomial& P, const FieldInvariants& inv,
                                 const RunConfig& config, const std::string& hash) {
    double want = config.t_max_override ? std::max(64.0, *config.t_max_override) : 64.0;
    want = std::max(want, bound_cap_T0(inv.log_disc, inv.n) * 1.02 + 16.0);
    if (auto path = cache_file_for(config, hash)) {
        try {
            SplittingCache cache = load_splitting_cache(*path, hash);
            if (cache.t_max >= want)
                return FieldContext(P, inv, NormTable::from_splittings(cache.records, cache.t_max));
        } catch (const resource_error&) {
            // no cache yet; fall through and build
        }
    }
    return FieldContext(P, inv, want);
}

inline RunReport execute(const Polynomial& P, const RunConfig& config) {
    RunReport rep;
    rep.poly_text = config.poly_text;
    rep.hash = field_hash(P);

    std::optional<mpz_class> disc_override;
    if (config.disc_override) disc_override = mpz_class(*config.disc_override);
    rep.inv = field_invariants(P, disc_override, config.log_disc_override);

    FieldContext ctx = make_context(P, rep.inv, config, rep.hash);

    AlgoOptions opts;
    opts.delta_grid = config.delta_grid;
    opts.n_safety = config.n_safety;

    if (config.algorithms.count("bdydf")) rep.bdydf_result = bdydf(ctx);
    if (config.algorithms.count("multistep")) rep.multistep_result = multistep_bound(ctx, opts);
    if (config.algorithms.count("simplified")) rep.simplified_result = simplified_bound(ctx);
    if (config.algorithms.count("closed_forms")) rep.closed_forms = make_bound_report(rep.inv);

    if (config.list_ideals) {
        std::uint64_t T = 0;
        for (const auto* r : {&rep.bdydf_result, &rep.multistep_result, &rep.simplified_result})
            if (r->has_value() && (T == 0 || (*r)->T < T)) T = (*r)->T;
        if (T >= 2) {
            rep.generators = list_generators(ctx, T);
            rep.generators_listed = true;
        }
    }

    if (config.certificate_path && rep.multistep_result && rep.multistep_result->certificate)
        write_certificate(*config.certificate_path, *rep.multistep_result->certificate, rep.hash);

    if (auto path = cache_file_for(config, rep.hash)) {
        try {
            save_splitting_cache(*path, rep.hash, ctx.table().t_max, ctx.table().splittings);
        } catch (const resource_error& e) {
            rep.warnings.push_back(std::string("splitting cache not written: ") + e.what());
        }
    }

    collect_warnings(rep);
    return rep;
}

}  // namespace detail

// Single-field run. Exit codes: 0 success, 2 input error, 3 internal
// integrity failure (certificate routes disagreeing).
inline int run(const RunConfig& config, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    Polynomial P;
    try {
        P = parse_polynomial(config.poly_text);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    try {
        RunReport rep = detail::execute(P, config);
        if (config.output_format == "json") {
            out << report_to_json(rep).dump(2) << "\n";
        } else if (config.output_format == "csv") {
            BatchRow row;
            row.hash = rep.hash;
            row.n = rep.inv.n;
            row.log_disc = rep.inv.log_disc;
            if (rep.bdydf_result) row.T = rep.bdydf_result->T;
            if (rep.multistep_result) row.T1 = rep.multistep_result->T;
            if (rep.simplified_result) row.T2 = rep.simplified_result->T;
            if (rep.closed_forms) {
                row.cap_T0 = rep.closed_forms->cap_T0;
                row.bach401 = rep.closed_forms->bach401;
            }
            out << batch_csv_header << "\n" << batch_row_csv(row) << "\n";
        } else {
            out << report_to_text(rep);
        }
        return exit_ok;
    } catch (const integrity_error& e) {
        err << "integrity error: " << e.what() << "\n";
        return exit_integrity_error;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
}

namespace detail {

inline BatchRow batch_one(const std::string& line, const RunConfig& base) {
    BatchRow row;
    Timer timer;
    try {
        RunConfig config = base;
        config.poly_text = line;
        config.certificate_path.reset();
        config.cache_path.reset();
        const auto semi = line.find(';');
        if (semi != std::string::npos) {
            config.poly_text = line.substr(0, semi);
            config.disc_override = line.substr(semi + 1);
        }
        Polynomial P = parse_polynomial(config.poly_text);
        config.poly_text = P.coeff_string();
        RunReport rep = execute(P, config);
        row.hash = rep.hash;
        row.n = rep.inv.n;
        row.log_disc = rep.inv.log_disc;
        if (rep.bdydf_result) row.T = rep.bdydf_result->T;
        if (rep.multistep_result) row.T1 = rep.multistep_result->T;
        if (rep.simplified_result) row.T2 = rep.simplified_result->T;
        if (rep.closed_forms) {
            row.cap_T0 = rep.closed_forms->cap_T0;
            row.bach401 = rep.closed_forms->bach401;
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    row.elapsed = timer.seconds();
    return row;
}

}  // namespace detail

// Batch mode: one polynomial per line, optional ";disc" override per line.
// Rows are written in input order; a checkpoint sidecar makes interrupted
// runs resumable when writing to a file. Per-line failures land in the error
// column and the run continues.
inline int run_batch(const std::string& list_path, const RunConfig& config,
                     std::ostream& console_err = std::cerr) {
    std::ifstream in(list_path);
    if (!in) {
        console_err << "error: cannot open batch list " << list_path << "\n";
        return exit_input_error;
    }
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        lines.push_back(line);
    }

    std::size_t already_done = 0;
    std::ofstream file_out;
    std::string ckpt_path;
    if (config.batch_output) {
        ckpt_path = *config.batch_output + ".ckpt";
        if (std::ifstream ckpt(ckpt_path); ckpt) {
            ckpt >> already_done;
            if (already_done > lines.size()) already_done = 0;
        }
        file_out.open(*config.batch_output, already_done > 0 ? std::ios::app : std::ios::out);
        if (!file_out) {
            console_err << "error: cannot open batch output " << *config.batch_output << "\n";
            return exit_input_error;
        }
    }
    std::ostream& out = config.batch_output ? file_out : std::cout;
    if (already_done == 0) out << batch_csv_header << "\n";

    const int jobs = std::max(1, config.jobs);
    std::size_t i = already_done;
    while (i < lines.size()) {
        const std::size_t chunk = std::min<std::size_t>(jobs, lines.size() - i);
        std::vector<std::future<BatchRow>> futures;
        for (std::size_t k = 1; k < chunk; ++k)
            futures.push_back(std::async(std::launch::async, detail::batch_one, lines[i + k],
                                         config));
        BatchRow first = detail::batch_one(lines[i], config);
        out << batch_row_csv(first) << "\n";
        for (auto& fut : futures) out << batch_row_csv(fut.get()) << "\n";
        i += chunk;
        if (config.batch_output) {
            out.flush();
            std::ofstream ckpt(ckpt_path, std::ios::trunc);
            ckpt << i << "\n";
        }
    }
    return exit_ok;
}

}  // namespace genbound
