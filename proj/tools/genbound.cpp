#include <CLI11.hpp>

#include "genbound/genbound.hpp"

namespace {

// "--algorithms bdydf,multistep" or "all".
std::set<std::string> parse_algorithms(const std::string& text) {
    static const std::set<std::string> known{"bdydf", "multistep", "simplified", "closed_forms"};
    if (text == "all") return known;
    std::set<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!known.count(item))
            throw CLI::ValidationError("--algorithms", "unknown algorithm '" + item + "'");
        out.insert(item);
    }
    if (out.empty()) throw CLI::ValidationError("--algorithms", "empty algorithm list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "genbound: GRH-conditional bounds T such that the prime ideals of norm at most T "
        "generate the ideal class group of Q[x]/(P)"};

    genbound::RunConfig config;
    std::string poly_text, algorithms = "all", poly_file, disc_text, batch_out, cert_path,
                cache_path;
    double log_disc = 0.0, t_max = 0.0;

    app.add_option("--poly", poly_text, "defining polynomial, e.g. \"x^2+1\" or \"[1,0,1]\"");
    app.add_option("--poly-file", poly_file,
                   "batch list: one polynomial per line, optional ';disc' override");
    app.add_option("--disc", disc_text, "exact field discriminant override (decimal integer)");
    auto* logd_opt = app.add_option("--log-disc", log_disc, "log |disc| override");
    app.add_option("--algorithms", algorithms,
                   "comma list of bdydf,multistep,simplified,closed_forms or 'all'");
    app.add_option("--output", config.output_format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_flag("--list-ideals", config.list_ideals,
                 "list the prime ideals below the best computed bound");
    app.add_option("--certificate", cert_path, "write the multistep witness to this JSON file");
    app.add_option("--delta-grid", config.delta_grid, "step-width escalation grid")
        ->check(CLI::PositiveNumber);
    app.add_option("--n-safety", config.n_safety, "dimension safety cap for the multistep search")
        ->check(CLI::Range(8, 1 << 20));
    app.add_option("--cache", cache_path,
                   "splitting cache file (default: $GENBOUND_CACHE_DIR/<hash>.json)");
    app.add_option("--jobs", config.jobs, "parallel fields in batch mode")->check(CLI::Range(1, 256));
    auto* tmax_opt = app.add_option("--t-max-override", t_max, "initial norm table coverage");
    app.add_option("--batch-out", batch_out, "batch CSV output file (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    config.poly_text = poly_text;
    config.algorithms = parse_algorithms(algorithms);
    if (!disc_text.empty()) config.disc_override = disc_text;
    if (logd_opt->count()) config.log_disc_override = log_disc;
    if (!cert_path.empty()) config.certificate_path = cert_path;
    if (!cache_path.empty()) config.cache_path = cache_path;
    if (tmax_opt->count()) config.t_max_override = t_max;
    if (!batch_out.empty()) config.batch_output = batch_out;

    if (!poly_file.empty()) return genbound::run_batch(poly_file, config);
    if (poly_text.empty()) {
        std::cerr << "error: --poly or --poly-file is required\n" << app.help();
        return genbound::exit_input_error;
    }
    return genbound::run(config);
}
