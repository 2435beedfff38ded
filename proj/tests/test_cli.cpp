#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "genbound/cli.hpp"

using namespace genbound;

namespace {
struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/genbound_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
    void write(const std::string& content) {
        std::ofstream out(path);
        out << content;
    }
    std::string read() const {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
};
}  // namespace

TEST_CASE("run: json output carries the classic bound") {
    RunConfig config;
    config.poly_text = "x^2+1";
    config.output_format = "json";
    std::ostringstream out, err;
    REQUIRE(run(config, out, err) == exit_ok);
    ordered_json j = ordered_json::parse(out.str());
    CHECK(j["bdydf"]["T"] == 5);
    CHECK(j["field"]["n"] == 2);
    CHECK(j["field"]["r1"] == 0);
    CHECK(j["field"]["disc"] == "-4");
    CHECK(j["multistep"]["T"].get<std::uint64_t>() <= 5);
    CHECK(j.contains("closed_forms"));
}

TEST_CASE("run: json round-trips byte-identically") {
    RunConfig config;
    config.poly_text = "x^3+559752270111028720*x+55137512477462689";
    config.algorithms = {"bdydf", "closed_forms"};
    config.output_format = "json";
    std::ostringstream out, err;
    REQUIRE(run(config, out, err) == exit_ok);
    const std::string first = out.str();
    const std::string second = ordered_json::parse(first).dump(2) + "\n";
    CHECK(first == second);
}

TEST_CASE("run: input errors exit 2") {
    std::ostringstream out, err;
    RunConfig bad;
    bad.poly_text = "2*x^2+1";
    CHECK(run(bad, out, err) == exit_input_error);
    CHECK(err.str().find("error") != std::string::npos);

    RunConfig reducible;
    reducible.poly_text = "x^2-1";
    CHECK(run(reducible, out, err) == exit_input_error);
}

TEST_CASE("run: certificate and text output") {
    TempFile cert("cert.json");
    RunConfig config;
    config.poly_text = "x^2-x-1";
    config.algorithms = {"bdydf", "multistep"};
    config.certificate_path = cert.path;
    config.list_ideals = true;
    std::ostringstream out, err;
    REQUIRE(run(config, out, err) == exit_ok);
    CHECK(out.str().find("T(K)") != std::string::npos);

    Polynomial P = parse_polynomial(config.poly_text);
    Certificate loaded = read_certificate(cert.path, field_hash(P));
    FieldInvariants inv = field_invariants(P);
    NormTable table = build_norm_table(P, inv, 100.0);
    CHECK(verify_certificate(inv, table, loaded) < -check_epsilon);
    CHECK_THROWS_AS(read_certificate(cert.path, "0000000000000000"), integrity_error);
}

TEST_CASE("splitting cache: save, reuse, reject mismatch") {
    TempFile cache("cache.json");
    Polynomial P = parse_polynomial("x^2+1");
    FieldInvariants inv = field_invariants(P);
    NormTable table = build_norm_table(P, inv, 200.0);
    save_splitting_cache(cache.path, field_hash(P), table.t_max, table.splittings);

    SplittingCache loaded = load_splitting_cache(cache.path, field_hash(P));
    CHECK(loaded.t_max == table.t_max);
    NormTable rebuilt = NormTable::from_splittings(loaded.records, loaded.t_max);
    REQUIRE(rebuilt.entries.size() == table.entries.size());
    for (std::size_t i = 0; i < rebuilt.entries.size(); ++i)
        CHECK(rebuilt.entries[i].x == table.entries[i].x);

    CHECK_THROWS_AS(load_splitting_cache(cache.path, "ffffffffffffffff"), integrity_error);
}

TEST_CASE("run with cache path produces identical results") {
    TempFile cache("cache2.json");
    RunConfig config;
    config.poly_text = "x^2+11";
    config.algorithms = {"bdydf"};
    config.output_format = "json";
    config.cache_path = cache.path;
    std::ostringstream out1, out2, err;
    REQUIRE(run(config, out1, err) == exit_ok);   // builds and saves
    REQUIRE(run(config, out2, err) == exit_ok);   // loads from cache
    auto strip_elapsed = [](const std::string& s) {
        ordered_json j = ordered_json::parse(s);
        j["bdydf"].erase("elapsed_seconds");
        return j.dump();
    };
    CHECK(strip_elapsed(out1.str()) == strip_elapsed(out2.str()));
}

TEST_CASE("batch: three classic quadratics") {
    TempFile list("batch.txt");
    TempFile csv("batch.csv");
    list.write("x^2+1\nx^2+3\nx^2-x-1\n");
    RunConfig config;
    config.algorithms = {"bdydf", "multistep", "simplified", "closed_forms"};
    config.batch_output = csv.path;
    REQUIRE(run_batch(list.path, config) == exit_ok);
    std::ifstream in(csv.path);
    std::string header, l1, l2, l3;
    std::getline(in, header);
    std::getline(in, l1);
    std::getline(in, l2);
    std::getline(in, l3);
    CHECK(header == batch_csv_header);
    // T column is the 5th field
    auto field = [](const std::string& line, int idx) {
        std::stringstream ss(line);
        std::string item;
        for (int i = 0; i <= idx; ++i) std::getline(ss, item, ',');
        return item;
    };
    CHECK(field(l1, 4) == "5");
    CHECK(field(l2, 4) == "5");
    CHECK(field(l3, 4) == "7");
    // ratio T1 / log^2 disc stays below 4.01
    for (const auto& line : {l1, l2, l3}) {
        const std::string r = field(line, 10);
        REQUIRE_FALSE(r.empty());
        CHECK(std::stod(r) <= 4.01);
    }
    std::remove((csv.path + ".ckpt").c_str());
}

TEST_CASE("batch: empty file, bad lines, resume") {
    TempFile list("batch_empty.txt");
    list.write("");
    RunConfig config;
    std::ostringstream devnull;
    REQUIRE(run_batch(list.path, config) == exit_ok);

    TempFile list2("batch_bad.txt");
    TempFile csv2("batch_bad.csv");
    list2.write("x^2+5\nnot a polynomial\nx^2+7\n");
    config.algorithms = {"bdydf"};
    config.batch_output = csv2.path;
    REQUIRE(run_batch(list2.path, config) == exit_ok);
    std::string content = csv2.read();
    CHECK(content.find("expected") != std::string::npos);  // error column filled
    // three data rows regardless of the failure
    int rows = -1;  // header
    for (char c : content)
        if (c == '\n') ++rows;
    CHECK(rows == 3);
    std::remove((csv2.path + ".ckpt").c_str());
}

TEST_CASE("batch: disc override per line") {
    TempFile list("batch_override.txt");
    TempFile csv("batch_override.csv");
    list.write("x^2+3;-3\n");
    RunConfig config;
    config.algorithms = {"bdydf"};
    config.batch_output = csv.path;
    REQUIRE(run_batch(list.path, config) == exit_ok);
    CHECK(csv.read().find(",5,") != std::string::npos);
    std::remove((csv.path + ".ckpt").c_str());
}

TEST_CASE("cache directory from the environment") {
    const std::string dir = "/tmp/genbound_test_cachedir";
    std::filesystem::create_directories(dir);
    setenv("GENBOUND_CACHE_DIR", dir.c_str(), 1);
    RunConfig config;
    config.poly_text = "x^2+19";
    config.algorithms = {"bdydf"};
    std::ostringstream out, err;
    REQUIRE(run(config, out, err) == exit_ok);
    unsetenv("GENBOUND_CACHE_DIR");
    const std::string expected = dir + "/" + field_hash(parse_polynomial("x^2+19")) + ".json";
    CHECK(std::filesystem::exists(expected));
    std::filesystem::remove_all(dir);
}

TEST_CASE("batch: resume from the checkpoint") {
    TempFile list("batch_resume.txt");
    TempFile csv("batch_resume.csv");
    list.write("x^2+1\nx^2+3\nx^2-x-1\n");
    RunConfig config;
    config.algorithms = {"bdydf"};
    config.batch_output = csv.path;
    // pretend the first line already ran
    {
        std::ofstream out(csv.path);
        out << batch_csv_header << "\nstale-row\n";
        std::ofstream ckpt(csv.path + ".ckpt");
        ckpt << 1 << "\n";
    }
    REQUIRE(run_batch(list.path, config) == exit_ok);
    std::string content = csv.read();
    CHECK(content.find("stale-row") != std::string::npos);  // kept, not rewritten
    int rows = -1;
    for (char c : content)
        if (c == '\n') ++rows;
    CHECK(rows == 3);  // stale + two resumed
    std::remove((csv.path + ".ckpt").c_str());
}

TEST_CASE("batch: jobs > 1 keeps input order") {
    TempFile list("batch_jobs.txt");
    TempFile csv("batch_jobs.csv");
    list.write("x^2+1\nx^2+3\nx^2-x-1\nx^2+11\nx^2-2\nx^2+19\n");
    RunConfig config;
    config.algorithms = {"bdydf"};
    config.jobs = 3;
    config.batch_output = csv.path;
    REQUIRE(run_batch(list.path, config) == exit_ok);
    std::ifstream in(csv.path);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    REQUIRE(lines.size() == 7);
    // hashes must appear in input order
    Polynomial P0 = parse_polynomial("x^2+1");
    Polynomial P4 = parse_polynomial("x^2-2");
    CHECK(lines[1].find(field_hash(P0)) != std::string::npos);
    CHECK(lines[5].find(field_hash(P4)) != std::string::npos);
    std::remove((csv.path + ".ckpt").c_str());
}
