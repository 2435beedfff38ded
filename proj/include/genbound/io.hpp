#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "genbound/errors.hpp"
#include "genbound/field.hpp"
#include "genbound/negative_eigenvalue.hpp"

namespace genbound {

using ordered_json = nlohmann::ordered_json;

// Fixed 12-significant-digit float formatting: stable diffs, and a value that
// survives a parse/serialize round trip bit-identically.
inline double round12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline ordered_json certificate_to_json(const Certificate& cert, const std::string& field_hash) {
    ordered_json j;
    j["delta"] = round12(cert.delta);
    j["N"] = cert.N;
    j["v"] = ordered_json::array();
    for (double c : cert.v) j["v"].push_back(round12(c));
    j["q_value"] = round12(cert.q_value);
    j["T"] = round12(cert.T);
    j["field_hash"] = field_hash;
    return j;
}

inline Certificate certificate_from_json(const ordered_json& j, const std::string& expect_hash = "") {
    if (!expect_hash.empty() && j.at("field_hash").get<std::string>() != expect_hash)
        throw integrity_error("certificate field_hash does not match this polynomial");
    Certificate cert;
    cert.delta = j.at("delta").get<double>();
    cert.N = j.at("N").get<int>();
    cert.v = j.at("v").get<std::vector<double>>();
    cert.q_value = j.at("q_value").get<double>();
    cert.T = j.at("T").get<double>();
    return cert;
}

inline void write_certificate(const std::string& path, const Certificate& cert,
                              const std::string& field_hash) {
    std::ofstream out(path);
    if (!out) throw resource_error("cannot open certificate file for writing: " + path);
    out << certificate_to_json(cert, field_hash).dump(2) << "\n";
}

inline Certificate read_certificate(const std::string& path, const std::string& expect_hash = "") {
    std::ifstream in(path);
    if (!in) throw resource_error("cannot open certificate file: " + path);
    ordered_json j = ordered_json::parse(in);
    return certificate_from_json(j, expect_hash);
}

// Splitting cache: one record per sieved prime, keyed to the polynomial by
// its content hash. Version and hash mismatches are hard errors rather than
// silent recomputation, so a stale cache cannot corrupt a bound.
inline constexpr int splitting_cache_version = 1;

struct SplittingCache {
    double t_max = 0.0;
    std::vector<LocalSplitting> records;
};

inline void save_splitting_cache(const std::string& path, const std::string& field_hash,
                                 double t_max, const std::vector<LocalSplitting>& records) {
    ordered_json j;
    j["version"] = splitting_cache_version;
    j["field_hash"] = field_hash;
    j["t_max"] = t_max;
    auto arr = ordered_json::array();
    for (const auto& ls : records) {
        ordered_json rec;
        rec["p"] = ls.p;
        rec["degrees"] = ls.residue_degrees;
        rec["skipped"] = ls.skipped;
        arr.push_back(std::move(rec));
    }
    j["records"] = std::move(arr);
    std::ofstream out(path);
    if (!out) throw resource_error("cannot open cache file for writing: " + path);
    out << j.dump() << "\n";
}

inline SplittingCache load_splitting_cache(const std::string& path, const std::string& field_hash) {
    std::ifstream in(path);
    if (!in) throw resource_error("cannot open cache file: " + path);
    ordered_json j = ordered_json::parse(in);
    if (j.at("version").get<int>() != splitting_cache_version)
        throw integrity_error("splitting cache version mismatch in " + path);
    if (j.at("field_hash").get<std::string>() != field_hash)
        throw integrity_error("splitting cache was built for a different polynomial: " + path);
    SplittingCache cache;
    cache.t_max = j.at("t_max").get<double>();
    for (const auto& rec : j.at("records")) {
        LocalSplitting ls;
        ls.p = rec.at("p").get<std::uint64_t>();
        ls.residue_degrees = rec.at("degrees").get<std::vector<int>>();
        ls.skipped = rec.at("skipped").get<bool>();
        cache.records.push_back(std::move(ls));
    }
    return cache;
}

}  // namespace genbound
