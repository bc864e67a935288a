#pragma once

// Machine-readable run reports: deterministic JSON (with a content hash) and
// per-case CSV curves.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoperim/inequalities.hpp"

namespace isoperim {

struct RunConfig {
    std::string suite = "all";
    std::uint64_t seed = 42;
    int resolution = 0;  // 0 = per-space defaults
    double tolerance = 0.05;
    int jobs = 1;
    std::string out_dir;
};

struct SuiteResult {
    RunConfig config;
    std::vector<InequalityReport> results;
    bool numeric_failure = false;  // degenerate extrapolation or similar

    bool all_pass() const;
};

// deterministic core (run header + results); the hash covers exactly this
nlohmann::ordered_json report_core_json(const SuiteResult& r);

// full report: run (with hash), results, metadata (excluded from the hash)
nlohmann::ordered_json report_json(const SuiteResult& r);

std::string determinism_hash_hex(const nlohmann::ordered_json& core);

// report.json plus curves/<case>.csv under out_dir
void write_report_files(const SuiteResult& r, const std::string& out_dir);

// shortest-roundtrip double formatting (matches the JSON serializer)
std::string format_double(double x);

}  // namespace isoperim
