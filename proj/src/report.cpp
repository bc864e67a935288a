#include "isoperim/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "isoperim/kernels.hpp"

namespace isoperim {

namespace {

// JSON has no inf/nan literals; encode as strings
nlohmann::ordered_json json_number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name)
        out.push_back((std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
                          ? c
                          : '_');
    return out;
}

}  // namespace

bool SuiteResult::all_pass() const {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

std::string format_double(double x) {
    return nlohmann::ordered_json(x).dump();
}

nlohmann::ordered_json report_core_json(const SuiteResult& r) {
    nlohmann::ordered_json core;
    core["run"] = {{"suite", r.config.suite},
                   {"seed", r.config.seed},
                   {"resolution", r.config.resolution},
                   {"tolerance", r.config.tolerance}};
    core["results"] = nlohmann::ordered_json::array();
    for (const auto& rep : r.results) {
        nlohmann::ordered_json j;
        j["name"] = rep.name;
        j["lhs"] = json_number(rep.lhs);
        j["rhs"] = json_number(rep.rhs);
        j["constant_used"] = json_number(rep.constant_used);
        j["ratio"] = json_number(rep.ratio);
        j["pass"] = rep.pass;
        j["report_only"] = rep.report_only;
        j["tolerance"] = json_number(rep.tolerance);
        if (!rep.note.empty()) j["note"] = rep.note;
        if (!rep.extras.empty()) {
            nlohmann::ordered_json ex;
            for (const auto& [k, v] : rep.extras) ex[k] = json_number(v);
            j["extras"] = ex;
        }
        j["provenance"] = {{"seed", rep.prov.seed},
                           {"resolution", rep.prov.resolution},
                           {"tolerance", json_number(rep.prov.tolerance)},
                           {"space", rep.prov.space_id},
                           {"profile", rep.prov.profile_id}};
        if (!rep.curve.empty()) j["curve_points"] = rep.curve.size();
        core["results"].push_back(std::move(j));
    }
    return core;
}

std::string determinism_hash_hex(const nlohmann::ordered_json& core) {
    const std::string s = core.dump();
    // FNV-1a 64
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::ordered_json report_json(const SuiteResult& r) {
    nlohmann::ordered_json core = report_core_json(r);
    nlohmann::ordered_json full;
    full["run"] = core["run"];
    full["run"]["hash"] = determinism_hash_hex(core);
    full["results"] = core["results"];
    full["metadata"] = {{"kernel_backend", std::string(kern::active_backend())},
                        {"jobs", r.config.jobs}};
    return full;
}

void write_report_files(const SuiteResult& r, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream os(fs::path(out_dir) / "report.json", std::ios::binary);
        if (!os) throw std::runtime_error("cannot write report.json under " + out_dir);
        os << report_json(r).dump(2) << "\n";
    }
    bool any_curve = false;
    for (const auto& rep : r.results)
        if (!rep.curve.empty()) any_curve = true;
    if (!any_curve) return;
    fs::create_directories(fs::path(out_dir) / "curves");
    for (const auto& rep : r.results) {
        if (rep.curve.empty()) continue;
        std::ofstream os(fs::path(out_dir) / "curves" / (sanitize(rep.name) + ".csv"),
                         std::ios::binary);
        os << "r,lhs,rhs,ratio\n";
        for (const auto& row : rep.curve)
            os << format_double(row.r) << "," << format_double(row.lhs) << ","
               << format_double(row.rhs) << "," << format_double(row.ratio) << "\n";
    }
}

}  // namespace isoperim
