// isoperim: build catalog spaces, run verification suites, emit reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "isoperim/catalog.hpp"
#include "isoperim/inequalities.hpp"
#include "isoperim/kernels.hpp"
#include "isoperim/profile.hpp"
#include "isoperim/report.hpp"
#include "isoperim/suite.hpp"
#include "isoperim/weights.hpp"

namespace {

using isoperim::Field;
using isoperim::Profile;
using isoperim::RunConfig;
using isoperim::SampleSpace;
using isoperim::SpaceKind;
using isoperim::SpaceSpec;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

int apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream is(path);
    if (!is) {
        std::cerr << "config error: cannot open '" << path << "'\n";
        return kExitUsage;
    }
    nlohmann::json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!j.is_object()) {
        std::cerr << "config error: top level must be an object\n";
        return kExitUsage;
    }
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "suite")
                cfg.suite = value.get<std::string>();
            else if (key == "seed")
                cfg.seed = value.get<std::uint64_t>();
            else if (key == "resolution")
                cfg.resolution = value.get<int>();
            else if (key == "tolerance")
                cfg.tolerance = value.get<double>();
            else if (key == "jobs")
                cfg.jobs = value.get<int>();
            else if (key == "out")
                cfg.out_dir = value.get<std::string>();
            else {
                std::cerr << "config error: unknown key '" << key << "'\n";
                return kExitUsage;
            }
        } catch (const std::exception& e) {
            std::cerr << "config error: bad value for key '" << key << "': " << e.what()
                      << "\n";
            return kExitUsage;
        }
    }
    return -1;  // ok
}

SpaceKind parse_kind(const std::string& kind) {
    if (kind == "euclidean_box" || kind == "euclidean") return SpaceKind::euclidean_box;
    if (kind == "half_plane") return SpaceKind::half_plane;
    if (kind == "sphere") return SpaceKind::sphere;
    if (kind == "log_concave" || kind == "gaussian") return SpaceKind::log_concave_product;
    throw CLI::ValidationError("--kind", "unknown kind '" + kind + "'");
}

Profile profile_for_kind(const std::string& kind, int n, double p) {
    if (kind == "euclidean_box" || kind == "euclidean") return Profile::euclidean(n);
    if (kind == "half_plane") return Profile::half_plane();
    if (kind == "sphere") return Profile::sphere(n);
    if (kind == "log_concave" || kind == "gaussian") return Profile::log_concave(p);
    throw CLI::ValidationError("--kind", "unknown kind '" + kind + "'");
}

Field named_weight(const std::string& name, const SampleSpace& s, const Profile& prof) {
    auto dist = [&s]() {
        Field w;
        w.values.resize(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.kind() == SpaceKind::sphere) {
                const double z = s.coord(s.embed_dim - 1, i);
                w.values[i] = std::acos(std::max(-1.0, std::min(1.0, z)));
            } else {
                double d2 = 0.0;
                for (int ch = 0; ch < s.embed_dim; ++ch)
                    d2 += s.coord(ch, i) * s.coord(ch, i);
                w.values[i] = std::sqrt(d2);
            }
        }
        return w;
    };
    if (name == "abs_x" || name == "distance") return dist();
    if (name.rfind("scaled_abs_x:", 0) == 0) {
        const double a = std::stod(name.substr(13));
        Field w = dist();
        for (auto& v : w.values) v *= a;
        return w;
    }
    if (name.rfind("const:", 0) == 0) {
        const double cval = std::stod(name.substr(6));
        return isoperim::constant_field(s, cval);
    }
    if (name == "prototype") {
        const auto g = isoperim::prototype_g(prof, s.total_measure);
        return isoperim::construct_weight(s, g, isoperim::default_radial(s), prof);
    }
    throw CLI::ValidationError("--weight", "unknown weight '" + name + "'");
}

int cmd_verify(const RunConfig& cfg) {
    isoperim::SuiteResult result;
    try {
        result = isoperim::run_suite(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    int failures = 0;
    for (const auto& r : result.results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        if (r.report_only) std::cout << " (report-only)";
        std::cout << "  lhs=" << isoperim::format_double(r.lhs)
                  << " rhs=" << isoperim::format_double(r.rhs)
                  << " ratio=" << isoperim::format_double(r.ratio) << "\n";
        if (!r.pass) ++failures;
    }
    const std::string out = cfg.out_dir.empty() ? "out" : cfg.out_dir;
    isoperim::write_report_files(result, out);
    std::cout << result.results.size() << " checks, " << failures << " failures; report in "
              << out << "/report.json (kernels: " << isoperim::kern::active_backend()
              << ")\n";
    if (result.numeric_failure) return kExitNumeric;
    return failures == 0 ? kExitPass : kExitViolation;
}

int cmd_weights_analyze(const std::string& kind, int n, double p, int resolution,
                        std::uint64_t seed, const std::string& weight_name) {
    SpaceSpec spec;
    spec.kind = parse_kind(kind);
    spec.n = n;
    spec.p = p;
    spec.resolution = resolution;
    spec.seed = seed;
    const SampleSpace s = isoperim::build_space(spec);
    const Profile prof = profile_for_kind(kind, n, p);
    const Field w = named_weight(weight_name, s, prof);
    const auto a = isoperim::analyze_weight(w, s, prof);
    nlohmann::ordered_json j;
    j["space"] = spec.id();
    j["profile"] = prof.id();
    j["weight"] = weight_name;
    j["C_iso"] = std::isinf(a.C_iso) ? nlohmann::ordered_json("inf")
                                     : nlohmann::ordered_json(a.C_iso);
    j["M_norm"] = a.M_norm;
    j["censored"] = a.censored;
    j["unbounded"] = a.unbounded;
    if (a.dt_constant >= 0.0)
        j["dt_constant"] = a.dt_unbounded ? nlohmann::ordered_json("inf")
                                          : nlohmann::ordered_json(a.dt_constant);
    j["level_grid_size"] = a.level_grid.size();
    std::cout << j.dump(2) << "\n";
    return kExitPass;
}

int cmd_profile(const std::string& kind, int n, double p, std::optional<double> eval,
                bool phi, int grid, const std::string& out_path) {
    const Profile prof = profile_for_kind(kind, n, p);
    if (eval) {
        const double v = phi ? prof.phi(*eval) : prof.value(*eval);
        std::cout << isoperim::format_double(v) << "\n";
    }
    if (grid > 0) {
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!out_path.empty()) {
            file.open(out_path, std::ios::binary);
            if (!file) {
                std::cerr << "cannot write '" << out_path << "'\n";
                return kExitUsage;
            }
            os = &file;
        }
        (*os) << "t,I,phi\n";
        const double end = prof.finite_measure() ? prof.domain_end() : 100.0;
        for (int k = 1; k < grid; ++k) {
            const double t = end * k / grid;
            (*os) << isoperim::format_double(t) << ","
                  << isoperim::format_double(prof.value(t)) << ","
                  << isoperim::format_double(prof.phi(t)) << "\n";
        }
    }
    return kExitPass;
}

int cmd_report_diff(const std::string& a, const std::string& b) {
    auto load = [](const std::string& path) {
        std::ifstream is(path);
        if (!is) throw std::runtime_error("cannot open '" + path + "'");
        nlohmann::ordered_json j;
        is >> j;
        return j;
    };
    nlohmann::ordered_json ja, jb;
    try {
        ja = load(a);
        jb = load(b);
    } catch (const std::exception& e) {
        std::cerr << "report diff: " << e.what() << "\n";
        return kExitUsage;
    }
    ja.erase("metadata");
    jb.erase("metadata");
    if (ja == jb) {
        std::cout << "reports identical (hash "
                  << ja["run"].value("hash", std::string("?")) << ")\n";
        return kExitPass;
    }
    std::cout << "reports differ\n";
    if (ja["run"] != jb["run"]) std::cout << "  run headers differ\n";
    const auto& ra = ja["results"];
    const auto& rb = jb["results"];
    if (ra.size() != rb.size()) {
        std::cout << "  result counts: " << ra.size() << " vs " << rb.size() << "\n";
    } else {
        for (std::size_t i = 0; i < ra.size(); ++i)
            if (ra[i] != rb[i])
                std::cout << "  result " << i << " ("
                          << ra[i].value("name", std::string("?")) << ") differs\n";
    }
    return kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of isoperimetric weight inequalities"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    std::string config_path;
    std::uint64_t seed = 42;
    int resolution = 0;
    double tolerance = 0.05;
    int jobs = 0;
    std::string out_dir;
    auto* opt_suite = verify->add_option("--suite", suite, "suite name");
    auto* opt_seed = verify->add_option("--seed", seed, "RNG seed");
    auto* opt_res = verify->add_option("--resolution", resolution, "base grid resolution");
    auto* opt_tol = verify->add_option("--tolerance", tolerance, "discretization tolerance");
    auto* opt_jobs = verify->add_option("--jobs", jobs, "worker threads");
    auto* opt_out = verify->add_option("--out", out_dir, "output directory");
    verify->add_option("--config", config_path, "JSON config file");

    // weights analyze
    auto* weights = app.add_subcommand("weights", "weight analyses");
    auto* analyze = weights->add_subcommand("analyze", "analyze one weight");
    std::string wa_kind = "euclidean_box";
    int wa_n = 2;
    double wa_p = 2.0;
    int wa_res = 128;
    std::uint64_t wa_seed = 42;
    std::string wa_weight = "abs_x";
    analyze->add_option("--kind", wa_kind, "space kind");
    analyze->add_option("--n", wa_n, "dimension");
    analyze->add_option("--p", wa_p, "log-concave exponent");
    analyze->add_option("--resolution", wa_res, "grid resolution");
    analyze->add_option("--seed", wa_seed, "seed");
    analyze->add_option("--weight", wa_weight,
                        "abs_x | scaled_abs_x:<a> | const:<c> | prototype");

    // profile
    auto* profc = app.add_subcommand("profile", "evaluate a catalog profile");
    std::string pr_kind = "euclidean";
    int pr_n = 2;
    double pr_p = 2.0;
    double pr_eval = 0.0;
    bool pr_phi = false;
    int pr_grid = 0;
    std::string pr_out;
    auto* opt_eval = profc->add_option("--eval", pr_eval, "evaluate I(t)");
    profc->add_option("--kind", pr_kind, "euclidean | half_plane | sphere | log_concave");
    profc->add_option("--n", pr_n, "dimension");
    profc->add_option("--p", pr_p, "log-concave exponent");
    profc->add_flag("--phi", pr_phi, "evaluate Phi instead of I");
    profc->add_option("--grid", pr_grid, "emit a CSV table with this many rows");
    profc->add_option("--out", pr_out, "CSV output path");

    // report diff
    auto* reportc = app.add_subcommand("report", "report utilities");
    auto* diffc = reportc->add_subcommand("diff", "compare two report.json files");
    std::string diff_a, diff_b;
    diffc->add_option("a", diff_a, "first report")->required();
    diffc->add_option("b", diff_b, "second report")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (verify->parsed()) {
            RunConfig cfg;
            if (!config_path.empty()) {
                const int rc = apply_config_file(config_path, cfg);
                if (rc >= 0) return rc;
            }
            if (opt_suite->count()) cfg.suite = suite;
            if (opt_seed->count()) cfg.seed = seed;
            if (opt_res->count()) cfg.resolution = resolution;
            if (opt_tol->count()) cfg.tolerance = tolerance;
            if (opt_jobs->count()) {
                cfg.jobs = jobs;
            } else if (cfg.jobs <= 1) {
                if (const char* env = std::getenv("ISOPERIM_JOBS")) cfg.jobs = std::atoi(env);
            }
            if (cfg.jobs < 1) cfg.jobs = 1;
            if (opt_out->count()) cfg.out_dir = out_dir;
            if (!isoperim::suite_known(cfg.suite)) {
                std::cerr << "usage error: unknown suite '" << cfg.suite << "'\n";
                return kExitUsage;
            }
            return cmd_verify(cfg);
        }
        if (analyze->parsed())
            return cmd_weights_analyze(wa_kind, wa_n, wa_p, wa_res, wa_seed, wa_weight);
        if (profc->parsed())
            return cmd_profile(pr_kind, pr_n, pr_p,
                               opt_eval->count() ? std::optional<double>(pr_eval)
                                                 : std::nullopt,
                               pr_phi, pr_grid, pr_out);
        if (diffc->parsed()) return cmd_report_diff(diff_a, diff_b);
        std::cerr << "usage error: no subcommand\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.get_name() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
}
