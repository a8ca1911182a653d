// Command-line front end: seeded experiment execution, persistence, reports.
//
// Exit codes: 0 success, 1 invalid configuration or arguments, 2 numerical
// abort during computation.
#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "weldlab/io.hpp"
#include "weldlab/rng.hpp"

namespace {

using namespace weldlab;

struct Config {
    double gamma = 1.0;
    std::size_t order = 256;     // field truncation N
    std::size_t grid = 1024;     // evaluation grid G
    std::size_t block_dim = 32;  // operator truncation K
    std::size_t samples = 10;
    std::size_t curve_samples = 256;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t threads = 1;
    std::string map_spec = "identity";
    std::string out;
    std::string format = "json";
    bool rotated = false;
    bool apery = false;
    bool martingale = false;
    std::string curve = "circle:0,0,1";
};

// Line-based key=value configuration file; flags override file values,
// unknown keys are rejected.
std::map<std::string, std::string> load_config_file(const std::string& path) {
    static const std::map<std::string, int> known = {
        {"gamma", 0}, {"N", 0},     {"G", 0},       {"K", 0},      {"samples", 0},
        {"seed", 0},  {"threads", 0}, {"map", 0},   {"out", 0},    {"format", 0},
        {"curve", 0}, {"m", 0},
    };
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("config", "cannot read config file " + path);
    std::map<std::string, std::string> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("config", "missing '=' at line " + std::to_string(lineno));
        const std::string key = line.substr(0, eq);
        if (known.find(key) == known.end())
            throw CLI::ValidationError("config", "unknown key '" + key + "' in " + path);
        values[key] = line.substr(eq + 1);
    }
    return values;
}

void apply_config_file(Config& cfg, const std::map<std::string, std::string>& kv) {
    auto get = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (auto* v = get("gamma")) cfg.gamma = std::stod(*v);
    if (auto* v = get("N")) cfg.order = std::stoul(*v);
    if (auto* v = get("G")) cfg.grid = std::stoul(*v);
    if (auto* v = get("K")) cfg.block_dim = std::stoul(*v);
    if (auto* v = get("samples")) cfg.samples = std::stoul(*v);
    if (auto* v = get("seed")) {
        cfg.seed = std::stoull(*v);
        cfg.seed_set = true;
    }
    if (auto* v = get("threads")) cfg.threads = std::stoul(*v);
    if (auto* v = get("map")) cfg.map_spec = *v;
    if (auto* v = get("out")) cfg.out = *v;
    if (auto* v = get("format")) cfg.format = *v;
    if (auto* v = get("curve")) cfg.curve = *v;
    if (auto* v = get("m")) cfg.curve_samples = std::stoul(*v);
}

void emit(const Config& cfg, const std::string& content) {
    if (cfg.out.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
    } else {
        atomic_write(cfg.out, content);
    }
}

void require_seed(const Config& cfg) {
    if (!cfg.seed_set)
        throw CLI::ValidationError("seed", "a seed is mandatory for stochastic commands");
}

void check_gamma_range(double gamma) {
    if (!(gamma > 0.0 && gamma < 2.0))
        throw CLI::ValidationError("gamma", "gamma must lie in (0,2)");
}

JordanCurve parse_curve(const std::string& spec, std::size_t m) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::vector<double> p;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) p.push_back(std::stod(tok));
    }
    if (kind == "circle") {
        if (p.size() != 3) throw CLI::ValidationError("curve", "circle needs cx,cy,r");
        return JordanCurve::circle({p[0], p[1]}, p[2], m);
    }
    if (kind == "ellipse") {
        if (p.size() != 2) throw CLI::ValidationError("curve", "ellipse needs a,b");
        return JordanCurve::ellipse(p[0], p[1], m);
    }
    if (kind == "star") {
        if (p.size() != 2) throw CLI::ValidationError("curve", "star needs amp,lobes");
        return JordanCurve::star(p[0], static_cast<int>(p[1]), m);
    }
    throw CLI::ValidationError("curve", "unknown curve kind " + kind);
}

int run_sample(const Config& cfg) {
    require_seed(cfg);
    check_gamma_range(cfg.gamma);
    std::ostringstream lines;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const std::uint64_t s = split_seed(cfg.seed, i);
        const WeldingSample ws = cfg.rotated
                                     ? sample_rotated_welding(cfg.gamma, cfg.order, cfg.grid, s)
                                     : sample_sle_welding(cfg.gamma, cfg.order, cfg.grid, s);
        lines << to_json(ws).dump() << '\n';
    }
    emit(cfg, lines.str());
    std::cerr << "sample: wrote " << cfg.samples << " weldings (gamma=" << cfg.gamma
              << ", N=" << cfg.order << ", G=" << cfg.grid << ")\n";
    return 0;
}

int run_operator(const Config& cfg) {
    const CircleMap map = standard_map(cfg.map_spec, std::max<std::size_t>(cfg.grid, 4096));
    const std::size_t quad = std::max<std::size_t>(cfg.grid, 16 * cfg.block_dim);
    const OperatorBlocks blocks = compute_blocks(map, cfg.block_dim, quad);
    const auto [d1, d2] = symplectic_defect(blocks);
    json report = {{"map", cfg.map_spec},
                   {"K", cfg.block_dim},
                   {"G", quad},
                   {"hs_norm_N", hs_norm_N(blocks)},
                   {"cov_defect", cov_defect(blocks)},
                   {"unitarity_defect", d1},
                   {"symmetry_defect", d2}};
    if (cfg.format == "csv") {
        std::ostringstream csv;
        csv << "K,G,hs_norm_N,cov_defect,unitarity_defect,symmetry_defect\n"
            << cfg.block_dim << ',' << quad << ',' << hs_norm_N(blocks) << ','
            << cov_defect(blocks) << ',' << d1 << ',' << d2 << '\n';
        emit(cfg, csv.str());
    } else {
        emit(cfg, report.dump(2));
    }
    std::cerr << "operator: " << cfg.map_spec << " hs_norm_N=" << hs_norm_N(blocks)
              << " cov_defect=" << cov_defect(blocks) << '\n';
    return 0;
}

int run_gmc_check(const Config& cfg) {
    if (cfg.apery) {
        const double value = apery_check(cfg.grid);
        const double target = -7.0 * 1.2020569031595942854 / (std::numbers::pi * std::numbers::pi);
        json report = {{"check", "apery"}, {"G", cfg.grid}, {"value", value}, {"target", target}};
        emit(cfg, report.dump(2));
        std::cerr << "gmc-check: apery value " << value << " target " << target << '\n';
        return 0;
    }
    if (cfg.martingale) {
        require_seed(cfg);
        check_gamma_range(cfg.gamma);
        double mean_total = 0.0;
        for (std::size_t i = 0; i < cfg.samples; ++i) {
            Rng rng(split_seed(cfg.seed, i));
            const FourierField h = sample_lgf(cfg.order, rng);
            const BoundaryMeasure m = gmc_measure(evaluate(h, cfg.grid),
                                                  truncated_variance(cfg.order, cfg.grid),
                                                  cfg.gamma);
            mean_total += m.total();
        }
        mean_total /= static_cast<double>(cfg.samples);
        json report = {{"check", "martingale"}, {"samples", cfg.samples},
                       {"mean_total", mean_total}, {"target", two_pi}};
        emit(cfg, report.dump(2));
        std::cerr << "gmc-check: mean total mass " << mean_total << " target " << two_pi << '\n';
        return 0;
    }
    throw CLI::ValidationError("gmc-check", "choose --apery or --martingale");
}

int run_weld(const Config& cfg) {
    const JordanCurve curve = parse_curve(cfg.curve, cfg.curve_samples);
    const ZipperResult r = zipper_welding(curve);
    json report = {{"curve", to_json(curve)}, {"scale", r.scale}, {"welding", to_json(r.welding)}};
    if (cfg.format == "csv") {
        emit(cfg, circle_map_to_csv(r.welding));
    } else {
        emit(cfg, report.dump(2));
    }
    std::cerr << "weld: " << cfg.curve << " scale=" << r.scale << '\n';
    return 0;
}

int run_quasi_invariance(const Config& cfg) {
    require_seed(cfg);
    check_gamma_range(cfg.gamma);
    const AnalyticMap phi = standard_map(cfg.map_spec);
    const std::vector<std::pair<std::string, TestStatistic>> stats = {
        {"upper_half_at_pi",
         [](const CircleMap& m) {
             const double v = std::fmod(m(std::numbers::pi), two_pi);
             return (v > 0.0 && v < std::numbers::pi) ? 1.0 : 0.0;
         }},
        {"sin_at_pi_half", [](const CircleMap& m) { return std::sin(m(std::numbers::pi / 2)); }},
        {"cos_at_pi", [](const CircleMap& m) { return std::cos(m(std::numbers::pi)); }},
    };
    const ExperimentReport report =
        importance_identity(cfg.gamma, phi, stats, cfg.samples, cfg.order, cfg.block_dim,
                            cfg.grid, cfg.seed, 20, cfg.threads);
    if (cfg.format == "csv") {
        emit(cfg, report_to_csv(report));
    } else {
        emit(cfg, to_json(report).dump(2));
    }
    std::cerr << "quasi-invariance: " << (report.passed ? "PASS" : "FAIL")
              << " (n=" << report.samples << ", N=" << report.order
              << ", K=" << report.block_dim << ")\n";
    return 0;
}

int run_fixtures(const Config& cfg) {
    const auto suite = welding_fixture_suite(cfg.curve_samples);
    json report = json::array();
    for (const auto& f : suite) {
        report.push_back({{"name", f.name},
                          {"scale", f.scale},
                          {"wp_energy", wp_energy(f.welding)},
                          {"curve", to_json(f.curve)},
                          {"welding", to_json(f.welding)}});
    }
    emit(cfg, report.dump(2));
    std::cerr << "fixtures: " << suite.size() << " weldings\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Config cfg;
    CLI::App app{"Random conformal welding laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value configuration file");
        sub->add_option("--gamma", cfg.gamma, "chaos parameter in (0,2)");
        sub->add_option("--N", cfg.order, "field truncation order");
        sub->add_option("--G", cfg.grid, "evaluation grid size");
        sub->add_option("--K", cfg.block_dim, "operator truncation dimension");
        sub->add_option("--samples", cfg.samples, "sample count");
        sub->add_option("--seed", cfg.seed, "random seed (mandatory for stochastic commands)")
            ->each([&](const std::string&) { cfg.seed_set = true; });
        sub->add_option("--threads", cfg.threads, "worker thread count");
        sub->add_option("--map", cfg.map_spec,
                        "map spec: identity | rotation:a | moebius:re[,im] | sine:eps,k,d0");
        sub->add_option("--out", cfg.out, "output path (atomic write); stdout if omitted");
        sub->add_option("--format", cfg.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--curve", cfg.curve, "curve spec: circle:cx,cy,r | ellipse:a,b | star:amp,lobes");
        sub->add_option("--m", cfg.curve_samples, "curve boundary sample count");
    };

    auto* sample = app.add_subcommand("sample", "draw welding homeomorphism samples");
    sample->add_flag("--rotated", cfg.rotated, "use the rotated-pair construction");
    auto* op = app.add_subcommand("operator", "pullback operator diagnostics for a map");
    auto* gmc = app.add_subcommand("gmc-check", "quadrature and normalization checks");
    gmc->add_flag("--apery", cfg.apery, "log-kernel double integral vs closed form");
    gmc->add_flag("--martingale", cfg.martingale, "mean total mass vs 2 pi");
    auto* weld = app.add_subcommand("weld", "forward welding of a Jordan curve");
    auto* quasi = app.add_subcommand("quasi-invariance", "importance-sampling identity experiment");
    auto* fixtures = app.add_subcommand("fixtures", "zippered welding fixture suite");
    for (CLI::App* sub : {sample, op, gmc, weld, quasi, fixtures}) add_common(sub);

    try {
        // Config file values act as defaults, flags parsed afterwards override
        // them; pre-scan argv so the file is loaded before CLI11 runs.
        for (int i = 1; i + 1 < argc; ++i) {
            if (std::string(argv[i]) == "--config") {
                apply_config_file(cfg, load_config_file(argv[i + 1]));
                break;
            }
        }
        app.parse(argc, argv);
        if (const char* env = std::getenv("WELDLAB_THREADS")) cfg.threads = std::stoul(env);
        if (cfg.threads == 0) cfg.threads = 1;

        if (*sample) return run_sample(cfg);
        if (*op) return run_operator(cfg);
        if (*gmc) return run_gmc_check(cfg);
        if (*weld) return run_weld(cfg);
        if (*quasi) return run_quasi_invariance(cfg);
        if (*fixtures) return run_fixtures(cfg);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical abort: " << e.what() << '\n';
        return 2;
    }
}
