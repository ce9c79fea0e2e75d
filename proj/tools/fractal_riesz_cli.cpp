// Command-line driver: simulate Gaussian fields, evaluate potentials and
// energies of occupation measures, run Hoelder-constrained minimizations,
// estimate dimensions and moduli, tabulate explicit constants, and verify
// the BV composition estimate. JSON configs in, JSON/CSV artifacts out.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frz/fractal_riesz.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kUsage = R"(fractal-riesz <subcommand> [options]

Subcommands:
  simulate        sample fBm paths / fB fields / bridges to CSV
  energy          self or mutual Riesz energy of a measure or field
  potential       Riesz/Bessel potential of a measure at points
  minimize        Hoelder-constrained energy minimization
  dimension       box-counting dimension of a point cloud or curve
  moduli          oscillation moduli statistics of a curve
  constants       tabulate explicit constants over a parameter grid
  compose-verify  multiplicative composition estimate on (phi, u)
  witness         Koch curves and feasible initializers

Common options: --config PATH --out DIR --seed U64 --workers N --format {csv,json}
)";

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
    std::string format = "csv";
};

void add_common(CLI::App& app, CommonOpts& c) {
    app.add_option("--config", c.config_path, "JSON config file");
    app.add_option("--out", c.out_dir, "output directory");
    app.add_option("--seed", c.seed, "seed override")->each([&](const std::string&) { c.seed_set = true; });
    app.add_option("--workers", c.workers, "worker threads");
    app.add_option("--format", c.format, "artifact format hint (csv|json)");
}

int resolve_workers(const CommonOpts& c) {
    if (c.workers > 0) return c.workers;
    if (const char* env = std::getenv("FRACTAL_RIESZ_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

json load_config(const CommonOpts& c) {
    if (c.config_path.empty()) return json::object();
    std::ifstream f(c.config_path);
    if (!f) throw std::invalid_argument("cannot open config: " + c.config_path);
    json j;
    f >> j;
    return j;
}

void write_text(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path().empty() ? "." : p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << content;
}

void write_json(const fs::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

frz::SampledField load_field(const json& cfg, const std::string& csv_key = "field_csv") {
    if (!cfg.contains(csv_key)) throw std::invalid_argument("config needs " + csv_key);
    int k = cfg.value("k", 1), n = cfg.value("n", 1), m = cfg.value("m", 0);
    if (m == 0) throw std::invalid_argument("config needs m for the field grid");
    return frz::field_from_csv(slurp(cfg[csv_key].get<std::string>()), k, n, m);
}

// ---------------------------------------------------------------------------

int cmd_simulate(CLI::App& app, CommonOpts& c, int argc, char** argv) {
    double H = -1.0;
    int k = -1, n = -1, m = -1, seeds = -1;
    std::string kind;
    app.add_option("--H", H, "Hurst index");
    app.add_option("--k", k, "parameter dimension");
    app.add_option("--n", n, "target dimension");
    app.add_option("--m", m, "points per axis");
    app.add_option("--seeds", seeds, "number of paths");
    app.add_option("--kind", kind, "fbm1d|fbf|bridge");
    app.parse(argc, argv);
    json cfg = load_config(c);
    if (H < 0) H = cfg.value("H", 0.5);
    if (k < 0) k = cfg.value("k", 1);
    if (n < 0) n = cfg.value("n", 1);
    if (m < 0) m = cfg.value("m", 1025);
    if (seeds < 0) seeds = cfg.value("seeds", 1);
    if (kind.empty()) kind = cfg.value("kind", std::string(k == 1 && n == 1 ? "fbm1d" : "fbf"));
    std::uint64_t seed0 = c.seed_set ? c.seed : cfg.value("seed", 0ull);

    json resolved{{"command", "simulate"}, {"kind", kind}, {"H", H}, {"k", k}, {"n", n},
                  {"m", m},               {"seeds", seeds}, {"seed", seed0}};
    fs::path out(c.out_dir);
    for (int s = 0; s < seeds; ++s) {
        frz::FieldSpec spec{H, k, n, m, seed0 + static_cast<std::uint64_t>(s)};
        frz::SamplerBackend backend;
        frz::SampledField f;
        if (kind == "fbm1d")
            f = frz::sample_fbm_1d(spec, &backend);
        else if (kind == "fbf")
            f = frz::sample_fbf(spec, &backend);
        else if (kind == "bridge")
            f = frz::make_bridge(frz::sample_fbf(spec, &backend), H);
        else
            throw std::invalid_argument("simulate: unknown kind " + kind);
        char name[64];
        std::snprintf(name, sizeof(name), "path_%04d.csv", s);
        write_text(out / name, frz::field_to_csv(f));
        json meta = frz::field_metadata(f, H, spec.seed,
                                        backend == frz::SamplerBackend::CirculantEmbedding
                                            ? "circulant-embedding"
                                            : "covariance-sqrt");
        meta["config"] = resolved;
        std::snprintf(name, sizeof(name), "path_%04d.meta.json", s);
        write_json(out / name, meta);
    }
    std::printf("simulate: wrote %d %s path(s) (H=%g, k=%d, n=%d, m=%d) to %s\n", seeds,
                kind.c_str(), H, k, n, m, c.out_dir.c_str());
    return 0;
}

int cmd_energy(CLI::App& app, CommonOpts& c, int argc, char** argv) {
    app.parse(argc, argv);
    json cfg = load_config(c);
    int workers = resolve_workers(c);
    double alpha = cfg.at("alpha").get<double>();
    std::string kind = cfg.value("kind", "self");
    frz::DiscreteMeasure mu = cfg.contains("measure_csv")
                                  ? frz::measure_from_csv(slurp(cfg["measure_csv"]))
                                  : frz::occupation_measure(load_field(cfg));
    json rep{{"command", "energy"}, {"alpha", alpha}, {"kind", kind}, {"config", cfg}};
    double value = 0.0;
    if (kind == "self") {
        auto rule = cfg.value("diagonal", "exclude") == std::string("cellmidpoint")
                        ? frz::DiagonalRule::CellMidpoint
                        : frz::DiagonalRule::Exclude;
        value = frz::self_energy(mu, alpha, rule, workers);
    } else if (kind == "mutual") {
        frz::DiscreteMeasure nu = frz::measure_from_csv(slurp(cfg.at("medium_csv")));
        value = frz::mutual_energy(mu, nu, alpha, workers);
    } else {
        throw std::invalid_argument("energy: kind must be self or mutual");
    }
    rep["value"] = std::isfinite(value) ? json(value) : json("inf");
    write_json(fs::path(c.out_dir) / "energy.json", rep);
    std::printf("energy: %s %s = %.12g\n", kind.c_str(), "I_alpha", value);
    return 0;
}

int cmd_potential(CLI::App& app, CommonOpts& c, int argc, char** argv) {
    app.parse(argc, argv);
    json cfg = load_config(c);
    int workers = resolve_workers(c);
    double alpha = cfg.at("alpha").get<double>();
    std::string family = cfg.value("family", "riesz");
    frz::DiscreteMeasure mu = cfg.contains("measure_csv")
                                  ? frz::measure_from_csv(slurp(cfg["measure_csv"]))
                                  : frz::occupation_measure(load_field(cfg));
    std::vector<std::vector<double>> points;
    if (cfg.contains("points")) {
        for (const auto& p : cfg["points"]) points.push_back(p.get<std::vector<double>>());
    } else if (cfg.contains("points_csv")) {
        frz::DiscreteMeasure pts = frz::measure_from_csv(slurp(cfg["points_csv"]));
        for (std::size_t i = 0; i < pts.count(); ++i) {
            auto a = pts.atom(i);
            points.emplace_back(a.begin(), a.end());
        }
    } else {
        throw std::invalid_argument("potential: config needs points or points_csv");
    }
    std::string csv;
    for (int d = 1; d <= mu.n; ++d) csv += "x_" + std::to_string(d) + ",";
    csv += "potential\n";
    json rows = json::array();
    for (const auto& p : points) {
        double v = family == "bessel" ? frz::bessel_potential(mu, p, alpha, workers)
                                      : frz::riesz_potential(mu, p, alpha, workers);
        for (double x : p) csv += frz::format_double(x) + ",";
        csv += frz::format_double(v) + "\n";
        rows.push_back(json{{"point", p},
                            {"value", std::isfinite(v) ? json(v) : json("inf")}});
    }
    if (c.format == "json") {
        write_json(fs::path(c.out_dir) / "potentials.json",
                   json{{"command", "potential"}, {"rows", rows}, {"config", cfg}});
    } else {
        write_text(fs::path(c.out_dir) / "potentials.csv", csv);
        json meta{{"command", "potential"}, {"config", cfg}, {"points", points.size()}};
        write_json(fs::path(c.out_dir) / "potentials.meta.json", meta);
    }
    std::printf("potential: evaluated %zu %s potential(s) of order %g\n", points.size(),
                family.c_str(), alpha);
    return 0;
}

frz::ProblemSpec problem_from_config(const json& cfg) {
    frz::ProblemSpec p;
    std::string obj = cfg.value("objective", "self");
    if (obj == "self")
        p.objective = frz::ObjectiveKind::SelfInteraction;
    else if (obj == "mutual")
        p.objective = frz::ObjectiveKind::MutualInteraction;
    else if (obj == "ppotential")
        p.objective = frz::ObjectiveKind::PPotential;
    else
        throw std::invalid_argument("minimize: objective must be self|mutual|ppotential");
    p.alpha = cfg.at("alpha").get<double>();
    p.gamma = cfg.at("gamma").get<double>();
    p.rho = cfg.at("rho").get<double>();
    p.k = cfg.value("k", 1);
    p.n = cfg.value("n", 2);
    p.m = cfg.value("m", 257);
    p.p_power = cfg.value("p_power", 1.0);
    p.seed = cfg.value("seed", 0ull);
    if (cfg.contains("medium_csv")) p.medium = frz::measure_from_csv(slurp(cfg["medium_csv"]));
    if (cfg.contains("cap_M")) {
        frz::PotentialCap cap;
        cap.M = cfg["cap_M"].get<double>();
        if (cfg.contains("cap_points_csv")) {
            frz::DiscreteMeasure pts = frz::measure_from_csv(slurp(cfg["cap_points_csv"]));
            cap.eval_points = pts.atoms;
        } else {
            cap.eval_points = p.medium.atoms;
        }
        p.potential_cap = cap;
    }
    if (cfg.contains("endpoint")) p.endpoint = cfg["endpoint"].get<std::vector<double>>();
    p.validate();
    return p;
}

int cmd_minimize(CLI::App& app, CommonOpts& c, int argc, char** argv) {
    app.parse(argc, argv);
    json cfg = load_config(c);
    frz::ProblemSpec prob = problem_from_config(cfg);
    if (c.seed_set) prob.seed = c.seed;
    frz::MinimizeOptions opts;
    opts.workers = resolve_workers(c);
    opts.seed = prob.seed;
    if (cfg.contains("optimizer")) {
        const json& o = cfg["optimizer"];
        opts.max_iters = o.value("max_iters", opts.max_iters);
        opts.step0 = o.value("step0", opts.step0);
        opts.backtrack_factor = o.value("backtrack_factor", opts.backtrack_factor);
        opts.anneal.restarts = o.value("restarts", opts.anneal.restarts);
        opts.anneal.sigma0 = o.value("sigma0", opts.anneal.sigma0);
        opts.anneal.decay = o.value("decay", opts.anneal.decay);
    }
    frz::SampledField init = cfg.contains("init_csv")
                                 ? frz::field_from_csv(slurp(cfg["init_csv"]), prob.k, prob.n, prob.m)
                                 : frz::feasible_init(prob, prob.seed);
    frz::MinimizerResult res = frz::minimize(prob, init, opts);
    json rep = frz::minimizer_result_json(res);
    rep["config"] = cfg;
    fs::path out(c.out_dir);
    write_json(out / "result.json", rep);
    write_text(out / "field.csv", frz::field_to_csv(res.field));
    write_text(out / "trace.csv", frz::trace_to_csv(res.trace));
    std::printf("minimize: objective %.10g, holder %.6g, %zu accepted steps -> %s\n",
                res.objective_value, res.constraint_report.holder_seminorm, res.trace.size(),
                c.out_dir.c_str());
    return 0;
}

int cmd_dimension(CLI::App& app, CommonOpts& c, int argc, char** argv) {
    app.parse(argc, argv);
    json cfg = load_config(c);
    std::vector<double> points;
    int n = 0;
    if (cfg.contains("points_csv")) {
        frz::DiscreteMeasure pts = frz::measure_from_csv(slurp(cfg["points_csv"]));
        points = pts.atoms;
        n = pts.n;
    } else {
        frz::SampledField f = load_field(cfg);
        n = f.n;
        int densify = cfg.value("densify", 1);
        points = (f.k == 1 && densify > 1) ? frz::densify_curve(f, densify) : f.values;
    }
    std::vector<double> scales;
    if (cfg.contains("scales") && cfg["scales"].is_array()) {
        scales = cfg["scales"].get<std::vector<double>>();
    } else {
        const json& s = cfg.at("scales");
        double lo = s.at("min").get<double>(), hi = s.at("max").get<double>();
        int count = s.value("count", 8);
        for (int i = 0; i < count; ++i)
            scales.push_back(hi * std::pow(lo / hi, static_cast<double>(i) / (count - 1)));
    }
    frz::BoxDimensionResult r = frz::box_dimension(points, n, scales);
    json rep{{"command", "dimension"},
             {"estimate", r.estimate},
             {"r_squared", r.r_squared},
             {"window_begin", r.window_begin},
             {"window_end", r.window_end},
             {"degenerate", r.degenerate},
             {"config", cfg}};
    write_json(fs::path(c.out_dir) / "dimension.json", rep);
    std::string csv = "scale,count\n";
    for (std::size_t i = 0; i < r.scales.size(); ++i)
        csv += frz::format_double(r.scales[i]) + "," + std::to_string(r.counts[i]) + "\n";
    write_text(fs::path(c.out_dir) / "boxcounts.csv", csv);
    std::printf("dimension: estimate %.4f (R^2 %.5f, window [%zu,%zu))\n", r.estimate, r.r_squared,
                r.window_begin, r.window_end);
    return 0;
}

int cmd_moduli(CLI::App& app, CommonOpts& c, int argc, char** argv) {
    app.parse(argc, argv);
    json cfg = load_config(c);
    frz::SampledField f = load_field(cfg);
    std::vector<double> hs = cfg.at("h_values").get<std::vector<double>>();
    double kp = cfg.value("kappa_plus", 0.5), km = cfg.value("kappa_minus", 0.5);
    frz::ModuliReport rep = frz::oscillation_moduli(f, hs, kp, km);
    json rows = json::array();
    for (const auto& row : rep.rows)
        rows.push_back(json{{"h", row.h},
                            {"upper", row.upper},
                            {"lower", row.lower},
                            {"upper_ratio", row.upper_ratio},
                            {"lower_ratio", row.lower_ratio},
                            {"skipped", row.skipped}});
    json out{{"command", "moduli"}, {"kappa_plus", kp}, {"kappa_minus", km}, {"rows", rows},
             {"config", cfg}};
    if (cfg.contains("bdpot") && cfg["bdpot"].value("enabled", false)) {
        frz::BdpotReport bd = frz::bdpot_diagnostic(f, cfg["bdpot"].at("alpha").get<double>(),
                                                    cfg["bdpot"].at("kappa_minus").get<double>());
        out["bdpot"] = json{{"potential_sup", std::isfinite(bd.potential_sup)
                                                  ? json(bd.potential_sup)
                                                  : json("inf")},
                            {"flagged", bd.flagged}};
    }
    write_json(fs::path(c.out_dir) / "moduli.json", out);
    std::printf("moduli: %zu h-value(s), kappa+ %.3f kappa- %.3f\n", rep.rows.size(), kp, km);
    return 0;
}

json constant_row(const std::string& which, const json& p) {
    using namespace frz;
    int n = p.value("n", 2), k = p.value("k", 1), ell = p.value("ell", 8);
    double alpha = p.value("alpha", 1.5), H = p.value("H", 0.5), eps = p.value("eps", 0.5);
    if (which == "epsilon_range") {
        EpsilonRange r = epsilon_range(n, alpha, H, k);
        return json{{"name", which}, {"lo", r.lo}, {"hi", r.hi}, {"empty", r.empty()}};
    }
    ConstantReport rep;
    if (which == "grid_integral")
        rep = grid_integral(k, p.at("a").get<double>());
    else if (which == "gaussian_moment")
        rep = gaussian_moment(n, p.at("p").get<double>());
    else if (which == "berman_C")
        rep = berman_C(n, H, alpha, eps, k);
    else if (which == "m0")
        rep = m0_bound(n, alpha, H, eps, k);
    else if (which == "m1")
        rep = m1_bound(n, alpha, H, eps, k, ell);
    else if (which == "rho1")
        rep = rho1_bound(n, alpha, H, eps, k, ell, p.at("M").get<double>());
    else if (which == "bridge_C_prime")
        rep = bridge_C_prime(n, alpha, H, eps);
    else if (which == "pitt") {
        CovModel cov{p.value("model", "fbf") == std::string("bridge") ? CovKind::Bridge : CovKind::FBF,
                     H, 1};
        rep = pitt_condition(cov, n, alpha, p.at("delta").get<double>(), k);
    } else {
        throw std::invalid_argument("constants: unknown entry " + which);
    }
    return frz::constant_report_json(rep);
}

int cmd_constants(CLI::App& app, CommonOpts& c, int argc, char** argv) {
    std::string grid_path;
    app.add_option("--grid", grid_path, "JSON grid file (alias for --config)");
    app.parse(argc, argv);
    if (!grid_path.empty() && c.config_path.empty()) c.config_path = grid_path;
    json cfg = load_config(c);
    json rows = json::array();
    std::string csv = "name,value,method,error_estimate,inputs\n";
    for (const auto& entry : cfg.at("grid")) {
        std::string which = entry.at("which").get<std::string>();
        json row = constant_row(which, entry);
        rows.push_back(row);
        std::string val = row.contains("value") ? (row["value"].is_string()
                                                       ? row["value"].get<std::string>()
                                                       : frz::format_double(row["value"].get<double>()))
                                                : "";
        if (which == "epsilon_range")
            val = "(" + frz::format_double(row["lo"].get<double>()) + "," +
                  frz::format_double(row["hi"].get<double>()) + ")";
        csv += which + "," + val + "," + row.value("method", "") + "," +
               (row.contains("error_estimate") ? frz::format_double(row["error_estimate"].get<double>())
                                               : "") +
               ",\"" + entry.dump() + "\"\n";
        // the guaranteed-event probability of the Markov bound, when applicable
        if (which == "m0" && entry.contains("M")) {
            double M = entry["M"].get<double>();
            double m0v = row["value"].is_number() ? row["value"].get<double>() : frz::kInf;
            rows.back()["event_probability_lower_bound"] =
                std::isfinite(m0v) && M > m0v ? 1.0 - m0v / M : 0.0;
        }
    }
    write_text(fs::path(c.out_dir) / "constants.csv", csv);
    write_json(fs::path(c.out_dir) / "constants.json",
               json{{"command", "constants"}, {"rows", rows}, {"config", cfg}});
    std::printf("constants: tabulated %zu entr%s -> %s\n", rows.size(),
                rows.size() == 1 ? "y" : "ies", c.out_dir.c_str());
    return 0;
}

int cmd_compose_verify(CLI::App& app, CommonOpts& c, int argc, char** argv) {
    app.parse(argc, argv);
    json cfg = load_config(c);
    json meta = json::parse(slurp(cfg.at("phi_meta")));
    frz::BVGridFunction phi = frz::bv_from_csv(slurp(cfg.at("phi_csv")), meta);
    frz::SampledField u = frz::field_from_csv(slurp(cfg.at("u_csv")), cfg.value("k", 1),
                                              cfg.value("n", phi.n), cfg.at("m").get<int>());
    const json& pj = cfg.at("params");
    auto expo = [&](const char* key) {
        const json& v = pj.at(key);
        if (v.is_string()) return frz::kInf;
        return v.get<double>();
    };
    frz::CompositionParams params{pj.at("s").get<double>(), pj.at("theta").get<double>(),
                                  expo("p"), expo("q"), expo("r"), pj.at("beta").get<double>()};
    frz::MainEstimateReport rep = frz::verify_main_estimate(phi, u, params);
    json out{{"command", "compose-verify"},
             {"lhs", rep.lhs},
             {"rhs_factor_seminorm", rep.rhs_factor_seminorm},
             {"rhs_factor_V", rep.rhs_factor_V},
             {"ratio", rep.ratio},
             {"jump_mass", rep.jump_mass},
             {"config", cfg}};
    write_json(fs::path(c.out_dir) / "compose_verify.json", out);
    std::printf("compose-verify: lhs %.6g <= ratio %.6g * rhs (%.6g * %.6g)\n", rep.lhs, rep.ratio,
                rep.rhs_factor_seminorm, rep.rhs_factor_V);
    return 0;
}

int cmd_witness(CLI::App& app, CommonOpts& c, int argc, char** argv) {
    app.parse(argc, argv);
    json cfg = load_config(c);
    std::string kind = cfg.value("kind", "koch");
    fs::path out(c.out_dir);
    if (kind == "koch") {
        frz::KochSpec spec{cfg.value("gamma", std::log(3.0) / std::log(4.0)), cfg.value("level", 5), 2};
        frz::SampledField f = frz::koch_curve(spec);
        write_text(out / "witness.csv", frz::field_to_csv(f));
        json meta{{"command", "witness"}, {"kind", "koch"}, {"gamma", spec.gamma},
                  {"level", spec.level}, {"m", f.m},        {"config", cfg}};
        write_json(out / "witness.meta.json", meta);
        std::printf("witness: koch curve gamma %.6f level %d (%d points)\n", spec.gamma, spec.level,
                    f.m);
    } else if (kind == "feasible-init") {
        frz::ProblemSpec prob = problem_from_config(cfg);
        if (c.seed_set) prob.seed = c.seed;
        frz::SampledField f = frz::feasible_init(prob, prob.seed);
        write_text(out / "witness.csv", frz::field_to_csv(f));
        json meta{{"command", "witness"},
                  {"kind", "feasible-init"},
                  {"holder_seminorm", frz::holder_seminorm(
                                          f, prob.gamma,
                                          prob.k == 1 ? frz::PairPolicy::all()
                                                      : frz::PairPolicy::sampled(1 << 16, prob.seed))},
                  {"config", cfg}};
        write_json(out / "witness.meta.json", meta);
        std::printf("witness: feasible init inside the gamma=%.3f ball of radius %.3f\n", prob.gamma,
                    prob.rho);
    } else {
        throw std::invalid_argument("witness: kind must be koch or feasible-init");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fputs(kUsage, stderr);
        return 64;
    }
    std::string sub = argv[1];
    CLI::App app{"fractal-riesz " + sub};
    CommonOpts common;
    add_common(app, common);
    app.allow_extras(false);
    // shift: parse flags after the subcommand
    int sub_argc = argc - 1;
    char** sub_argv = argv + 1;
    try {
        if (sub == "simulate") return cmd_simulate(app, common, sub_argc, sub_argv);
        if (sub == "energy") return cmd_energy(app, common, sub_argc, sub_argv);
        if (sub == "potential") return cmd_potential(app, common, sub_argc, sub_argv);
        if (sub == "minimize") return cmd_minimize(app, common, sub_argc, sub_argv);
        if (sub == "dimension") return cmd_dimension(app, common, sub_argc, sub_argv);
        if (sub == "moduli") return cmd_moduli(app, common, sub_argc, sub_argv);
        if (sub == "constants") return cmd_constants(app, common, sub_argc, sub_argv);
        if (sub == "compose-verify") return cmd_compose_verify(app, common, sub_argc, sub_argv);
        if (sub == "witness") return cmd_witness(app, common, sub_argc, sub_argv);
        if (sub == "-h" || sub == "--help" || sub == "help") {
            std::fputs(kUsage, stdout);
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        CLI::App dummy;
        int code = dummy.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const frz::feasibility_error& e) {
        std::fprintf(stderr, "feasibility error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    std::fprintf(stderr, "unknown subcommand: %s\n\n", sub.c_str());
    std::fputs(kUsage, stderr);
    return 64;
}
