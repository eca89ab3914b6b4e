// likednet: like-rate network analytics.
//
// Subcommands: generate (Barabasi-Albert edge lists), solve (likedness /
// desirability for one graph+rate file), simulate (rate-ensemble Monte
// Carlo), fit (power / exponential regressions over the emitted CSVs).
// Every run writes a manifest sufficient to reproduce its outputs
// byte-identically; --from-manifest replays one.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "likednet/centrality.hpp"
#include "likednet/desirability.hpp"
#include "likednet/errors.hpp"
#include "likednet/fitting.hpp"
#include "likednet/graph.hpp"
#include "likednet/likedness.hpp"
#include "likednet/markov.hpp"
#include "likednet/simulation.hpp"
#include "likednet/text.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace likednet;

namespace {

constexpr const char* kTool = "likednet";
constexpr const char* kVersion = "0.1.0";

json make_manifest(const std::string& subcommand, json config, json inputs, json outputs) {
    json m;
    m["tool"] = kTool;
    m["version"] = kVersion;
    m["subcommand"] = subcommand;
    // the one seed all randomness flows from, surfaced beside the config
    if (config.contains("seed"))
        m["master_seed"] = config["seed"];
    else if (config.contains("ba-seed"))
        m["master_seed"] = config["ba-seed"];
    m["config"] = std::move(config);
    m["inputs"] = std::move(inputs);
    m["outputs"] = std::move(outputs);
    return m;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

std::string config_header(const json& config) {
    return "# " + std::string(kTool) + " " + kVersion + " config " + config.dump() + "\n";
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    BAParams ba;
    std::string output;
};

int cmd_generate(const GenerateArgs& a) {
    const Graph g = generate_ba(a.ba);
    save_graph_file(g, a.output);
    json config{{"m0", a.ba.m0}, {"t", a.ba.t}, {"m", a.ba.m}, {"seed", a.ba.seed}};
    write_json_file(a.output + ".manifest.json",
                    make_manifest("generate", config, json::object(),
                                  json{{"graph", a.output}}));
    std::cout << "wrote " << a.output << " (" << g.n << " vertices, " << g.edges.size()
              << " edges)\n";
    return 0;
}

// ------------------------------------------------------------------- solve

struct SolveArgs {
    std::string graph_path;
    std::string rates_path;
    std::string output;
    SolverConfig solver;
    long product_n = -1;  // <0: skip the product-formula check
};

int cmd_solve(const SolveArgs& a) {
    const Graph g = load_graph_file(a.graph_path);
    if (!is_connected(g)) throw std::invalid_argument("graph is not connected");
    const RateMatrix rates = load_rate_file(g, a.rates_path);

    auto rep = solve_detailed(g, rates, a.solver);
    if (!rep.converged)
        throw ConvergenceError("likedness solve did not converge", rep.residual, rep.iterations);

    const auto p = stationary(g);
    const auto lstar = normalize_unique(rep.likedness, p);
    const auto nd = neighbor_desirability(g, rates, lstar);
    const auto res = residual(g, rates, lstar);
    const double drift_p_unit = stationary_log_drift(g, rates, lstar, p);
    const auto l_logstat = log_stationary_normalize(g, rates, lstar, p);

    json out;
    out["n"] = g.n;
    out["iterations"] = rep.iterations;
    out["residual"] = rep.residual;
    out["lstar"] = lstar.values;
    out["nd"] = nd.values;
    out["residuals"] = res;
    // the p-unit and zero-drift scalings differ in general; report both
    out["drift"] = {{"p_unit", drift_p_unit},
                    {"log_stationary_scale", l_logstat.values[0] / lstar.values[0]}};
    if (a.product_n >= 0) {
        const auto prep = product_formula_report(g, rates, l_logstat, p, a.product_n);
        out["product_check"] = {{"truncation", prep.truncation},
                                {"drift", prep.drift},
                                {"ratio_cv", prep.ratio_cv},
                                {"product", prep.product},
                                {"ratio", prep.ratio}};
    }
    write_json_file(a.output, out);

    json config{{"graph", a.graph_path}, {"rates", a.rates_path},
                {"tol", a.solver.tol},   {"max-iter", a.solver.max_iter},
                {"alpha", a.solver.alpha}, {"product-n", a.product_n}};
    write_json_file(a.output + ".manifest.json",
                    make_manifest("solve", config,
                                  json{{"graph", a.graph_path}, {"rates", a.rates_path}},
                                  json{{"result", a.output}}));
    std::cout << "solved in " << rep.iterations << " iterations, residual " << rep.residual
              << "\n";
    return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string graph_path;  // mutually exclusive with ba params
    bool use_ba = false;
    BAParams ba;
    ExperimentConfig cfg;
    int threads = 1;
    std::string outdir;
};

json simulate_config(const SimulateArgs& a) {
    json config;
    if (a.use_ba) {
        config["ba-m0"] = a.ba.m0;
        config["ba-t"] = a.ba.t;
        config["ba-m"] = a.ba.m;
        config["ba-seed"] = a.ba.seed;
    } else {
        config["graph"] = a.graph_path;
    }
    config["ensembles"] = a.cfg.ensemble_count;
    config["lambda"] = a.cfg.lambda;
    config["seed"] = a.cfg.master_seed;
    config["tol"] = a.cfg.solver.tol;
    config["max-iter"] = a.cfg.solver.max_iter;
    config["alpha"] = a.cfg.solver.alpha;
    config["bins"] = a.cfg.bins.count;
    config["max-failure-rate"] = a.cfg.max_failure_rate;
    return config;
}

void write_curve_csv(const std::string& path, const std::string& header,
                     const std::vector<CurvePoint>& curve, bool with_scaled,
                     const std::string& head_block) {
    std::ostringstream out;
    out << head_block << header << "\n";
    for (const auto& pt : curve) {
        out << format_double(pt.lo) << "," << format_double(pt.hi) << ","
            << format_double(pt.center) << "," << pt.count << "," << format_double(pt.mean_y);
        if (with_scaled) out << "," << format_double(pt.scaled);
        out << "\n";
    }
    write_text_file(path, out.str());
}

int cmd_simulate(const SimulateArgs& a) {
    const Graph g = a.use_ba ? generate_ba(a.ba) : load_graph_file(a.graph_path);
    fs::create_directories(a.outdir);

    auto results = a.threads == 1 ? run_ensembles_serial(g, a.cfg)
                                  : run_ensembles_parallel(g, a.cfg, a.threads);
    int failed = 0;
    for (const auto& r : results)
        if (!r.converged) ++failed;
    if (static_cast<double>(failed) > a.cfg.max_failure_rate * a.cfg.ensemble_count)
        throw std::runtime_error("solver failure rate " + std::to_string(failed) + "/" +
                                 std::to_string(a.cfg.ensemble_count) +
                                 " exceeds --max-failure-rate");
    const auto agg = aggregate(g, results, a.cfg);

    const json config = simulate_config(a);
    const std::string head = config_header(config) + "# master_seed " +
                             std::to_string(a.cfg.master_seed) + "\n";
    const auto path = [&](const char* name) { return (fs::path(a.outdir) / name).string(); };

    // per-ensemble bulk table
    {
        std::ostringstream out;
        out << head << "ensemble,node,lstar,nd\n";
        for (const auto& r : results) {
            if (!r.converged) continue;
            for (int i = 0; i < g.n; ++i)
                out << r.index << "," << i << "," << format_double(r.lstar[i]) << ","
                    << format_double(r.nd[i]) << "\n";
        }
        write_text_file(path("ensembles.csv"), out.str());
    }
    // per-node means + structural centralities
    {
        std::ostringstream out;
        out << head << "node,mean_lstar,mean_nd,degree,betweenness,closeness,eigenvector\n";
        for (int i = 0; i < g.n; ++i)
            out << i << "," << format_double(agg.mean_lstar[i]) << ","
                << format_double(agg.mean_nd[i]) << "," << format_double(agg.degree.values[i])
                << "," << format_double(agg.betweenness.values[i]) << ","
                << format_double(agg.closeness.values[i]) << ","
                << format_double(agg.eigenvector.values[i]) << "\n";
        write_text_file(path("nodes.csv"), out.str());
    }
    write_curve_csv(path("neighbor_curve.csv"),
                    "bin_lo,bin_hi,center,count,mean_neighbor_nd,scaled", agg.neighbor_curve,
                    true, head);
    write_curve_csv(path("lc_curve.csv"), "bin_lo,bin_hi,center,count,mean_nd", agg.lc_curve,
                    false, head);
    {
        std::ostringstream out;
        out << head << "bin_lo,bin_hi,count\n";
        for (std::size_t b = 0; b + 1 < agg.nd_histogram.edges.size(); ++b)
            out << format_double(agg.nd_histogram.edges[b]) << ","
                << format_double(agg.nd_histogram.edges[b + 1]) << ","
                << agg.nd_histogram.counts[b] << "\n";
        write_text_file(path("histogram.csv"), out.str());
    }
    // full structured aggregate
    {
        json out;
        out["config"] = config;
        out["master_seed"] = a.cfg.master_seed;
        out["graph"] = {{"n", g.n}, {"edges", g.edges.size()}};
        out["ensembles"] = {{"total", agg.ensembles_total}, {"failed", agg.ensembles_failed}};
        json meta = json::array();
        for (const auto& r : results)
            meta.push_back(json{{"index", r.index},
                                {"iterations", r.iterations},
                                {"residual", r.residual},
                                {"converged", r.converged}});
        out["ensemble_meta"] = std::move(meta);
        out["nodes"] = {{"mean_lstar", agg.mean_lstar},
                        {"mean_nd", agg.mean_nd},
                        {"degree", agg.degree.values},
                        {"betweenness", agg.betweenness.values},
                        {"closeness", agg.closeness.values},
                        {"eigenvector", agg.eigenvector.values}};
        auto curve_json = [](const std::vector<CurvePoint>& c, bool scaled) {
            json arr = json::array();
            for (const auto& pt : c) {
                json row{{"lo", pt.lo},       {"hi", pt.hi},     {"center", pt.center},
                         {"count", pt.count}, {"mean", pt.mean_y}};
                if (scaled) row["scaled"] = pt.scaled;
                arr.push_back(std::move(row));
            }
            return arr;
        };
        out["neighbor_curve"] = curve_json(agg.neighbor_curve, true);
        out["lc_curve"] = curve_json(agg.lc_curve, false);
        out["nd_histogram"] = {{"edges", agg.nd_histogram.edges},
                               {"counts", agg.nd_histogram.counts}};
        out["neighbor_nd_correlation"] = agg.neighbor_correlation;
        write_json_file(path("aggregate.json"), out);
    }
    write_json_file(path("manifest.json"),
                    make_manifest("simulate", config,
                                  a.use_ba ? json::object() : json{{"graph", a.graph_path}},
                                  json{{"dir", a.outdir}}));
    std::cout << "simulated " << agg.ensembles_total << " ensembles (" << agg.ensembles_failed
              << " failed) into " << a.outdir << "\n";
    return 0;
}

// --------------------------------------------------------------------- fit

struct FitArgs {
    std::string input;
    std::string x_col;
    std::string y_col;
    std::string weight_col;  // empty = unweighted
    std::string family = "power";
    bool drop_nonpositive = false;
    std::string output;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

Table read_csv_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    Table t;
    int lineno = 0;
    for (auto raw : split_lines(text)) {
        ++lineno;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string_view> cells;
        std::size_t pos = 0;
        while (true) {
            auto comma = line.find(',', pos);
            if (comma == std::string_view::npos) {
                cells.push_back(trim(line.substr(pos)));
                break;
            }
            cells.push_back(trim(line.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        if (t.columns.empty()) {
            for (auto c : cells) t.columns.emplace_back(c);
            continue;
        }
        if (cells.size() != t.columns.size())
            throw ParseError(lineno, "expected " + std::to_string(t.columns.size()) + " cells");
        std::vector<double> row(cells.size());
        for (std::size_t k = 0; k < cells.size(); ++k) {
            auto [p, ec] = std::from_chars(cells[k].data(), cells[k].data() + cells[k].size(),
                                           row[k]);
            if (ec != std::errc{} || p != cells[k].data() + cells[k].size())
                throw ParseError(lineno, "bad numeric cell \"" + std::string(cells[k]) + "\"");
        }
        t.rows.push_back(std::move(row));
    }
    if (t.columns.empty()) throw std::runtime_error(path + ": no header row");
    return t;
}

int column_index(const Table& t, const std::string& name) {
    for (std::size_t k = 0; k < t.columns.size(); ++k)
        if (t.columns[k] == name) return static_cast<int>(k);
    throw std::invalid_argument("no column \"" + name + "\" in input");
}

int cmd_fit(const FitArgs& a) {
    const Table t = read_csv_table(a.input);
    const int xi = column_index(t, a.x_col);
    const int yi = column_index(t, a.y_col);
    const int wi = a.weight_col.empty() ? -1 : column_index(t, a.weight_col);

    std::vector<PointXY> pts;
    std::vector<double> weights;
    long dropped = 0;
    for (const auto& row : t.rows) {
        const PointXY pt{row[xi], row[yi]};
        if (a.drop_nonpositive && (!(pt.x > 0) || !(pt.y > 0))) {
            ++dropped;
            continue;
        }
        pts.push_back(pt);
        if (wi >= 0) weights.push_back(row[wi]);
    }

    FitResult fit;
    if (a.family == "power")
        fit = fit_power(pts, weights);
    else if (a.family == "exponential")
        fit = fit_exponential(pts, weights);
    else
        throw std::invalid_argument("family must be power or exponential");

    json out{{"family", to_string(fit.family)},
             {"amplitude", fit.amplitude},
             {"exponent", fit.exponent},
             {"r_squared", fit.r_squared},
             {"points", fit.points},
             {"dropped_nonpositive", dropped},
             {"input", a.input},
             {"x", a.x_col},
             {"y", a.y_col},
             {"weight", a.weight_col}};
    write_json_file(a.output, out);

    json config{{"input", a.input},   {"x", a.x_col},
                {"y", a.y_col},       {"weight", a.weight_col},
                {"family", a.family}, {"drop-nonpositive", a.drop_nonpositive}};
    write_json_file(a.output + ".manifest.json",
                    make_manifest("fit", config, json{{"csv", a.input}},
                                  json{{"result", a.output}}));
    std::cout << to_string(fit.family) << " fit: amplitude " << fit.amplitude << ", exponent "
              << fit.exponent << ", R^2 " << fit.r_squared << " (" << fit.points << " points)\n";
    return 0;
}

// ----------------------------------------------------------------- driver

// Replay support: splice the manifest's config in front of the user's own
// flags (later flags win via TakeLast), preserving byte-exact reproduction
// while still allowing overrides like --threads.
std::vector<std::string> splice_manifest_args(const std::vector<std::string>& args) {
    std::optional<std::string> manifest_path;
    std::vector<std::string> rest;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--from-manifest") {
            if (k + 1 >= args.size()) throw std::invalid_argument("--from-manifest needs a path");
            manifest_path = args[k + 1];
            ++k;
        } else {
            rest.push_back(args[k]);
        }
    }
    if (!manifest_path) return rest;

    std::ifstream in(*manifest_path);
    if (!in) throw std::runtime_error("cannot open manifest: " + *manifest_path);
    json m = json::parse(in);
    std::vector<std::string> out;
    out.push_back(m.at("subcommand").get<std::string>());
    for (const auto& [key, value] : m.at("config").items()) {
        if (value.is_string()) {
            // unset optional strings stay at their (empty) defaults
            if (!value.get<std::string>().empty())
                out.push_back("--" + key + "=" + value.get<std::string>());
        } else if (value.is_boolean()) {
            out.push_back("--" + key + (value.get<bool>() ? "=true" : "=false"));
        } else {
            out.push_back("--" + key + "=" + value.dump());
        }
    }
    // user args follow (minus any duplicate subcommand name)
    for (const auto& a : rest)
        if (a != out.front()) out.push_back(a);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"like-rate network analytics"};
    app.set_version_flag("--version", std::string(kTool) + " " + kVersion);
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    GenerateArgs gen;
    auto* cgen = app.add_subcommand("generate", "generate a Barabasi-Albert graph");
    cgen->add_option("--m0", gen.ba.m0, "seed vertices (complete graph)")->capture_default_str();
    cgen->add_option("--t", gen.ba.t, "vertices added by growth")->capture_default_str();
    cgen->add_option("--m", gen.ba.m, "edges per new vertex")->capture_default_str();
    cgen->add_option("--seed", gen.ba.seed, "RNG seed")->capture_default_str();
    cgen->add_option("-o,--output", gen.output, "edge-list output path")->required();

    SolveArgs sol;
    auto* csol = app.add_subcommand("solve", "solve likedness centrality for one rate matrix");
    csol->add_option("--graph", sol.graph_path, "edge-list file")->required();
    csol->add_option("--rates", sol.rates_path, "rate CSV (i,j,rate)")->required();
    csol->add_option("--tol", sol.solver.tol, "relative residual tolerance")->capture_default_str();
    csol->add_option("--max-iter", sol.solver.max_iter, "iteration cap")->capture_default_str();
    csol->add_option("--alpha", sol.solver.alpha, "damping in (0,1]")->capture_default_str();
    csol->add_option("--product-n", sol.product_n,
                     "truncation depth for the random-walk product check (off if negative)")
        ->capture_default_str();
    csol->add_option("-o,--output", sol.output, "result JSON path")->required();

    SimulateArgs sim;
    auto* csim = app.add_subcommand("simulate", "run a rate-ensemble experiment");
    auto* gopt = csim->add_option("--graph", sim.graph_path, "edge-list file");
    csim->add_option("--ba-m0", sim.ba.m0, "generate: seed vertices")->capture_default_str();
    csim->add_option("--ba-t", sim.ba.t, "generate: grown vertices")->capture_default_str();
    csim->add_option("--ba-m", sim.ba.m, "generate: edges per new vertex")->capture_default_str();
    auto* bopt = csim->add_option("--ba-seed", sim.ba.seed, "generate: graph seed");
    csim->add_option("--ensembles", sim.cfg.ensemble_count, "rate ensembles to draw")
        ->capture_default_str();
    csim->add_option("--lambda", sim.cfg.lambda, "exponential rate parameter")
        ->capture_default_str();
    csim->add_option("--seed", sim.cfg.master_seed, "master seed")->capture_default_str();
    csim->add_option("--tol", sim.cfg.solver.tol, "solver tolerance")->capture_default_str();
    csim->add_option("--max-iter", sim.cfg.solver.max_iter, "solver iteration cap")
        ->capture_default_str();
    csim->add_option("--alpha", sim.cfg.solver.alpha, "solver damping")->capture_default_str();
    csim->add_option("--bins", sim.cfg.bins.count, "log-spaced bins for the curves")
        ->capture_default_str();
    csim->add_option("--max-failure-rate", sim.cfg.max_failure_rate,
                     "acceptable solver failure fraction")
        ->capture_default_str();
    csim->add_option("--threads", sim.threads, "ensemble threads (1 = serial, 0 = all cores)")
        ->capture_default_str();
    csim->add_option("-o,--outdir", sim.outdir, "output directory")->required();

    FitArgs fit;
    auto* cfit = app.add_subcommand("fit", "fit a power law or exponential to CSV columns");
    cfit->add_option("--input", fit.input, "CSV produced by simulate (or compatible)")->required();
    cfit->add_option("--x", fit.x_col, "x column name")->required();
    cfit->add_option("--y", fit.y_col, "y column name")->required();
    cfit->add_option("--weight", fit.weight_col, "optional weight column");
    cfit->add_option("--family", fit.family, "power | exponential")->capture_default_str();
    cfit->add_flag("--drop-nonpositive", fit.drop_nonpositive,
                   "drop rows with nonpositive coordinates instead of failing");
    cfit->add_option("-o,--output", fit.output, "fit JSON path")->required();

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = splice_manifest_args(args);
        std::vector<const char*> cargs{argv[0]};
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());

        if (csim->parsed()) {
            sim.use_ba = !static_cast<bool>(*gopt);
            if (!sim.use_ba && static_cast<bool>(*bopt))
                throw std::invalid_argument("--graph and --ba-seed are mutually exclusive");
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << kTool << ": " << e.what() << "\n";
        return 1;
    }

    try {
        if (cgen->parsed()) return cmd_generate(gen);
        if (csol->parsed()) return cmd_solve(sol);
        if (csim->parsed()) return cmd_simulate(sim);
        if (cfit->parsed()) return cmd_fit(fit);
    } catch (const std::exception& e) {
        std::cerr << kTool << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}
