#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "symdet/benchmark.hpp"
#include "symdet/datagen.hpp"
#include "symdet/embedding.hpp"
#include "symdet/error.hpp"
#include "symdet/inference.hpp"
#include "symdet/io.hpp"

namespace symdet::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------- helpers

struct Common {
    std::uint64_t seed = 0;
    std::string out;
    std::string config;
};

void add_common(CLI::App& app, Common& c) {
    app.add_option("--seed", c.seed, "Master seed");
    app.add_option("--out", c.out, "Output path");
    app.add_option("--config", c.config, "JSON config file; command-line flags override its values");
}

std::string require_out(const Common& c) {
    if (c.out.empty()) throw ValidationError("--out is required");
    return c.out;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ValidationError("invalid number '" + s + "' in " + what);
    return v;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string scalar_text(const json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    if (v.is_array()) {
        std::string joined;
        for (const auto& e : v) {
            if (e.is_array() || e.is_object()) break;
            if (!joined.empty()) joined += ',';
            joined += scalar_text(e, key);
        }
        return joined;
    }
    throw ValidationError("config key '" + key + "' has an unsupported value");
}

// Fills options that were not given on the command line from a JSON block
// nested by subcommand name. Blocks of subcommands that did not run are only
// checked for unknown keys.
void overlay(CLI::App& app, const json& block, const std::string& where, bool apply) {
    if (!block.is_object()) throw ValidationError("config block '" + where + "' must be an object");
    for (const auto& [key, value] : block.items()) {
        const std::string path = where.empty() ? key : where + "." + key;
        if (CLI::App* sub = app.get_subcommand_no_throw(key)) {
            overlay(*sub, value, path, apply && sub->parsed());
            continue;
        }
        CLI::Option* opt = app.get_option_no_throw("--" + key);
        if (!opt || key == "config" || key == "help") throw ValidationError("unknown config key '" + path + "'");
        if (!apply || opt->count() > 0) continue;
        opt->add_result(scalar_text(value, path));
        opt->run_callback();
    }
}

void apply_config(CLI::App& root, const std::string& config_path) {
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot open config " + config_path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    overlay(root, doc, "", true);
}

void write_json(const std::string& path, const json& doc) { io::write_text(path, doc.dump(2) + "\n"); }

// ---------------------------------------------------------------- generate

struct CgArgs {
    Common common;
    CGParams params;
    TrajectoryOptions traj;
    std::size_t count = 150;
    double sigma = 0.0;
    bool dynamical = false;
};

struct MotifArgs {
    Common common;
    int n = 0;
    D12Options opts;
};

void finish_generate(const PointCloud& cloud, const Common& c, json meta, std::ostream& out) {
    const std::string path = require_out(c);
    io::write_point_cloud(fs::path(path), cloud);
    meta["seed"] = c.seed;
    meta["rows"] = cloud.size();
    meta["output"] = path;
    write_json(path + ".meta.json", meta);
    out << "wrote " << cloud.size() << " points to " << path << " (seed " << c.seed << ")\n";
}

void cmd_generate_cg(const CgArgs& a, std::ostream& out) {
    TrajectoryOptions traj = a.traj;
    traj.mode = a.dynamical ? NoiseMode::dynamical : NoiseMode::observational;
    const NoiseSpec noise{a.sigma, a.common.seed};
    const auto cloud = cg_trajectory(a.params, a.count, noise, traj);
    json meta;
    meta["command"] = "generate cg";
    meta["params"] = {{"n", a.params.n},
                      {"alpha", a.params.alpha},
                      {"beta", a.params.beta},
                      {"gamma", a.params.gamma},
                      {"lambda_map", a.params.lambda_map}};
    meta["trajectory"] = {{"count", a.count},
                          {"x0", traj.z0.x},
                          {"y0", traj.z0.y},
                          {"transient", traj.transient},
                          {"stride", traj.stride},
                          {"escape_radius", traj.escape_radius},
                          {"noise_mode", a.dynamical ? "dynamical" : "observational"}};
    meta["noise"] = {{"sigma", a.sigma}, {"seed", a.common.seed}};
    finish_generate(cloud, a.common, meta, out);
}

void cmd_generate_motif(const MotifArgs& a, const std::string& name, std::ostream& out) {
    const auto cloud = make_motif_dataset(a.n, a.common.seed, a.opts);
    json meta;
    meta["command"] = "generate " + name;
    meta["params"] = {{"n", a.n},
                      {"motif_size", a.opts.motif_size},
                      {"r_min", a.opts.radii.min},
                      {"r_max", a.opts.radii.max},
                      {"sigma", a.opts.sigma}};
    finish_generate(cloud, a.common, meta, out);
}

// ---------------------------------------------------------------- embed

struct EmbedArgs {
    Common common;
    std::string input;
    std::string column;
    std::size_t cycle_length = 0;
    std::string manifest;
    std::string condition;
    std::string subjects;
    std::string joints;
    std::string leg;
};

bool same_subject(const std::string& a, const std::string& b) {
    if (a == b) return true;
    int x = 0, y = 0;
    const auto ra = std::from_chars(a.data(), a.data() + a.size(), x);
    const auto rb = std::from_chars(b.data(), b.data() + b.size(), y);
    return ra.ec == std::errc{} && rb.ec == std::errc{} && ra.ptr == a.data() + a.size() &&
           rb.ptr == b.data() + b.size() && x == y;
}

void append_series(std::vector<TimeSeries>& acc, const fs::path& file, const EmbedArgs& a) {
    const std::optional<std::string> column = a.column.empty() ? std::nullopt : std::optional(a.column);
    const std::optional<std::size_t> cycle = a.cycle_length ? std::optional(a.cycle_length) : std::nullopt;
    for (auto& s : io::read_time_series(file, column, cycle)) {
        if (cycle && s.size() > *cycle) {
            for (auto& part : split_cycles(s, *cycle)) acc.push_back(std::move(part));
        } else {
            acc.push_back(std::move(s));
        }
    }
}

void cmd_embed(const EmbedArgs& a, std::ostream& out) {
    const std::string path = require_out(a.common);
    if (a.input.empty() == a.manifest.empty()) throw ValidationError("give exactly one of --input or --manifest");

    std::vector<TimeSeries> series;
    std::vector<std::string> used;
    if (!a.input.empty()) {
        append_series(series, a.input, a);
        used.push_back(a.input);
    } else {
        const auto subjects = split_list(a.subjects);
        const auto joints = split_list(a.joints);
        for (const auto& e : io::read_manifest(a.manifest)) {
            if (!a.condition.empty() && e.condition != a.condition) continue;
            if (!a.leg.empty() && e.leg != a.leg) continue;
            if (!joints.empty() && std::find(joints.begin(), joints.end(), e.joint) == joints.end()) continue;
            if (!subjects.empty() && std::none_of(subjects.begin(), subjects.end(),
                                                  [&](const std::string& s) { return same_subject(s, e.subject); }))
                continue;
            append_series(series, e.file, a);
            used.push_back(e.file.string());
        }
        if (used.empty()) throw ValidationError("no manifest rows match the selection");
    }

    const auto averaged = average_cycles(series);
    const auto cloud = phase_embed(averaged);
    io::write_point_cloud(fs::path(path), cloud);

    json meta;
    meta["command"] = "embed";
    meta["input"] = a.input.empty() ? json(nullptr) : json(a.input);
    meta["manifest"] = a.manifest.empty() ? json(nullptr) : json(a.manifest);
    meta["selection"] = {{"condition", a.condition}, {"subjects", a.subjects}, {"joints", a.joints}, {"leg", a.leg},
                         {"column", a.column}, {"cycle_length", a.cycle_length}};
    meta["files"] = used;
    meta["series_averaged"] = series.size();
    meta["rows"] = cloud.size();
    write_json(path + ".meta.json", meta);
    out << "embedded " << series.size() << " series (" << cloud.size() << " samples) to " << path << "\n";
}

// ---------------------------------------------------------------- infer

struct InferArgs {
    Common common;
    std::string input;
    InferenceConfig cfg;
    long burn_in = -1;
    int chains = 1;
    double ladder_ratio = 0.5;
    long swap_interval = 10;
    bool exact = false;
    long trace_thin = 1;
    double p = 2.0;
};

json summary_json(const PosteriorSummary& s) {
    json probs = json::object();
    for (const auto& [n, p] : s.probs) probs[std::to_string(n)] = p;
    return probs;
}

void cmd_infer(const InferArgs& a, std::ostream& out) {
    if (a.input.empty()) throw ValidationError("--input is required");
    InferenceConfig cfg = a.cfg;
    cfg.seed = a.common.seed;
    if (a.burn_in >= 0) cfg.burn_in = a.burn_in;
    cfg.validate();
    if (a.chains < 1) throw ValidationError("--chains must be >= 1");
    if (a.trace_thin < 0) throw ValidationError("--trace-thin must be >= 0");
    TransportConfig transport{a.p};
    transport.validate();

    const auto cloud = io::read_point_cloud(fs::path(a.input));
    CloudCostModel costs(cloud, transport);

    const auto start = std::chrono::steady_clock::now();
    PosteriorSummary summary;
    std::vector<int> trace;
    std::optional<MoveCounters> swaps;
    std::string mode;
    if (a.exact) {
        mode = "exact";
        summary = exact_posterior(costs, cfg);
    } else if (a.chains > 1) {
        mode = "mc3";
        const auto ladder = TemperatureLadder::geometric(a.chains, a.ladder_ratio, a.swap_interval);
        auto r = run_mc3(costs, cfg, ladder);
        summary = r.summary;
        trace = std::move(r.chains.front().trace);
        swaps = r.swaps;
    } else {
        mode = "mh";
        auto r = run_chain(costs, cfg);
        summary = r.summary;
        trace = std::move(r.record.trace);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json doc;
    doc["command"] = "infer";
    doc["config"] = {{"input", a.input},
                     {"lambda", cfg.lambda},
                     {"n_min", cfg.n_min},
                     {"n_max", cfg.n_max},
                     {"iters", cfg.iterations},
                     {"burn_in", cfg.effective_burn_in()},
                     {"local_prob", cfg.local_move_prob},
                     {"seed", cfg.seed},
                     {"chains", a.chains},
                     {"ladder_ratio", a.ladder_ratio},
                     {"swap_interval", a.swap_interval},
                     {"exact", a.exact},
                     {"trace_thin", a.trace_thin},
                     {"p", a.p}};
    doc["mode"] = mode;
    doc["points"] = cloud.size();
    doc["probs"] = summary_json(summary);
    doc["map"] = summary.map_estimate;
    doc["map_prob"] = summary.map_prob;
    if (!a.exact) {
        doc["acceptance"] = {{"local", summary.local_acceptance},
                             {"jump", summary.jump_acceptance},
                             {"overall", summary.overall_acceptance}};
        if (swaps) {
            doc["acceptance"]["swap"] = swaps->rate();
            doc["swaps"] = {{"attempted", swaps->attempted}, {"accepted", swaps->accepted}};
        }
        doc["effective_length"] = summary.effective_length;
    }
    json cost_table = json::object();
    for (const auto& [n, c] : costs.cache()) cost_table[std::to_string(n)] = c;
    doc["costs"] = cost_table;

    doc["trace"] = nullptr;
    if (!a.common.out.empty() && !trace.empty() && a.trace_thin > 0) {
        fs::path trace_path(a.common.out);
        trace_path.replace_extension(".trace.csv");
        std::ostringstream t;
        t << "iteration,n\n";
        for (std::size_t i = 0; i < trace.size(); i += static_cast<std::size_t>(a.trace_thin))
            t << cfg.effective_burn_in() + static_cast<long>(i) << ',' << trace[i] << '\n';
        io::write_text(trace_path, t.str());
        doc["trace"] = trace_path.string();
    }
    doc["wall_clock_seconds"] = seconds;

    if (a.common.out.empty()) {
        out << doc.dump(2) << "\n";
    } else {
        write_json(a.common.out, doc);
        out << "MAP n=" << summary.map_estimate << " (p=" << summary.map_prob << ", " << mode << ") -> "
            << a.common.out << "\n";
    }
}

// ---------------------------------------------------------------- benchmark

struct BenchmarkArgs {
    Common common;
    std::string input;
    int n_min = 2;
    int n_max = 6;
    std::optional<std::string> grid;
    std::size_t grid_points = 200;
    int target_n = 0;
    double p = 2.0;
};

void cmd_benchmark(const BenchmarkArgs& a, std::ostream& out) {
    if (a.input.empty()) throw ValidationError("--input is required");
    const std::string prefix = require_out(a.common);
    if (a.n_min < 1 || a.n_max < a.n_min) throw ValidationError("candidate range must satisfy 1 <= n-min <= n-max");
    TransportConfig transport{a.p};
    transport.validate();

    const auto cloud = io::read_point_cloud(fs::path(a.input));
    std::vector<int> candidates;
    for (int n = a.n_min; n <= a.n_max; ++n) candidates.push_back(n);
    const auto profiles = profile_candidates(candidates, cloud, transport);

    std::vector<double> grid;
    if (a.grid) {
        for (const auto& s : split_list(*a.grid)) grid.push_back(parse_double(s, "--grid"));
        if (grid.empty()) throw ValidationError("threshold grid is empty");
    } else {
        grid = default_grid(profiles, a.grid_points);
    }
    const auto report = threshold_sweep(profiles, grid);

    std::ostringstream dist;
    dist << "n,element,distance\n";
    for (const auto& p : profiles)
        for (const auto& e : p.distances) dist << p.n << ',' << e.element.label() << ',' << io::format_double(e.distance) << '\n';
    io::write_text(prefix + ".distances.csv", dist.str());

    std::ostringstream sweep;
    sweep << "upsilon,accepted,classification\n";
    for (const auto& row : report.rows) {
        sweep << io::format_double(row.upsilon) << ',';
        for (bool b : row.accepted) sweep << (b ? '1' : '0');
        sweep << ',' << row.classification.label() << '\n';
    }
    io::write_text(prefix + ".sweep.csv", sweep.str());

    json doc;
    doc["command"] = "benchmark";
    doc["config"] = {{"input", a.input},
                     {"n_min", a.n_min},
                     {"n_max", a.n_max},
                     {"grid_points", grid.size()},
                     {"grid_explicit", a.grid.has_value()},
                     {"target_n", a.target_n ? json(a.target_n) : json(nullptr)},
                     {"p", a.p}};
    doc["candidates"] = json::array();
    for (std::size_t k = 0; k < report.candidates.size(); ++k)
        doc["candidates"].push_back({{"n", report.candidates[k]}, {"max_elementwise", report.max_elementwise[k]}});
    doc["robust_windows"] = json::array();
    for (const auto& w : report.robust_windows)
        doc["robust_windows"].push_back({{"n", w.n},
                                         {"lo", w.lo},
                                         {"hi", number_or_null(w.hi)},
                                         {"grid_lo", w.grid_lo},
                                         {"grid_hi", w.grid_hi}});
    if (a.target_n) {
        doc["target_n"] = a.target_n;
        doc["target_window_found"] = report.has_window_for(a.target_n);
    }
    write_json(prefix + ".summary.json", doc);

    out << "candidates " << a.n_min << ".." << a.n_max << ", " << grid.size() << " thresholds, "
        << report.robust_windows.size() << " robust window(s)\n";
    for (const auto& w : report.robust_windows)
        out << "  n=" << w.n << "  [" << w.lo << ", " << w.hi << ")\n";
    if (a.target_n)
        out << "target n=" << a.target_n << ": " << (report.has_window_for(a.target_n) ? "window found" : "no window")
            << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bayesian dihedral symmetry inference for planar point clouds", "symdet"};
    app.require_subcommand(1);

    auto* generate = app.add_subcommand("generate", "Write a synthetic point cloud CSV");
    generate->require_subcommand(1);

    CgArgs cg;
    auto* gen_cg = generate->add_subcommand("cg", "Sampled attractor of the equivariant planar map");
    add_common(*gen_cg, cg.common);
    gen_cg->add_option("--n", cg.params.n, "Symmetry order of the map");
    gen_cg->add_option("--count", cg.count, "Number of recorded points");
    gen_cg->add_option("--sigma", cg.sigma, "Gaussian noise std per coordinate");
    gen_cg->add_option("--alpha", cg.params.alpha);
    gen_cg->add_option("--beta", cg.params.beta);
    gen_cg->add_option("--gamma", cg.params.gamma);
    gen_cg->add_option("--lambda-map", cg.params.lambda_map);
    gen_cg->add_option("--transient", cg.traj.transient, "Iterates discarded before recording");
    gen_cg->add_option("--stride", cg.traj.stride, "Record every stride-th iterate");
    gen_cg->add_option("--x0", cg.traj.z0.x);
    gen_cg->add_option("--y0", cg.traj.z0.y);
    gen_cg->add_option("--escape-radius", cg.traj.escape_radius);
    gen_cg->add_flag("--dynamical-noise", cg.dynamical, "Feed noise back into the iteration");

    MotifArgs d12;
    d12.n = 12;
    auto* gen_d12 = generate->add_subcommand("d12", "192-point noisy cloud with D_12 symmetry");
    add_common(*gen_d12, d12.common);
    MotifArgs motif;
    auto* gen_motif = generate->add_subcommand("motif", "Motif replicated under D_n plus noise");
    add_common(*gen_motif, motif.common);
    gen_motif->add_option("--n", motif.n, "Symmetry order");
    for (auto [sub, m] : {std::pair{gen_d12, &d12}, std::pair{gen_motif, &motif}}) {
        sub->add_option("--sigma", m->opts.sigma, "Gaussian noise std per coordinate");
        sub->add_option("--motif-size", m->opts.motif_size, "Points in the fundamental sector");
        sub->add_option("--r-min", m->opts.radii.min);
        sub->add_option("--r-max", m->opts.radii.max);
    }

    EmbedArgs embed;
    auto* emb = app.add_subcommand("embed", "Phase-embed time series onto the unit circle");
    add_common(*emb, embed.common);
    emb->add_option("--input", embed.input, "Time-series CSV");
    emb->add_option("--column", embed.column, "Use only this column");
    emb->add_option("--cycle-length", embed.cycle_length, "Samples per cycle; longer columns are split");
    emb->add_option("--manifest", embed.manifest, "Manifest CSV: subject,condition,joint,leg,file");
    emb->add_option("--condition", embed.condition);
    emb->add_option("--subjects", embed.subjects, "Comma-separated subject ids");
    emb->add_option("--joints", embed.joints, "Comma-separated joints");
    emb->add_option("--leg", embed.leg);

    InferArgs infer;
    auto* inf = app.add_subcommand("infer", "Posterior over D_n for a point cloud CSV");
    add_common(*inf, infer.common);
    inf->add_option("--input", infer.input, "Point cloud CSV");
    inf->add_option("--lambda", infer.cfg.lambda, "Posterior sharpness");
    inf->add_option("--iters", infer.cfg.iterations);
    inf->add_option("--burn-in", infer.burn_in, "Defaults to 10% of --iters");
    inf->add_option("--n-min", infer.cfg.n_min);
    inf->add_option("--n-max", infer.cfg.n_max);
    inf->add_option("--local-prob", infer.cfg.local_move_prob, "Probability of a +/-1 proposal");
    inf->add_option("--chains", infer.chains, "Tempered chains; > 1 selects MC3");
    inf->add_option("--ladder-ratio", infer.ladder_ratio);
    inf->add_option("--swap-interval", infer.swap_interval);
    inf->add_flag("--exact", infer.exact, "Enumerate the lattice instead of sampling");
    inf->add_option("--trace-thin", infer.trace_thin, "Keep every k-th trace entry; 0 disables the trace file");
    inf->add_option("--p", infer.p, "Wasserstein order");

    BenchmarkArgs bench;
    auto* bm = app.add_subcommand("benchmark", "Deterministic threshold sweep");
    add_common(*bm, bench.common);
    bm->add_option("--input", bench.input, "Point cloud CSV");
    bm->add_option("--n-min", bench.n_min);
    bm->add_option("--n-max", bench.n_max);
    bm->add_option("--grid", bench.grid, "Comma-separated ascending thresholds");
    bm->add_option("--grid-points", bench.grid_points, "Size of the automatic log-spaced grid");
    bm->add_option("--target-n", bench.target_n, "Report whether this n has a robust window");
    bm->add_option("--p", bench.p, "Wasserstein order");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        for (const CLI::App* leaf : {gen_cg, gen_d12, gen_motif, emb, inf, bm}) {
            if (!leaf->parsed()) continue;
            const auto* cfg = leaf->get_option("--config");
            if (cfg->count() > 0) apply_config(app, cfg->as<std::string>());
        }
        if (gen_cg->parsed()) cmd_generate_cg(cg, out);
        else if (gen_d12->parsed()) cmd_generate_motif(d12, "d12", out);
        else if (gen_motif->parsed()) {
            if (motif.n < 1) throw ValidationError("--n is required for generate motif");
            cmd_generate_motif(motif, "motif", out);
        } else if (emb->parsed()) cmd_embed(embed, out);
        else if (inf->parsed()) cmd_infer(infer, out);
        else if (bm->parsed()) cmd_benchmark(bench, out);
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace symdet::cli
