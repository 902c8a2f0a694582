#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "commands.hpp"
#include "symdet/datagen.hpp"
#include "symdet/inference.hpp"
#include "symdet/io.hpp"

using namespace symdet;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::current_path() / ("cli_scratch_" + name)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator()(const std::string& file) const { return (dir / file).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load(const std::string& path) { return json::parse(slurp(path)); }

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("generate writes clouds and sidecars") {
    Scratch s("generate");
    auto r = run({"generate", "cg", "--n", "3", "--count", "150", "--sigma", "0.5", "--seed", "7", "--out", s("cg.csv")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("seed 7") != std::string::npos);
    CHECK(io::read_point_cloud(fs::path(s("cg.csv"))).size() == 150);
    const auto meta = load(s("cg.csv.meta.json"));
    CHECK(meta["seed"] == 7);
    CHECK(meta["noise"]["sigma"] == 0.5);

    REQUIRE(run({"generate", "d12", "--seed", "7", "--out", s("d12.csv")}).code == 0);
    CHECK(io::read_point_cloud(fs::path(s("d12.csv"))).size() == 192);

    REQUIRE(run({"generate", "cg", "--n", "3", "--count", "150", "--sigma", "0.5", "--seed", "7", "--out", s("again.csv")})
                .code == 0);
    CHECK(slurp(s("cg.csv")) == slurp(s("again.csv")));

    REQUIRE(run({"generate", "motif", "--n", "5", "--sigma", "0", "--out", s("m.csv")}).code == 0);
    CHECK(io::read_point_cloud(fs::path(s("m.csv"))).size() == 80);
    CHECK(run({"generate", "motif", "--out", s("m2.csv")}).code == 2);
    CHECK(run({"generate", "cg", "--count", "10"}).code == 2);
}

TEST_CASE("generate then infer matches the in-process pipeline") {
    Scratch s("roundtrip");
    REQUIRE(run({"generate", "cg", "--count", "60", "--stride", "333", "--sigma", "0.3", "--seed", "3", "--out",
                 s("x.csv")})
                .code == 0);
    REQUIRE(run({"infer", "--input", s("x.csv"), "--iters", "4000", "--n-max", "10", "--seed", "11", "--out",
                 s("r.json")})
                .code == 0);
    const auto doc = load(s("r.json"));

    TrajectoryOptions opts;
    opts.stride = 333;
    const auto x = cg_trajectory(CGParams{}, 60, {0.3, 3}, opts);
    InferenceConfig cfg;
    cfg.iterations = 4000;
    cfg.n_max = 10;
    cfg.seed = 11;
    const auto direct = run_chain(x, cfg);
    CHECK(doc["map"] == direct.summary.map_estimate);
    for (const auto& [n, p] : direct.summary.probs) CHECK(doc["probs"][std::to_string(n)].get<double>() == p);
    CHECK(doc["config"]["lambda"] == 250.0);
    CHECK(doc["mode"] == "mh");
    CHECK(doc.contains("acceptance"));
    CHECK(doc.contains("wall_clock_seconds"));
    REQUIRE(doc["trace"].is_string());
    CHECK(fs::exists(doc["trace"].get<std::string>()));
}

TEST_CASE("infer modes") {
    Scratch s("modes");
    REQUIRE(run({"generate", "d12", "--seed", "2", "--out", s("d12.csv")}).code == 0);
    REQUIRE(run({"infer", "--input", s("d12.csv"), "--iters", "3000", "--n-max", "13", "--chains", "5",
                 "--ladder-ratio", "0.5", "--out", s("pt.json")})
                .code == 0);
    const auto pt = load(s("pt.json"));
    CHECK(pt["mode"] == "mc3");
    CHECK(pt["acceptance"].contains("swap"));
    CHECK(pt["swaps"]["attempted"] == 300);

    REQUIRE(run({"infer", "--input", s("d12.csv"), "--exact", "--n-max", "13", "--out", s("ex.json")}).code == 0);
    const auto ex = load(s("ex.json"));
    CHECK(ex["mode"] == "exact");
    CHECK(ex["costs"].size() == 12);
    double family = 0.0;
    for (int n : {2, 3, 4, 6, 12}) family += ex["probs"][std::to_string(n)].get<double>();
    CHECK(family > 0.9);

    const auto printed = run({"infer", "--input", s("d12.csv"), "--exact", "--n-max", "4"});
    REQUIRE(printed.code == 0);
    CHECK(json::parse(printed.out)["map"].is_number());
}

TEST_CASE("config file with flag overrides") {
    Scratch s("config");
    REQUIRE(run({"generate", "d12", "--seed", "1", "--out", s("d12.csv")}).code == 0);
    write(s("c.json"), R"({"infer": {"lambda": 100, "exact": true, "n-max": 13}, "generate": {"cg": {"count": 5}}})");
    REQUIRE(run({"infer", "--input", s("d12.csv"), "--config", s("c.json"), "--n-max", "12", "--out", s("r.json")})
                .code == 0);
    const auto doc = load(s("r.json"));
    CHECK(doc["config"]["lambda"] == 100.0);
    CHECK(doc["config"]["n_max"] == 12);
    CHECK(doc["mode"] == "exact");

    write(s("bad.json"), R"({"infer": {"lamda": 100}})");
    CHECK(run({"infer", "--input", s("d12.csv"), "--config", s("bad.json")}).code == 2);
    write(s("bad2.json"), R"({"plot": {}})");
    CHECK(run({"infer", "--input", s("d12.csv"), "--config", s("bad2.json")}).code == 2);
    write(s("broken.json"), "{\"infer\": ");
    CHECK(run({"infer", "--input", s("d12.csv"), "--config", s("broken.json")}).code == 3);

    write(s("bm.json"), R"({"benchmark": {"grid": [0.1, 0.2, 0.4], "n-max": 4}})");
    REQUIRE(run({"benchmark", "--input", s("d12.csv"), "--config", s("bm.json"), "--out", s("bm")}).code == 0);
    CHECK(load(s("bm.summary.json"))["config"]["grid_points"] == 3);
}

TEST_CASE("benchmark outputs") {
    Scratch s("benchmark");
    REQUIRE(run({"generate", "d12", "--seed", "7", "--out", s("d12.csv")}).code == 0);
    const auto r = run({"benchmark", "--input", s("d12.csv"), "--n-min", "2", "--n-max", "13", "--target-n", "12",
                        "--out", s("bm")});
    REQUIRE(r.code == 0);
    const auto summary = load(s("bm.summary.json"));
    CHECK(summary["target_window_found"] == false);
    CHECK(summary["candidates"].size() == 12);
    const auto sweep = slurp(s("bm.sweep.csv"));
    CHECK(sweep.rfind("upsilon,accepted,classification\n", 0) == 0);
    CHECK(std::count(sweep.begin(), sweep.end(), '\n') == 201);
    const auto dist = slurp(s("bm.distances.csv"));
    CHECK(dist.find("12,s11,") != std::string::npos);

    CHECK(run({"benchmark", "--input", s("d12.csv"), "--grid", "", "--out", s("e")}).code == 2);
    CHECK(run({"benchmark", "--input", s("d12.csv"), "--grid", "0.3,0.2", "--out", s("e")}).code == 2);
}

TEST_CASE("embed") {
    Scratch s("embed");
    std::ostringstream csv;
    csv << "value\n";
    for (int i = 0; i < 64; ++i) csv << io::format_double(std::cos(2.0 * std::numbers::pi * i / 64)) << "\n";
    write(s("cos.csv"), csv.str());
    REQUIRE(run({"embed", "--input", s("cos.csv"), "--out", s("cloud.csv")}).code == 0);
    for (const auto& p : io::read_point_cloud(fs::path(s("cloud.csv")))) CHECK(std::abs(norm(p) - 1.0) < 1e-9);

    write(s("flat.csv"), "value\n1\n1\n1\n1\n1\n");
    const auto flat = run({"embed", "--input", s("flat.csv"), "--out", s("flat_cloud.csv")});
    CHECK(flat.code == 4);
    CHECK(flat.err.find("sample 0") != std::string::npos);

    // manifest with a selection of subjects, averaged before embedding
    fs::create_directories(s("gait"));
    std::ostringstream manifest;
    manifest << "subject,condition,joint,leg,file\n";
    for (int subj : {4, 7, 9, 12}) {
        std::ostringstream body;
        body << "value\n";
        for (int i = 0; i < 101; ++i) {
            const double t = 2.0 * std::numbers::pi * i / 101;
            body << io::format_double(std::cos(t) + 0.5 * std::cos(3.0 * t) + 0.01 * subj) << "\n";
        }
        const std::string file = "gait/s" + std::to_string(subj) + ".csv";
        write(s(file), body.str());
        manifest << subj << ",normal,knee,right," << file << "\n";
    }
    write(s("manifest.csv"), manifest.str());
    REQUIRE(run({"embed", "--manifest", s("manifest.csv"), "--condition", "normal", "--subjects", "4,7,9", "--out",
                 s("g.csv")})
                .code == 0);
    CHECK(load(s("g.csv.meta.json"))["series_averaged"] == 3);
    CHECK(run({"embed", "--manifest", s("manifest.csv"), "--condition", "pathological", "--out", s("none.csv")})
              .code == 2);
    CHECK(run({"embed", "--out", s("x.csv")}).code == 2);
}

TEST_CASE("exit codes") {
    Scratch s("exit");
    write(s("bad.csv"), "x,y\n1,2\n3,nan\n");
    const auto parse = run({"infer", "--input", s("bad.csv")});
    CHECK(parse.code == 3);
    CHECK(parse.err.find("line 3") != std::string::npos);
    CHECK(run({"infer", "--input", s("missing.csv")}).code == 1);
    write(s("ok.csv"), "x,y\n1,0\n-1,0\n");
    CHECK(run({"infer", "--input", s("ok.csv"), "--lambda", "-1"}).code == 2);
    CHECK(run({"infer", "--input", s("ok.csv"), "--n-min", "5", "--n-max", "3"}).code == 2);
    CHECK(run({"generate", "cg", "--alpha", "50", "--x0", "1", "--y0", "1", "--out", s("d.csv")}).code == 4);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
