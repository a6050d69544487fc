#include <doctest.h>

#include "mgoe/errors.hpp"
#include "mgoe/io.hpp"
#include "mgoe/version.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <string>

using namespace mgoe;
namespace fs = std::filesystem;

TEST_CASE("parse_plan reads a minimal config with defaults") {
    const auto plan = parse_plan(R"({"N":1000,"M":10,"mu":0.8,"seed":1})");
    CHECK(plan.base_size == 1000);
    CHECK(plan.ensemble_size == 10);
    CHECK(plan.mu_grid == std::vector<double>{0.8});
    CHECK(plan.seed == 1);
    CHECK(plan.sigma == 1.0);
    CHECK(plan.fence_k == 1.5);
    CHECK(plan.bootstrap.resamples == 1000);
    CHECK(plan.bootstrap.level == 0.95);
    CHECK(plan.degree_candidates == std::vector<int>{3, 5, 7, 9, 11});
    CHECK(plan.analyses.density);
    CHECK(plan.analyses.nnsd);
    CHECK(plan.analyses.gap_ratio);
    CHECK(plan.extension == ExtensionScheme::SymmetricWrap);
    CHECK(plan.zero_rule == ZeroPairRule::Keep);
}

TEST_CASE("parse_plan requires N and rejects unknown keys") {
    CHECK_THROWS_WITH_AS(parse_plan("{}"), "required key N missing", ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":10,"frobnicate":1})"), ConfigError);
    try {
        parse_plan(R"({"N":10,"frobnicate":1})");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("frobnicate") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_plan(R"({"N":10,"histogram":{"bogus":1}})"), ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":10,"bootstrap":{"n":5}})"), ConfigError);
}

TEST_CASE("parse_plan rejects malformed input") {
    CHECK_THROWS_AS(parse_plan("not json at all"), ConfigError);
    CHECK_THROWS_AS(parse_plan("[1,2]"), ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":"five"})"), ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":10.5})"), ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":10,"seed":-3})"), ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":10,"mu":0.5,"mu_grid":[0.5]})"), ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":10,"mu_grid":[]})"), ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":10,"mu_grid":["a"]})"), ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":10,"mu":1.5})"), ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":10,"analyses":["wat"]})"), ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":10,"extension":"sideways"})"), ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":10,"zero_pair_rule":2})"), ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":10,"truncation":{"fence_k":"lots"}})"), ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":10,"degrees":[]})"), ConfigError);
    CHECK_THROWS_AS(parse_plan(R"({"N":1})"), ConfigError); // N below minimum
}

TEST_CASE("parse_plan selects analyses from the list") {
    const auto plan = parse_plan(R"({"N":50,"analyses":["density"]})");
    CHECK(plan.analyses.density);
    CHECK_FALSE(plan.analyses.nnsd);
    CHECK_FALSE(plan.analyses.gap_ratio);

    const auto none = parse_plan(R"({"N":50,"analyses":[]})");
    CHECK_FALSE(none.analyses.any());
}

TEST_CASE("serialize/parse round-trips a non-default plan") {
    ExperimentPlan plan;
    plan.base_size = 321;
    plan.ensemble_size = 17;
    plan.sigma = 2.5;
    plan.seed = 987654321;
    plan.mu_grid = {0.6, 0.8, 0.95};
    plan.analyses = {true, false, true};
    plan.bootstrap = {333, 0.9};
    plan.histogram.density_bins = 41;
    plan.histogram.density_range = Interval{-2.2, 2.2};
    plan.histogram.nnsd_bins = 25;
    plan.histogram.nnsd_max = 3.5;
    plan.fence_k = 2.0;
    plan.degree_candidates = {2, 4};
    plan.zero_rule = ZeroPairRule::Drop;
    plan.extension = ExtensionScheme::CyclicTail;

    const ExperimentPlan back = parse_plan(serialize_plan(plan));
    CHECK(back == plan);
}

TEST_CASE("fence_k infinity survives the round trip as a string") {
    ExperimentPlan plan;
    plan.base_size = 50;
    plan.fence_k = std::numeric_limits<double>::infinity();
    const std::string text = serialize_plan(plan);
    CHECK(text.find("\"inf\"") != std::string::npos);
    CHECK(std::isinf(parse_plan(text).fence_k));
    CHECK(std::isinf(parse_plan(R"({"N":9,"truncation":{"fence_k":"infinity"}})").fence_k));
}

TEST_CASE("format_float round-trips doubles exactly") {
    for (double x : {1.0 / 3.0, 0.54, 2.0, 1e-17, -123.456789012345678, 0.0})
        CHECK(std::stod(format_float(x)) == x);
    CHECK(format_float(2.0) == "2");
}

namespace {

FixedMuResult fake_result() {
    FixedMuResult r;
    r.mu = 0.75;
    r.sizes = {3, 4};
    HistogramWithCI h;
    h.bin_edges = {0.0, 1.0, 2.0};
    h.density = {0.25, 0.75};
    h.ci_low = {0.125, 0.625};
    h.ci_high = {0.375, 0.875};
    h.excluded = 1;
    r.density = h;
    r.nnsd = h;
    r.degrees_used = {3, 5};
    GapRatioResult g;
    g.per_member_r = {0.5, 0.25};
    g.mean_r = 0.375;
    g.ci_low = 0.25;
    g.ci_high = 0.5;
    g.n_pairs_used = 4;
    r.gap = g;
    return r;
}

} // namespace

TEST_CASE("CSV payloads match the documented schemas") {
    const std::vector<FixedMuResult> results{fake_result()};

    CHECK(density_csv(results) ==
          "mu,bin_left,bin_right,density,ci_low,ci_high\n"
          "0.75,0,1,0.25,0.125,0.375\n"
          "0.75,1,2,0.75,0.625,0.875\n");
    CHECK(nnsd_csv(results) == density_csv(results)); // same fake histogram
    CHECK(gapratio_csv(results) ==
          "mu,member_index,r\n"
          "0.75,0,0.5\n"
          "0.75,1,0.25\n");

    SweepResult s;
    s.points = {{0.5, 0.375, 0.25, 0.5, ""}, {0.625, 0.0, 0.0, 0.0, "boom"}};
    s.slope = 1.0;
    CHECK(sweep_csv(s) ==
          "mu,mean_r,ci_low,ci_high\n"
          "0.5,0.375,0.25,0.5\n"); // failed point lives in the JSON mirror only

    GapRatioResult base;
    base.per_member_r = {1.0, 0.5};
    CHECK(baseline_csv(base) == "member_index,r\n0,1\n1,0.5\n");

    SampleDump d;
    d.mu = 0.875;
    d.sizes = {2, 3};
    d.spectra = {{-1.0, 1.0}, {0.0, 0.5, 2.0}};
    CHECK(sizes_csv({d}) == "mu,member_index,size\n0.875,0,2\n0.875,1,3\n");
    CHECK(spectra_csv({d}) ==
          "mu,member_index,level_index,value\n"
          "0.875,0,0,-1\n"
          "0.875,0,1,1\n"
          "0.875,1,0,0\n"
          "0.875,1,1,0.5\n"
          "0.875,1,2,2\n");
}

TEST_CASE("results_json mirrors the CSV content with config and version") {
    ExperimentPlan plan;
    plan.base_size = 10;
    plan.mu_grid = {0.75};

    SweepResult sweep;
    sweep.points = {{0.75, 0.4, 0.3, 0.5, ""}, {0.9, 0.0, 0.0, 0.0, "bad"}};
    sweep.slope = 0.1;

    const std::string text = results_json(plan, {fake_result()}, sweep, {});
    const auto j = nlohmann::json::parse(text);

    CHECK(j["version"] == version_string);
    CHECK(j["config"]["N"] == 10);
    CHECK(j["config"].contains("threads") == false);
    const auto& fixed = j["results"]["fixed"][0];
    CHECK(fixed["mu"] == 0.75);
    CHECK(fixed["sizes"] == nlohmann::json({3, 4}));
    CHECK(fixed["density"]["density"][1] == 0.75);
    CHECK(fixed["density"]["excluded"] == 1);
    CHECK(fixed["gap_ratio"]["mean_r"] == 0.375);
    CHECK(fixed["degrees_used"] == nlohmann::json({3, 5}));
    const auto& pts = j["results"]["sweep"]["points"];
    CHECK(pts[0]["mean_r"] == 0.4);
    CHECK(pts[1]["error"] == "bad");
    CHECK(j["results"]["sweep"]["slope"] == 0.1);
}

TEST_CASE("baseline outputs carry their own config") {
    BaselineConfig cfg;
    cfg.levels = 77;
    cfg.members = 5;
    cfg.seed = 3;
    cfg.equal_spacing = true;

    GapRatioResult g;
    g.per_member_r = {1.0};
    g.mean_r = 1.0;
    g.ci_low = 1.0;
    g.ci_high = 1.0;
    g.n_pairs_used = 75;

    const auto j = nlohmann::json::parse(baseline_results_json(cfg, g));
    CHECK(j["config"]["baseline"]["levels"] == 77);
    CHECK(j["config"]["baseline"]["equal_spacing"] == true);
    CHECK(j["results"]["baseline"]["mean_r"] == 1.0);

    const auto echo = nlohmann::json::parse(serialize_baseline_config(cfg));
    CHECK(echo["baseline"]["M"] == 5);
}

TEST_CASE("write_text_file and load_plan_file") {
    const fs::path dir = fs::temp_directory_path() / "mgoe_io_test";
    fs::create_directories(dir);
    const fs::path p = dir / "plan.json";

    ExperimentPlan plan;
    plan.base_size = 33;
    write_text_file(p, serialize_plan(plan));
    CHECK(load_plan_file(p) == plan);

    CHECK_THROWS_AS(load_plan_file(dir / "missing.json"), IoError);
    CHECK_THROWS_AS(write_text_file(dir / "no_such_dir" / "x.txt", "hi"), IoError);
    fs::remove_all(dir);
}
