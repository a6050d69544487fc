#pragma once

#include "mgoe/experiment.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mgoe {

// %.17g -- enough digits to round-trip an IEEE double exactly.
std::string format_float(double x);

// Strict JSON config: unknown keys are rejected; "mu" (single value) and
// "mu_grid" (array) are mutually exclusive; "N" is required; everything else
// defaults. Throws ConfigError with the offending key in the message.
ExperimentPlan parse_plan(const std::string& json_text);
std::string serialize_plan(const ExperimentPlan& plan);
ExperimentPlan load_plan_file(const std::filesystem::path& path);

// Raw-ensemble dump produced by the `sample` subcommand.
struct SampleDump {
    double mu = 0.0;
    std::vector<int> sizes;
    std::vector<std::vector<double>> spectra; // empty unless spectra requested
};

// CSV payloads (header line + rows, '\n' line endings, floats via
// format_float). Iteration order is grid order, then member index.
std::string density_csv(const std::vector<FixedMuResult>& per_mu);
std::string nnsd_csv(const std::vector<FixedMuResult>& per_mu);
std::string gapratio_csv(const std::vector<FixedMuResult>& per_mu);
std::string sweep_csv(const SweepResult& sweep);
std::string baseline_csv(const GapRatioResult& baseline);
std::string sizes_csv(const std::vector<SampleDump>& dumps);
std::string spectra_csv(const std::vector<SampleDump>& dumps);

// Everything a run produced, mirrored into one JSON document together with
// the effective config and the software version.
std::string results_json(const ExperimentPlan& plan,
                         const std::vector<FixedMuResult>& per_mu,
                         const std::optional<SweepResult>& sweep,
                         const std::vector<SampleDump>& dumps);

// The uncorrelated-level control has its own, smaller configuration.
struct BaselineConfig {
    int levels = 500;
    int members = 100;
    Seed seed = 0;
    bool equal_spacing = false;
    BootstrapSettings bootstrap;
};

std::string serialize_baseline_config(const BaselineConfig& config);
std::string baseline_results_json(const BaselineConfig& config,
                                  const GapRatioResult& result);

void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace mgoe
