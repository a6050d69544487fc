#include "mgoe/io.hpp"

#include "mgoe/errors.hpp"
#include "mgoe/version.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace mgoe {

using nlohmann::json;

std::string format_float(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw ConfigError("key '" + key + "' " + why);
}

int as_int(const json& v, const std::string& key) {
    if (!v.is_number_integer())
        bad_key(key, "must be an integer");
    const long long x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        bad_key(key, "is out of range");
    return static_cast<int>(x);
}

double as_double(const json& v, const std::string& key) {
    if (!v.is_number())
        bad_key(key, "must be a number");
    return v.get<double>();
}

Seed as_seed(const json& v, const std::string& key) {
    if (v.is_number_unsigned())
        return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0)
        return static_cast<Seed>(v.get<long long>());
    bad_key(key, "must be a non-negative integer");
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw ConfigError("unknown key '" + item.key() + "'" +
                              (where.empty() ? "" : " in " + where));
}

} // namespace

ExperimentPlan parse_plan(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config root must be a JSON object");

    static const std::set<std::string> top_keys = {
        "N",       "M",         "sigma",     "seed",          "mu",
        "mu_grid", "analyses",  "bootstrap", "histogram",     "truncation",
        "degrees", "zero_pair_rule", "extension", "threads"};
    check_keys(j, top_keys, "");

    ExperimentPlan plan;
    if (!j.contains("N"))
        throw ConfigError("required key N missing");
    plan.base_size = as_int(j["N"], "N");
    if (j.contains("M"))
        plan.ensemble_size = as_int(j["M"], "M");
    if (j.contains("sigma"))
        plan.sigma = as_double(j["sigma"], "sigma");
    if (j.contains("seed"))
        plan.seed = as_seed(j["seed"], "seed");
    if (j.contains("threads"))
        plan.threads = as_int(j["threads"], "threads");

    if (j.contains("mu") && j.contains("mu_grid"))
        throw ConfigError("specify either mu or mu_grid, not both");
    if (j.contains("mu")) {
        plan.mu_grid = {as_double(j["mu"], "mu")};
    } else if (j.contains("mu_grid")) {
        const json& g = j["mu_grid"];
        if (!g.is_array() || g.empty())
            bad_key("mu_grid", "must be a non-empty array of numbers");
        plan.mu_grid.clear();
        for (const auto& v : g)
            plan.mu_grid.push_back(as_double(v, "mu_grid"));
    }

    if (j.contains("analyses")) {
        const json& a = j["analyses"];
        if (!a.is_array())
            bad_key("analyses", "must be an array of analysis names");
        plan.analyses = AnalysisSelection{false, false, false};
        for (const auto& v : a) {
            if (!v.is_string())
                bad_key("analyses", "must contain strings");
            const std::string name = v.get<std::string>();
            if (name == "density")
                plan.analyses.density = true;
            else if (name == "nnsd")
                plan.analyses.nnsd = true;
            else if (name == "gap_ratio")
                plan.analyses.gap_ratio = true;
            else
                throw ConfigError("unknown analysis '" + name +
                                  "' (expected density, nnsd or gap_ratio)");
        }
    }

    if (j.contains("bootstrap")) {
        const json& b = j["bootstrap"];
        if (!b.is_object())
            bad_key("bootstrap", "must be an object");
        check_keys(b, {"resamples", "level"}, "bootstrap");
        if (b.contains("resamples"))
            plan.bootstrap.resamples = as_int(b["resamples"], "bootstrap.resamples");
        if (b.contains("level"))
            plan.bootstrap.level = as_double(b["level"], "bootstrap.level");
    }

    if (j.contains("histogram")) {
        const json& h = j["histogram"];
        if (!h.is_object())
            bad_key("histogram", "must be an object");
        check_keys(h, {"density_bins", "density_range", "nnsd_bins", "nnsd_max"},
                   "histogram");
        if (h.contains("density_bins"))
            plan.histogram.density_bins = as_int(h["density_bins"], "histogram.density_bins");
        if (h.contains("nnsd_bins"))
            plan.histogram.nnsd_bins = as_int(h["nnsd_bins"], "histogram.nnsd_bins");
        if (h.contains("nnsd_max"))
            plan.histogram.nnsd_max = as_double(h["nnsd_max"], "histogram.nnsd_max");
        if (h.contains("density_range")) {
            const json& r = h["density_range"];
            if (r.is_null()) {
                plan.histogram.density_range.reset();
            } else {
                if (!r.is_array() || r.size() != 2)
                    bad_key("histogram.density_range", "must be null or [low, high]");
                plan.histogram.density_range =
                    Interval{as_double(r[0], "histogram.density_range"),
                             as_double(r[1], "histogram.density_range")};
            }
        }
    }

    if (j.contains("truncation")) {
        const json& t = j["truncation"];
        if (!t.is_object())
            bad_key("truncation", "must be an object");
        check_keys(t, {"fence_k"}, "truncation");
        if (t.contains("fence_k")) {
            const json& k = t["fence_k"];
            if (k.is_string()) {
                const std::string s = k.get<std::string>();
                if (s == "inf" || s == "infinity")
                    plan.fence_k = std::numeric_limits<double>::infinity();
                else
                    bad_key("truncation.fence_k", "must be a number or \"inf\"");
            } else {
                plan.fence_k = as_double(k, "truncation.fence_k");
            }
        }
    }

    if (j.contains("degrees")) {
        const json& d = j["degrees"];
        if (!d.is_array() || d.empty())
            bad_key("degrees", "must be a non-empty array of integers");
        plan.degree_candidates.clear();
        for (const auto& v : d)
            plan.degree_candidates.push_back(as_int(v, "degrees"));
    }

    if (j.contains("zero_pair_rule")) {
        const json& z = j["zero_pair_rule"];
        const std::string s = z.is_string() ? z.get<std::string>() : "";
        if (s == "keep")
            plan.zero_rule = ZeroPairRule::Keep;
        else if (s == "drop")
            plan.zero_rule = ZeroPairRule::Drop;
        else
            bad_key("zero_pair_rule", "must be \"keep\" or \"drop\"");
    }

    if (j.contains("extension")) {
        const json& e = j["extension"];
        const std::string s = e.is_string() ? e.get<std::string>() : "";
        if (s == "wrap")
            plan.extension = ExtensionScheme::SymmetricWrap;
        else if (s == "cyclic")
            plan.extension = ExtensionScheme::CyclicTail;
        else
            bad_key("extension", "must be \"wrap\" or \"cyclic\"");
    }

    plan.validate();
    return plan;
}

namespace {

json plan_to_json(const ExperimentPlan& plan) {
    json j;
    j["N"] = plan.base_size;
    j["M"] = plan.ensemble_size;
    j["sigma"] = plan.sigma;
    j["seed"] = plan.seed;
    j["mu_grid"] = plan.mu_grid;
    json an = json::array();
    if (plan.analyses.density)
        an.push_back("density");
    if (plan.analyses.nnsd)
        an.push_back("nnsd");
    if (plan.analyses.gap_ratio)
        an.push_back("gap_ratio");
    j["analyses"] = an;
    j["bootstrap"] = {{"resamples", plan.bootstrap.resamples}, {"level", plan.bootstrap.level}};
    json hist;
    hist["density_bins"] = plan.histogram.density_bins;
    if (plan.histogram.density_range)
        hist["density_range"] = {plan.histogram.density_range->low,
                                 plan.histogram.density_range->high};
    else
        hist["density_range"] = nullptr;
    hist["nnsd_bins"] = plan.histogram.nnsd_bins;
    hist["nnsd_max"] = plan.histogram.nnsd_max;
    j["histogram"] = hist;
    if (std::isinf(plan.fence_k))
        j["truncation"] = {{"fence_k", "inf"}};
    else
        j["truncation"] = {{"fence_k", plan.fence_k}};
    j["degrees"] = plan.degree_candidates;
    j["zero_pair_rule"] = (plan.zero_rule == ZeroPairRule::Keep) ? "keep" : "drop";
    j["extension"] = (plan.extension == ExtensionScheme::SymmetricWrap) ? "wrap" : "cyclic";
    // Worker count is an execution detail, not part of the experiment
    // identity: keeping it out of the echo keeps outputs byte-identical
    // across worker counts.
    return j;
}

} // namespace

std::string serialize_plan(const ExperimentPlan& plan) {
    return plan_to_json(plan).dump(2) + "\n";
}

ExperimentPlan load_plan_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("failed reading config file: " + path.string());
    return parse_plan(ss.str());
}

namespace {

void append_histogram_rows(std::string& out, double mu, const HistogramWithCI& h) {
    const std::size_t bins = h.density.size();
    for (std::size_t b = 0; b < bins; ++b) {
        out += format_float(mu);
        out += ',';
        out += format_float(h.bin_edges[b]);
        out += ',';
        out += format_float(h.bin_edges[b + 1]);
        out += ',';
        out += format_float(h.density[b]);
        out += ',';
        out += format_float(h.ci_low[b]);
        out += ',';
        out += format_float(h.ci_high[b]);
        out += '\n';
    }
}

} // namespace

std::string density_csv(const std::vector<FixedMuResult>& per_mu) {
    std::string out = "mu,bin_left,bin_right,density,ci_low,ci_high\n";
    for (const auto& r : per_mu)
        if (r.density)
            append_histogram_rows(out, r.mu, *r.density);
    return out;
}

std::string nnsd_csv(const std::vector<FixedMuResult>& per_mu) {
    std::string out = "mu,bin_left,bin_right,density,ci_low,ci_high\n";
    for (const auto& r : per_mu)
        if (r.nnsd)
            append_histogram_rows(out, r.mu, *r.nnsd);
    return out;
}

std::string gapratio_csv(const std::vector<FixedMuResult>& per_mu) {
    std::string out = "mu,member_index,r\n";
    for (const auto& r : per_mu)
        if (r.gap)
            for (std::size_t i = 0; i < r.gap->per_member_r.size(); ++i) {
                out += format_float(r.mu);
                out += ',';
                out += std::to_string(i);
                out += ',';
                out += format_float(r.gap->per_member_r[i]);
                out += '\n';
            }
    return out;
}

std::string sweep_csv(const SweepResult& sweep) {
    // Failed grid points are recorded in the JSON mirror, not here.
    std::string out = "mu,mean_r,ci_low,ci_high\n";
    for (const auto& p : sweep.points) {
        if (!p.error.empty())
            continue;
        out += format_float(p.mu);
        out += ',';
        out += format_float(p.mean_r);
        out += ',';
        out += format_float(p.ci_low);
        out += ',';
        out += format_float(p.ci_high);
        out += '\n';
    }
    return out;
}

std::string baseline_csv(const GapRatioResult& baseline) {
    std::string out = "member_index,r\n";
    for (std::size_t i = 0; i < baseline.per_member_r.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += format_float(baseline.per_member_r[i]);
        out += '\n';
    }
    return out;
}

std::string sizes_csv(const std::vector<SampleDump>& dumps) {
    std::string out = "mu,member_index,size\n";
    for (const auto& d : dumps)
        for (std::size_t i = 0; i < d.sizes.size(); ++i) {
            out += format_float(d.mu);
            out += ',';
            out += std::to_string(i);
            out += ',';
            out += std::to_string(d.sizes[i]);
            out += '\n';
        }
    return out;
}

std::string spectra_csv(const std::vector<SampleDump>& dumps) {
    std::string out = "mu,member_index,level_index,value\n";
    for (const auto& d : dumps)
        for (std::size_t i = 0; i < d.spectra.size(); ++i)
            for (std::size_t k = 0; k < d.spectra[i].size(); ++k) {
                out += format_float(d.mu);
                out += ',';
                out += std::to_string(i);
                out += ',';
                out += std::to_string(k);
                out += ',';
                out += format_float(d.spectra[i][k]);
                out += '\n';
            }
    return out;
}

namespace {

json histogram_to_json(const HistogramWithCI& h) {
    return json{{"bin_edges", h.bin_edges}, {"density", h.density},     {"ci_low", h.ci_low},
                {"ci_high", h.ci_high},     {"excluded", h.excluded}};
}

json gap_to_json(const GapRatioResult& g) {
    return json{{"mean_r", g.mean_r},
                {"ci_low", g.ci_low},
                {"ci_high", g.ci_high},
                {"n_pairs_used", g.n_pairs_used},
                {"per_member_r", g.per_member_r}};
}

} // namespace

std::string results_json(const ExperimentPlan& plan,
                         const std::vector<FixedMuResult>& per_mu,
                         const std::optional<SweepResult>& sweep,
                         const std::vector<SampleDump>& dumps) {
    json j;
    j["version"] = version_string;
    j["config"] = plan_to_json(plan);

    json results = json::object();
    if (!per_mu.empty()) {
        json fixed = json::array();
        for (const auto& r : per_mu) {
            json e;
            e["mu"] = r.mu;
            e["sizes"] = r.sizes;
            if (r.density)
                e["density"] = histogram_to_json(*r.density);
            if (r.nnsd) {
                e["nnsd"] = histogram_to_json(*r.nnsd);
                e["degrees_used"] = r.degrees_used;
            }
            if (r.gap)
                e["gap_ratio"] = gap_to_json(*r.gap);
            fixed.push_back(std::move(e));
        }
        results["fixed"] = std::move(fixed);
    }
    if (sweep) {
        json pts = json::array();
        for (const auto& p : sweep->points) {
            json e{{"mu", p.mu}};
            if (p.error.empty()) {
                e["mean_r"] = p.mean_r;
                e["ci_low"] = p.ci_low;
                e["ci_high"] = p.ci_high;
            } else {
                e["error"] = p.error;
            }
            pts.push_back(std::move(e));
        }
        json s;
        s["points"] = std::move(pts);
        s["slope"] = sweep->slope ? json(*sweep->slope) : json(nullptr);
        s["reference_poisson"] = sweep->reference_poisson;
        s["reference_goe"] = sweep->reference_goe;
        results["sweep"] = std::move(s);
    }
    if (!dumps.empty()) {
        json samples = json::array();
        for (const auto& d : dumps) {
            json e;
            e["mu"] = d.mu;
            e["sizes"] = d.sizes;
            if (!d.spectra.empty())
                e["spectra"] = d.spectra;
            samples.push_back(std::move(e));
        }
        results["samples"] = std::move(samples);
    }
    j["results"] = std::move(results);
    return j.dump(2) + "\n";
}

namespace {

json baseline_config_to_json(const BaselineConfig& c) {
    return json{{"baseline",
                 json{{"levels", c.levels},
                      {"M", c.members},
                      {"seed", c.seed},
                      {"equal_spacing", c.equal_spacing},
                      {"bootstrap", json{{"resamples", c.bootstrap.resamples},
                                         {"level", c.bootstrap.level}}}}}};
}

} // namespace

std::string serialize_baseline_config(const BaselineConfig& config) {
    return baseline_config_to_json(config).dump(2) + "\n";
}

std::string baseline_results_json(const BaselineConfig& config,
                                  const GapRatioResult& result) {
    json j;
    j["version"] = version_string;
    j["config"] = baseline_config_to_json(config);
    j["results"] = json{{"baseline", gap_to_json(result)}};
    return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out << content;
    out.flush();
    if (!out)
        throw IoError("failed writing: " + path.string());
}

} // namespace mgoe
