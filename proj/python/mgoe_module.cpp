// Python bindings for the core operations.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mgoe/errors.hpp"
#include "mgoe/experiment.hpp"
#include "mgoe/io.hpp"
#include "mgoe/version.hpp"

namespace py = pybind11;
using namespace mgoe;

PYBIND11_MODULE(_mgoe, m) {
    m.doc() = "Mixed Gaussian orthogonal ensemble simulation kernels";
    m.attr("__version__") = version_string;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    // --- rng ----------------------------------------------------------------
    m.def("mix64", &mix64);
    m.def("derive_seed", py::overload_cast<Seed, Seed>(&derive_seed));
    m.def("derive_seed", py::overload_cast<Seed, Seed, Seed>(&derive_seed));
    m.def("inverse_normal_cdf", &inverse_normal_cdf);

    py::class_<RandomStream>(m, "RandomStream")
        .def(py::init<Seed>())
        .def("uniform", &RandomStream::uniform)
        .def("normal", &RandomStream::normal, py::arg("sigma") = 1.0)
        .def("binomial", &RandomStream::binomial, py::arg("trials"), py::arg("p"))
        .def("exponential", &RandomStream::exponential)
        .def("next_u64", &RandomStream::next_u64);

    // --- sampling -------------------------------------------------------------
    py::class_<EnsembleConfig>(m, "EnsembleConfig")
        .def(py::init<>())
        .def_readwrite("base_size", &EnsembleConfig::base_size)
        .def_readwrite("ensemble_size", &EnsembleConfig::ensemble_size)
        .def_readwrite("mixture", &EnsembleConfig::mixture)
        .def_readwrite("sigma", &EnsembleConfig::sigma)
        .def_readwrite("seed", &EnsembleConfig::seed)
        .def("validate", &EnsembleConfig::validate);

    py::class_<SymmetricMatrix>(m, "SymmetricMatrix")
        .def(py::init<Eigen::MatrixXd>())
        .def_property_readonly("order", &SymmetricMatrix::order)
        .def_property_readonly("entries",
                               [](const SymmetricMatrix& s) { return s.entries(); });

    py::class_<Ensemble>(m, "Ensemble")
        .def_readonly("sizes", &Ensemble::sizes)
        .def_readonly("members", &Ensemble::members);

    m.def("draw_gaussian_matrix", &draw_gaussian_matrix, py::arg("n"),
          py::arg("sigma"), py::arg("stream"));
    m.def("symmetrize", &symmetrize);
    m.def("sample_goe", &sample_goe, py::arg("order"), py::arg("sigma"),
          py::arg("stream"));
    m.def("draw_mixture_sizes", &draw_mixture_sizes, py::arg("base_size"),
          py::arg("mixture"), py::arg("count"), py::arg("stream"));
    m.def("draw_sizes", &draw_sizes);
    m.def("sample_member", &sample_member, py::arg("config"), py::arg("size"),
          py::arg("member_index"));
    m.def("sample_mgoe", &sample_mgoe, py::arg("config"), py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());

    // --- spectra and processing ------------------------------------------------
    py::class_<SpectrumRaw>(m, "SpectrumRaw")
        .def_readonly("values", &SpectrumRaw::values)
        .def_readonly("order", &SpectrumRaw::order);

    m.def("eigenvalues_symmetric", &eigenvalues_symmetric);
    m.def("trace", &trace);

    py::enum_<ExtensionScheme>(m, "ExtensionScheme")
        .value("symmetric_wrap", ExtensionScheme::SymmetricWrap)
        .value("cyclic_tail", ExtensionScheme::CyclicTail);

    m.def("periodic_extend",
          py::overload_cast<const std::vector<double>&, int, ExtensionScheme>(
              &periodic_extend),
          py::arg("values"), py::arg("target_size"),
          py::arg("scheme") = ExtensionScheme::SymmetricWrap);
    m.def("periodic_extend",
          py::overload_cast<const SpectrumRaw&, int, ExtensionScheme>(&periodic_extend),
          py::arg("spectrum"), py::arg("target_size"),
          py::arg("scheme") = ExtensionScheme::SymmetricWrap);
    m.def("quantile", &quantile);
    m.def("truncate_outliers", &truncate_outliers, py::arg("sorted_values"),
          py::arg("fence_k") = 1.5);
    m.def("cumulative_staircase", &cumulative_staircase);

    py::class_<UnfoldedSpectrum>(m, "UnfoldedSpectrum")
        .def_readonly("values", &UnfoldedSpectrum::values)
        .def_readonly("degree_used", &UnfoldedSpectrum::degree_used)
        .def_readonly("mean_spacing", &UnfoldedSpectrum::mean_spacing)
        .def_readonly("kept_fraction", &UnfoldedSpectrum::kept_fraction);

    m.def("unfold", &unfold, py::arg("sorted_values"), py::arg("degree"));
    m.def("select_unfolding_degree", &select_unfolding_degree,
          py::arg("sorted_values"),
          py::arg("candidates") = std::vector<int>(default_unfolding_degrees.begin(),
                                                   default_unfolding_degrees.end()));
    m.attr("default_unfolding_degrees") = std::vector<int>(
        default_unfolding_degrees.begin(), default_unfolding_degrees.end());
    m.def("normalize_scale", &normalize_scale, py::arg("values"), py::arg("scale"),
          py::arg("order"));

    // --- statistics --------------------------------------------------------------
    py::enum_<ZeroPairRule>(m, "ZeroPairRule")
        .value("keep", ZeroPairRule::Keep)
        .value("drop", ZeroPairRule::Drop);

    m.def("nn_spacings", &nn_spacings);
    m.def("gap_ratios", &gap_ratios, py::arg("sorted_spectrum"),
          py::arg("rule") = ZeroPairRule::Keep);
    m.def("mean_gap_ratio", &mean_gap_ratio);

    py::class_<BinnedDensity>(m, "BinnedDensity")
        .def_readonly("density", &BinnedDensity::density)
        .def_readonly("excluded", &BinnedDensity::excluded);

    m.def("density_histogram", &density_histogram, py::arg("values"),
          py::arg("bin_edges"));
    m.def("linspace_edges", &linspace_edges, py::arg("lo"), py::arg("hi"),
          py::arg("bins"));

    py::class_<Interval>(m, "Interval")
        .def_readonly("low", &Interval::low)
        .def_readonly("high", &Interval::high);

    m.def("bootstrap_ci", &bootstrap_ci, py::arg("rows"), py::arg("resamples"),
          py::arg("level"), py::arg("seed"));
    m.def("bootstrap_scalar_ci", &bootstrap_scalar_ci, py::arg("rows"),
          py::arg("resamples"), py::arg("level"), py::arg("seed"),
          py::arg("statistic"));

    m.def("wigner_surmise_density", &wigner_surmise_density);
    m.def("wigner_surmise_cdf", &wigner_surmise_cdf);
    m.def("poisson_spacing_density", &poisson_spacing_density);
    m.def("semicircle_density", &semicircle_density);
    m.attr("poisson_mean_gap_ratio") = poisson_mean_gap_ratio;
    m.attr("goe_mean_gap_ratio") = goe_mean_gap_ratio;

    py::class_<BimodalityGap>(m, "BimodalityGap")
        .def_readonly("gap", &BimodalityGap::gap)
        .def_readonly("unimodal", &BimodalityGap::unimodal);

    m.def("bimodality_gap", &bimodality_gap);
    m.def("ks_distance", &ks_distance, py::arg("sample"), py::arg("cdf"));

    // --- experiment drivers ---------------------------------------------------------
    py::class_<AnalysisSelection>(m, "AnalysisSelection")
        .def(py::init<>())
        .def_readwrite("density", &AnalysisSelection::density)
        .def_readwrite("nnsd", &AnalysisSelection::nnsd)
        .def_readwrite("gap_ratio", &AnalysisSelection::gap_ratio);

    py::class_<BootstrapSettings>(m, "BootstrapSettings")
        .def(py::init<>())
        .def_readwrite("resamples", &BootstrapSettings::resamples)
        .def_readwrite("level", &BootstrapSettings::level);

    py::class_<HistogramSettings>(m, "HistogramSettings")
        .def(py::init<>())
        .def_readwrite("density_bins", &HistogramSettings::density_bins)
        .def_readwrite("density_range", &HistogramSettings::density_range)
        .def_readwrite("nnsd_bins", &HistogramSettings::nnsd_bins)
        .def_readwrite("nnsd_max", &HistogramSettings::nnsd_max);

    py::class_<ExperimentPlan>(m, "ExperimentPlan")
        .def(py::init<>())
        .def_readwrite("base_size", &ExperimentPlan::base_size)
        .def_readwrite("ensemble_size", &ExperimentPlan::ensemble_size)
        .def_readwrite("sigma", &ExperimentPlan::sigma)
        .def_readwrite("seed", &ExperimentPlan::seed)
        .def_readwrite("mu_grid", &ExperimentPlan::mu_grid)
        .def_readwrite("analyses", &ExperimentPlan::analyses)
        .def_readwrite("bootstrap", &ExperimentPlan::bootstrap)
        .def_readwrite("histogram", &ExperimentPlan::histogram)
        .def_readwrite("fence_k", &ExperimentPlan::fence_k)
        .def_readwrite("degree_candidates", &ExperimentPlan::degree_candidates)
        .def_readwrite("zero_rule", &ExperimentPlan::zero_rule)
        .def_readwrite("extension", &ExperimentPlan::extension)
        .def_readwrite("threads", &ExperimentPlan::threads)
        .def("validate", &ExperimentPlan::validate)
        .def_static("default_mu_grid", &ExperimentPlan::default_mu_grid);

    py::class_<HistogramWithCI>(m, "HistogramWithCI")
        .def_readonly("bin_edges", &HistogramWithCI::bin_edges)
        .def_readonly("density", &HistogramWithCI::density)
        .def_readonly("ci_low", &HistogramWithCI::ci_low)
        .def_readonly("ci_high", &HistogramWithCI::ci_high)
        .def_readonly("excluded", &HistogramWithCI::excluded);

    py::class_<GapRatioResult>(m, "GapRatioResult")
        .def_readonly("per_member_r", &GapRatioResult::per_member_r)
        .def_readonly("mean_r", &GapRatioResult::mean_r)
        .def_readonly("ci_low", &GapRatioResult::ci_low)
        .def_readonly("ci_high", &GapRatioResult::ci_high)
        .def_readonly("n_pairs_used", &GapRatioResult::n_pairs_used);

    py::class_<FixedMuResult>(m, "FixedMuResult")
        .def_readonly("mu", &FixedMuResult::mu)
        .def_readonly("sizes", &FixedMuResult::sizes)
        .def_readonly("density", &FixedMuResult::density)
        .def_readonly("density_rows", &FixedMuResult::density_rows)
        .def_readonly("nnsd", &FixedMuResult::nnsd)
        .def_readonly("degrees_used", &FixedMuResult::degrees_used)
        .def_readonly("gap", &FixedMuResult::gap);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("mu", &SweepPoint::mu)
        .def_readonly("mean_r", &SweepPoint::mean_r)
        .def_readonly("ci_low", &SweepPoint::ci_low)
        .def_readonly("ci_high", &SweepPoint::ci_high)
        .def_readonly("error", &SweepPoint::error);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("points", &SweepResult::points)
        .def_readonly("slope", &SweepResult::slope)
        .def_readonly("reference_poisson", &SweepResult::reference_poisson)
        .def_readonly("reference_goe", &SweepResult::reference_goe);

    m.def("mu_scope_seed", &mu_scope_seed);
    m.def("run_fixed_mu", &run_fixed_mu, py::arg("plan"), py::arg("mu"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_sweep", &run_sweep, py::call_guard<py::gil_scoped_release>());
    m.def(
        "poisson_baseline",
        [](int n_levels, int members, Seed seed, bool equal_spacing, int resamples,
           double level) {
            return poisson_baseline(n_levels, members, seed, equal_spacing,
                                    BootstrapSettings{resamples, level});
        },
        py::arg("n_levels"), py::arg("members"), py::arg("seed"),
        py::arg("equal_spacing") = false, py::arg("resamples") = 1000,
        py::arg("level") = 0.95);
    m.def("least_squares_slope", &least_squares_slope);

    // --- config round-trip -------------------------------------------------------
    m.def("parse_plan", &parse_plan);
    m.def("serialize_plan", &serialize_plan);
}
