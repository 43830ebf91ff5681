#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rmtlab/counting.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/estimators.hpp"
#include "rmtlab/laws.hpp"
#include "rmtlab/transport.hpp"

namespace py = pybind11;

using namespace rmtlab;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Eigenvalue fluctuation laboratory: samplers, spectral laws, "
            "counting-function kernel machinery, deviation bounds, and "
            "transport distances.";
  m.attr("__version__") = "0.1.0";

  // laws
  m.def("sc_density", &laws::sc_density, py::arg("x"));
  m.def("sc_cdf", &laws::sc_cdf, py::arg("x"));
  m.def("sc_quantile", &laws::sc_quantile, py::arg("p"));
  m.def(
      "gamma_table",
      [](int n) { return laws::gamma_table(n).values; },
      py::arg("n"));
  m.def(
      "gamma_edge_bounds",
      [](int n, int j) {
        const auto b = laws::gamma_edge_bounds(n, j);
        return std::make_pair(b.lo, b.hi);
      },
      py::arg("n"), py::arg("j"));
  m.def("gamma_spacing_bound", &laws::gamma_spacing_bound, py::arg("n"), py::arg("j"));
  m.def("mp_edges", &laws::mp_edges, py::arg("m"), py::arg("n"));

  py::class_<laws::MarchenkoPasturLaw>(m, "MarchenkoPasturLaw")
      .def(py::init<double>(), py::arg("rho"))
      .def_static("from_counts", &laws::MarchenkoPasturLaw::from_counts,
                  py::arg("m"), py::arg("n"))
      .def_property_readonly("rho", &laws::MarchenkoPasturLaw::rho)
      .def_property_readonly("a", &laws::MarchenkoPasturLaw::a)
      .def_property_readonly("b", &laws::MarchenkoPasturLaw::b)
      .def("density", &laws::MarchenkoPasturLaw::density, py::arg("x"))
      .def("cdf", &laws::MarchenkoPasturLaw::cdf, py::arg("x"))
      .def("quantile", &laws::MarchenkoPasturLaw::quantile, py::arg("p"));

  // ensembles
  py::class_<ensembles::EnsembleSpec>(m, "EnsembleSpec")
      .def_static("gue", &ensembles::EnsembleSpec::gue, py::arg("n"))
      .def_static("goe", &ensembles::EnsembleSpec::goe, py::arg("n"))
      .def_static("wigner_complex_matched",
                  &ensembles::EnsembleSpec::wigner_complex_matched, py::arg("n"))
      .def_static("wigner_real_matched",
                  &ensembles::EnsembleSpec::wigner_real_matched, py::arg("n"))
      .def_static("lue", &ensembles::EnsembleSpec::lue, py::arg("n"), py::arg("m"))
      .def_static("loe", &ensembles::EnsembleSpec::loe, py::arg("n"), py::arg("m"))
      .def_static("covariance_matched", &ensembles::EnsembleSpec::covariance_matched,
                  py::arg("n"), py::arg("m"))
      .def_property_readonly("n", [](const ensembles::EnsembleSpec& s) { return s.n; })
      .def_property_readonly("m", [](const ensembles::EnsembleSpec& s) { return s.m; })
      .def_property_readonly("kind", &ensembles::EnsembleSpec::kind_name)
      .def("__repr__", [](const ensembles::EnsembleSpec& s) {
        return "<EnsembleSpec " + s.kind_name() + " n=" + std::to_string(s.n) + ">";
      });

  m.def(
      "entry_moments",
      [](const ensembles::EnsembleSpec& s, bool diagonal) {
        const auto mom = ensembles::entry_moments(diagonal ? s.diag : s.offdiag);
        return std::make_tuple(mom.m1, mom.m2, mom.m3, mom.m4);
      },
      py::arg("spec"), py::arg("diagonal") = false,
      "First four raw moments of one entry component of the spec.");

  m.def(
      "sample_spectrum",
      [](const ensembles::EnsembleSpec& spec, std::uint64_t seed, bool fast) {
        return ensembles::sample_spectrum(spec, seed, fast).eigenvalues;
      },
      py::arg("spec"), py::arg("seed"), py::arg("fast") = false);

  m.def(
      "trace_power_mean",
      [](const ensembles::EnsembleSpec& spec, int power, int replicates,
         std::uint64_t seed, int workers) {
        const auto r = ensembles::trace_power_mean(spec, power, replicates, seed, workers);
        return std::make_pair(r.mean, r.stderr_);
      },
      py::arg("spec"), py::arg("power"), py::arg("replicates"), py::arg("seed"),
      py::arg("workers") = 1);

  // counting
  py::class_<counting::KernelModel>(m, "KernelModel")
      .def(py::init<int, double, int, double, int>(), py::arg("n"),
           py::arg("delta") = 0.5, py::arg("nodes_per_panel") = 64,
           py::arg("panel_width") = 0.25, py::arg("order_cap") = 2048)
      .def_property_readonly("order", &counting::KernelModel::order)
      .def_property_readonly("window_lo", &counting::KernelModel::window_lo)
      .def_property_readonly("window_hi", &counting::KernelModel::window_hi)
      .def("eval", &counting::KernelModel::eval, py::arg("x"), py::arg("y"))
      .def("counting_mean", &counting::KernelModel::counting_mean, py::arg("t"))
      .def("counting_variance", &counting::KernelModel::counting_variance, py::arg("t"))
      .def(
          "bernoulli_probabilities",
          [](const counting::KernelModel& k, double t) {
            return k.bernoulli_representation(t).p;
          },
          py::arg("t"));

  m.def(
      "sample_counting",
      [](const std::vector<double>& p, std::uint64_t seed) {
        counting::BernoulliRepresentation rep;
        rep.p = p;
        return counting::sample_counting(rep, seed);
      },
      py::arg("probabilities"), py::arg("seed"));
  m.def("bernstein_bound", &counting::bernstein_bound, py::arg("sigma2"), py::arg("u"));
  m.def(
      "counting_deviation_bound",
      [](double sigma2, double u, double c1) {
        const auto b = counting::counting_deviation_bound(sigma2, u, c1);
        return std::make_pair(b.offset, b.bound);
      },
      py::arg("sigma2"), py::arg("u"), py::arg("c1"));
  m.def(
      "goe_counting_bound",
      [](double sigma2, double u, double c1p) {
        const auto b = counting::goe_counting_bound(sigma2, u, c1p);
        return std::make_pair(b.offset, b.bound);
      },
      py::arg("sigma2"), py::arg("u"), py::arg("c1p"));
  m.def("eigenvalue_deviation_bound_bulk", &counting::eigenvalue_deviation_bound_bulk,
        py::arg("n"), py::arg("u"), py::arg("C"), py::arg("c_delta"));
  m.def("eigenvalue_deviation_bound_intermediate",
        &counting::eigenvalue_deviation_bound_intermediate, py::arg("n"), py::arg("j"),
        py::arg("u"), py::arg("cp"));

  // transport
  m.def(
      "w2_squared_to_semicircle",
      [](std::vector<double> support) {
        return transport::w2_squared_to_semicircle(
            transport::EmpiricalMeasure::from_unsorted(std::move(support)));
      },
      py::arg("support"));
  m.def(
      "w2_upper_bound_decomposition",
      [](std::vector<double> support) {
        const auto mu = transport::EmpiricalMeasure::from_unsorted(std::move(support));
        const auto d =
            transport::w2_upper_bound_decomposition(mu, laws::gamma_table(mu.size()));
        return std::make_tuple(d.term1, d.term2, d.bound);
      },
      py::arg("support"));
  m.def(
      "w1_to_semicircle",
      [](std::vector<double> support) {
        return transport::w1_to_semicircle(
            transport::EmpiricalMeasure::from_unsorted(std::move(support)));
      },
      py::arg("support"));
  m.def(
      "kolmogorov_to_semicircle",
      [](std::vector<double> support) {
        return transport::kolmogorov_to_semicircle(
            transport::EmpiricalMeasure::from_unsorted(std::move(support)));
      },
      py::arg("support"));

  // estimators
  py::class_<estimators::EigenvalueStats>(m, "EigenvalueStats")
      .def_readonly("j", &estimators::EigenvalueStats::j)
      .def_readonly("replicates", &estimators::EigenvalueStats::replicates)
      .def_readonly("target", &estimators::EigenvalueStats::target)
      .def_readonly("mean", &estimators::EigenvalueStats::mean)
      .def_readonly("variance", &estimators::EigenvalueStats::variance)
      .def_readonly("msd", &estimators::EigenvalueStats::msd)
      .def_readonly("mean_stderr", &estimators::EigenvalueStats::mean_stderr)
      .def_readonly("variance_stderr", &estimators::EigenvalueStats::variance_stderr)
      .def_readonly("msd_stderr", &estimators::EigenvalueStats::msd_stderr);

  m.def("estimate_eigenvalue_stats", &estimators::estimate_eigenvalue_stats,
        py::arg("spec"), py::arg("j"), py::arg("replicates"), py::arg("seed"),
        py::arg("fast") = true, py::arg("workers") = 1);

  m.def(
      "universality_gap",
      [](const ensembles::EnsembleSpec& a, const ensembles::EnsembleSpec& b, int j,
         int replicates, std::uint64_t seed, int workers) {
        const auto g = estimators::universality_gap(a, b, j, replicates, seed, false,
                                                    false, workers);
        return std::make_tuple(g.gap, g.pooled_stderr, g.msd_a, g.msd_b);
      },
      py::arg("spec_a"), py::arg("spec_b"), py::arg("j"), py::arg("replicates"),
      py::arg("seed"), py::arg("workers") = 1);

  m.def(
      "interlacing_mean_check",
      [](int n, double t, int replicates, std::uint64_t seed, int workers) {
        const auto r = estimators::interlacing_mean_check(n, t, replicates, seed, workers);
        return std::make_tuple(r.delta, r.stderr_, r.mean_gue, r.mean_goe_avg);
      },
      py::arg("n"), py::arg("t"), py::arg("replicates"), py::arg("seed"),
      py::arg("workers") = 1);

  m.def(
      "standardized_bulk_deviations",
      [](const ensembles::EnsembleSpec& spec, int j, int replicates, std::uint64_t seed,
         bool fast, int workers) {
        const auto r = estimators::standardized_bulk_deviations(spec, j, replicates,
                                                                seed, fast, workers);
        return std::make_tuple(r.mean, r.variance, r.ks_vs_normal, r.values);
      },
      py::arg("spec"), py::arg("j"), py::arg("replicates"), py::arg("seed"),
      py::arg("fast") = true, py::arg("workers") = 1);
}
