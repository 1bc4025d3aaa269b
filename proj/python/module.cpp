// Python bindings for the main operations: paths and moduli, Skorokhod and
// Prokhorov metrics, exact walk identities, limit laws, and simulation.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cadlag/harness.hpp"
#include "cadlag/io.hpp"
#include "cadlag/laws.hpp"
#include "cadlag/metrics.hpp"
#include "cadlag/path.hpp"
#include "cadlag/simulate.hpp"
#include "cadlag/walks.hpp"

namespace py = pybind11;
using namespace cadlag;

PYBIND11_MODULE(_cadlag, m) {
    m.doc() = "computable weak convergence on cadlag path space";

    py::class_<CadlagPath>(m, "CadlagPath")
        .def_static("constant", &CadlagPath::constant, py::arg("v"), py::arg("domain") = 1.0)
        .def_static("step", &CadlagPath::step, py::arg("breaks"), py::arg("values"),
                    py::arg("terminal"), py::arg("domain") = 1.0)
        .def_static("piecewise_linear", &CadlagPath::piecewise_linear, py::arg("ts"),
                    py::arg("vs"))
        .def_static("indicator", &CadlagPath::indicator, py::arg("a"), py::arg("domain") = 1.0)
        .def("value", &CadlagPath::value)
        .def("left_limit", &CadlagPath::left_limit)
        .def("sup_norm", &CadlagPath::sup_norm)
        .def("domain", &CadlagPath::domain)
        .def("terminal", &CadlagPath::terminal)
        .def("is_step", &CadlagPath::is_step)
        .def("breakpoints", &CadlagPath::breakpoints)
        .def("__eq__", [](const CadlagPath& a, const CadlagPath& b) { return a == b; })
        .def("__repr__", [](const CadlagPath& x) {
            return "<CadlagPath segments=" + std::to_string(x.segments().size()) +
                   " domain=" + std::to_string(x.domain()) + ">";
        });

    m.def("uniform_distance", &uniform_distance);
    m.def("largest_jump", &largest_jump);
    m.def("oscillation_on_interval", &oscillation_on_interval, py::arg("x"), py::arg("a"),
          py::arg("b"), py::arg("right_open") = true);
    m.def("modulus_w", &modulus_w);
    m.def("modulus_w_prime", &modulus_w_prime);
    m.def("modulus_w_double_prime", &modulus_w_double_prime);
    m.def("skorokhod_d", &skorokhod_d);
    m.def("skorokhod_d_circ",
          [](const CadlagPath& x, const CadlagPath& y, double hw) {
              EnclosedValue v = skorokhod_d_circ(x, y, hw);
              return py::make_tuple(v.value, v.half_width);
          },
          py::arg("x"), py::arg("y"), py::arg("target_half_width") = 1e-6);
    m.def("d_infinity",
          [](const CadlagPath& x, const CadlagPath& y, int terms) {
              ApproxValue v = d_infinity(x, y, terms);
              return py::make_tuple(v.value, v.error_bound);
          },
          py::arg("x"), py::arg("y"), py::arg("terms") = 20);
    m.def("psi_taper", &psi_taper, py::arg("x"), py::arg("i"), py::arg("taper_grid") = 1e-3);
    m.def("restrict_path", &restrict_path);

    py::class_<DiscreteMeasure>(m, "DiscreteMeasure")
        .def(py::init<std::vector<std::string>, std::vector<double>,
                      std::vector<std::vector<double>>>(),
             py::arg("atoms"), py::arg("weights"), py::arg("dist"));
    m.def("prokhorov_distance",
          [](const DiscreteMeasure& p, const DiscreteMeasure& q, const std::string& mode) {
              ProkhorovMode pm = mode == "exact" ? ProkhorovMode::Exact
                               : mode == "flow" ? ProkhorovMode::Flow
                                                : ProkhorovMode::Auto;
              return prokhorov_distance(p, q, pm);
          },
          py::arg("p"), py::arg("q"), py::arg("mode") = "auto");

    m.def("walk_pmf", [](int n, int i) { return walk_pmf(n, i).to_double(); });
    m.def("reflection_joint",
          [](int n, int i, int j, int l) { return reflection_joint(n, i, j, l).to_double(); });
    m.def("ballot_positive", [](int n, int i) { return ballot_positive(n, i).to_double(); });
    m.def("occupation_conditional",
          [](int n, int j) { return occupation_conditional(n, j).to_double(); });
    m.def("binomial_pmf", &binomial_pmf);

    m.def("normal_cdf", &normal_cdf);
    m.def("wiener_sup_cdf", &wiener_sup_cdf);
    m.def("wiener_abs_sup_cdf", [](double b) { return wiener_abs_sup_cdf(b); });
    m.def("wiener_range_joint", [](double a, double b, double a2, double b2) {
        return wiener_range_joint(a, b, a2, b2);
    });
    m.def("arcsine_cdf", &arcsine_cdf);
    m.def("arcsine_density_g", &arcsine_density_g);
    m.def("bridge_range_prob", [](double a, double b) { return bridge_range_prob(a, b); });
    m.def("kolmogorov_cdf", [](double b) { return kolmogorov_cdf(b); });
    m.def("bridge_sup_cdf", &bridge_sup_cdf);

    m.def("donsker_path",
          [](int n, const std::string& law, std::uint64_t seed, std::uint64_t stream,
             const std::string& variant) {
              IncrementLaw l = law == "uniform" ? IncrementLaw::centered_uniform(1.0)
                                                : IncrementLaw::rademacher();
              return donsker_path(n, l, SeededStream{seed, stream},
                                  variant == "c" ? DonskerVariant::C : DonskerVariant::D);
          },
          py::arg("n"), py::arg("law") = "rademacher", py::arg("seed") = 0,
          py::arg("stream") = 0, py::arg("variant") = "d");
    m.def("poisson_path", [](int n, double alpha, std::uint64_t seed, std::uint64_t stream) {
        return poisson_path(n, alpha, SeededStream{seed, stream});
    });
    m.def("empirical_path", [](int n, std::uint64_t seed, std::uint64_t stream) {
        return empirical_path(n, CdfSpec::uniform(), SeededStream{seed, stream});
    });
    m.def("bridge_transform", &bridge_transform);
    m.def("quantile_transform",
          [](double u, double power) { return quantile_transform(u, CdfSpec::power(power)); },
          py::arg("u"), py::arg("power") = 1.0);
    m.def("apply_functional", [](const CadlagPath& x, const std::string& name, int n) {
        Functional f = Functional::sup();
        if (name == "inf") f = Functional::inf();
        else if (name == "sup_abs") f = Functional::sup_abs();
        else if (name == "range") f = Functional::range();
        else if (name == "last_zero") f = Functional::last_zero();
        else if (name == "occupation_positive") f = Functional::occupation_positive();
        else if (name == "integral") f = Functional::integral();
        else if (name == "ks_scaled") f = Functional::ks_scaled(n);
        else if (name != "sup") throw std::invalid_argument("unknown functional: " + name);
        return apply_functional(x, f);
    }, py::arg("x"), py::arg("name"), py::arg("n") = 1);

    m.def("ks_distance", [](std::vector<double> samples, const std::string& target) {
        return ks_distance(std::move(samples), resolve_target_cdf(target));
    });
    m.def("run_convergence_experiment",
          [](const std::string& process, const std::string& functional,
             const std::string& target, int n, int replicas, std::uint64_t seed,
             double tolerance) {
              ExperimentConfig cfg;
              cfg.process = process;
              cfg.functional = functional;
              cfg.target = target;
              cfg.n = n;
              cfg.replicas = replicas;
              cfg.seed = seed;
              cfg.tolerance = tolerance;
              ExperimentReport rep = run_convergence_experiment(cfg);
              py::dict d;
              d["distance"] = rep.distance;
              d["pass"] = rep.pass;
              return d;
          },
          py::arg("process"), py::arg("functional"), py::arg("target"), py::arg("n"),
          py::arg("replicas"), py::arg("seed"), py::arg("tolerance") = 0.03);

    m.def("write_path", &write_path);
    m.def("read_path", [](const std::string& text) {
        std::istringstream in(text);
        return read_path(in);
    });
}
