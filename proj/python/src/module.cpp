#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <utility>
#include <vector>

#include "surfbath/bath.hpp"
#include "surfbath/cam.hpp"
#include "surfbath/errors.hpp"
#include "surfbath/lattice.hpp"
#include "surfbath/spinmodel.hpp"
#include "surfbath/version.hpp"

namespace py = pybind11;
using namespace surfbath;

namespace {

std::vector<std::vector<int>> supports(const std::vector<Stabilizer>& gens) {
  std::vector<std::vector<int>> out;
  out.reserve(gens.size());
  for (const Stabilizer& g : gens) out.push_back(g.qubits.indices());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Surface-layout fidelity and critical-point toolkit";
  m.attr("__version__") = kVersion;

  py::register_exception<error>(m, "Error", PyExc_RuntimeError);

  py::class_<Lattice>(m, "Lattice")
      .def_property_readonly("n", [](const Lattice& l) { return l.spec.n; })
      .def_property_readonly("m", [](const Lattice& l) { return l.spec.m; })
      .def_property_readonly(
          "spacing", [](const Lattice& l) { return l.spec.spacing; })
      .def_readonly("n_qubits", &Lattice::n_qubits)
      .def_property_readonly("positions",
                             [](const Lattice& l) {
                               std::vector<std::pair<double, double>> out;
                               out.reserve(l.positions.size());
                               for (const Vec2& p : l.positions)
                                 out.emplace_back(p.x, p.y);
                               return out;
                             })
      .def_property_readonly(
          "stars", [](const Lattice& l) { return supports(l.stars); })
      .def_property_readonly(
          "plaquettes",
          [](const Lattice& l) { return supports(l.plaquettes); })
      .def_property_readonly(
          "gamma_x", [](const Lattice& l) { return l.gamma_x.indices(); })
      .def_property_readonly(
          "gamma_z", [](const Lattice& l) { return l.gamma_z.indices(); })
      .def("vertical_id", &Lattice::vertical_id, py::arg("col"),
           py::arg("level"))
      .def("horizontal_id", &Lattice::horizontal_id, py::arg("col"),
           py::arg("row"))
      .def("distance", &Lattice::distance, py::arg("i"), py::arg("j"))
      .def("neighbor_pairs",
           [](const Lattice& l) { return neighbor_pairs(l); })
      .def("__repr__", [](const Lattice& l) {
        return "<Lattice n=" + std::to_string(l.spec.n) +
               " m=" + std::to_string(l.spec.m) +
               " qubits=" + std::to_string(l.n_qubits) + ">";
      });

  m.def("build_lattice",
        [](int n, int m_, double spacing) {
          return build_lattice(LatticeSpec{n, m_, spacing});
        },
        py::arg("n"), py::arg("m"), py::arg("spacing") = 1.0);

  py::class_<BathParams>(m, "BathParams")
      .def(py::init([](double s, double delta, double v, double omega0,
                       double cutoff) {
             BathParams p{s, delta, v, omega0, cutoff};
             validate(p);
             return p;
           }),
           py::arg("s") = 0.0, py::arg("delta") = 1.0, py::arg("v") = 1.0,
           py::arg("omega0") = 1.0, py::arg("cutoff") = 0.0)
      .def_readonly("s", &BathParams::s)
      .def_readonly("delta", &BathParams::delta)
      .def_readonly("v", &BathParams::v)
      .def_readonly("omega0", &BathParams::omega0)
      .def_readonly("cutoff", &BathParams::cutoff);

  m.def("bath_g_real", &bath_g_real, py::arg("params"), py::arg("d"));
  m.def("bath_g_imag", &bath_g_imag, py::arg("params"), py::arg("d"));
  m.def("bath_g_real_quadrature", &bath_g_real_quadrature, py::arg("params"),
        py::arg("d"), py::arg("abs_tol") = 1e-9);
  m.def("bath_g_imag_quadrature", &bath_g_imag_quadrature, py::arg("params"),
        py::arg("d"), py::arg("abs_tol") = 1e-9);
  m.def("bath_phi", &bath_phi, py::arg("params"), py::arg("d"));
  m.def("bath_coupling", &bath_coupling, py::arg("params"), py::arg("d"));
  m.def("lambda_squared_for_beta", &lambda_squared_for_beta,
        py::arg("params"), py::arg("beta"));
  m.def("flip_probability", &flip_probability, py::arg("params"),
        py::arg("beta"));
  m.def("beta_for_flip_probability", &beta_for_flip_probability,
        py::arg("params"), py::arg("prob"));
  m.def("dephasing_weight", &dephasing_weight, py::arg("params"),
        py::arg("beta"), py::arg("n_qubits"));

  m.def("amplitude_fidelity",
        [](std::complex<double> a, std::complex<double> b) {
          return fidelity_of(AmplitudePair{a, b});
        },
        py::arg("a"), py::arg("b"));

  py::class_<RestrictedEnsemble>(m, "Ensemble")
      .def(py::init([](const Lattice& lat, std::complex<double> j,
                       int workers, bool force_dense) {
             return RestrictedEnsemble(lat, nearest_neighbor_couplings(lat, j),
                                       EnsembleOptions{workers, force_dense});
           }),
           py::arg("lattice"), py::arg("j") = std::complex<double>(-1.0, 0.0),
           py::arg("workers") = 1, py::arg("force_dense") = false,
           "Restricted ensemble with a uniform nearest-neighbor coupling.")
      .def("amplitudes",
           [](const RestrictedEnsemble& e, double beta) {
             const AmplitudePair amp = e.amplitudes(beta);
             return std::make_pair(amp.a, amp.b);
           },
           py::arg("beta"))
      .def("fidelity", &RestrictedEnsemble::fidelity, py::arg("beta"))
      .def("fidelity_sweep",
           [](const RestrictedEnsemble& e, const std::vector<double>& betas) {
             std::vector<double> out;
             out.reserve(betas.size());
             for (const AmplitudePair& amp : e.amplitudes(betas))
               out.push_back(fidelity_of(amp));
             return out;
           },
           py::arg("betas"))
      .def_property_readonly("generator_count",
                             &RestrictedEnsemble::generator_count)
      .def_property_readonly("ensemble_size",
                             &RestrictedEnsemble::ensemble_size)
      .def_property_readonly("energy_offset",
                             &RestrictedEnsemble::energy_offset);

  m.def("bath_ensemble",
        [](const Lattice& lat, const BathParams& bath, int workers) {
          return RestrictedEnsemble(lat, bath_couplings(lat, bath),
                                    EnsembleOptions{workers, false});
        },
        py::arg("lattice"), py::arg("bath"), py::arg("workers") = 1,
        "Restricted ensemble with distance-dependent bath-induced couplings.");

  m.def("brute_force_amplitudes",
        [](const Lattice& lat, std::complex<double> j, double beta) {
          const AmplitudePair amp =
              brute_force_amplitudes(lat, nearest_neighbor_couplings(lat, j),
                                     beta);
          return std::make_pair(amp.a, amp.b);
        },
        py::arg("lattice"), py::arg("j"), py::arg("beta"));

  py::class_<ClusterModel>(m, "ClusterModel")
      .def_readonly("center", &ClusterModel::center)
      .def_readonly("boundary", &ClusterModel::boundary)
      .def_readonly("lattice", &ClusterModel::lattice);

  m.def("build_cluster", &build_cluster, py::arg("size"),
        py::arg("spacing") = 1.0);

  m.def("cam_critical_point",
        [](int size, int workers) {
          CamOptions opt;
          opt.workers = workers;
          return cam_critical_point(build_cluster(size), opt);
        },
        py::arg("size"), py::arg("workers") = 1);

  py::class_<CamExtrapolation>(m, "CamExtrapolation")
      .def_readonly("sizes", &CamExtrapolation::sizes)
      .def_readonly("x_c", &CamExtrapolation::x_c)
      .def_readonly("slope", &CamExtrapolation::slope)
      .def_readonly("intercept", &CamExtrapolation::intercept)
      .def_readonly("intercept_stderr", &CamExtrapolation::intercept_stderr)
      .def_readonly("beta_c", &CamExtrapolation::beta_c)
      .def_readonly("beta_c_stderr", &CamExtrapolation::beta_c_stderr)
      .def("__repr__", [](const CamExtrapolation& e) {
        return "<CamExtrapolation beta_c=" + std::to_string(e.beta_c) +
               " +- " + std::to_string(e.beta_c_stderr) + ">";
      });

  m.def("cam_extrapolate",
        [](const std::vector<int>& sizes, int workers) {
          CamOptions opt;
          opt.workers = workers;
          return cam_extrapolate(sizes, opt);
        },
        py::arg("sizes") = std::vector<int>{2, 3, 4}, py::arg("workers") = 1);

  m.def("entropy_balance_beta_c", &entropy_balance_beta_c,
        py::arg("mu") = 2.64, py::arg("coordination") = 4);
  m.def("flip_probability_threshold", &flip_probability_threshold,
        py::arg("mu") = 2.64, py::arg("coordination") = 4);
}
