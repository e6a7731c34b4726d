#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hippolab/basis.hpp"
#include "hippolab/experiments.hpp"
#include "hippolab/hippo.hpp"
#include "hippolab/numerics.hpp"
#include "hippolab/ssm.hpp"

namespace py = pybind11;
using namespace hippolab;

namespace {

std::vector<Vec> matrix_rows(const Matrix& m) {
  std::vector<Vec> rows(m.rows(), Vec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

Matrix matrix_from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_hippolab, m) {
  m.doc() = "HiPPO state-space laboratory (C++ core)";

  py::enum_<Method>(m, "Method")
      .value("LegS", Method::LegS)
      .value("LegT", Method::LegT)
      .value("FouT", Method::FouT);

  py::enum_<DiscMethod>(m, "DiscMethod")
      .value("Bilinear", DiscMethod::Bilinear)
      .value("ZOH", DiscMethod::ZOH)
      .value("Euler", DiscMethod::Euler)
      .value("BackwardEuler", DiscMethod::BackwardEuler);

  py::class_<StateSystem>(m, "StateSystem")
      .def_property_readonly("a", [](const StateSystem& s) { return matrix_rows(s.a); })
      .def_readonly("b", &StateSystem::b)
      .def_readonly("c", &StateSystem::c)
      .def_readonly("d", &StateSystem::d)
      .def_readonly("method", &StateSystem::method)
      .def_readonly("normalized", &StateSystem::normalized)
      .def_property_readonly("state_size", &StateSystem::state_size);

  py::class_<DiscreteSystem>(m, "DiscreteSystem")
      .def_property_readonly("a_bar", [](const DiscreteSystem& s) { return matrix_rows(s.a_bar); })
      .def_readonly("b_bar", &DiscreteSystem::b_bar)
      .def_readonly("c", &DiscreteSystem::c)
      .def_readonly("d", &DiscreteSystem::d)
      .def_readonly("dt", &DiscreteSystem::dt);

  py::class_<KernelTable>(m, "KernelTable")
      .def_readonly("times", &KernelTable::times)
      .def_property_readonly("values", [](const KernelTable& t) { return matrix_rows(t.values); });

  py::class_<GramReport>(m, "GramReport")
      .def_property_readonly("gram", [](const GramReport& g) { return matrix_rows(g.gram); })
      .def_readonly("max_off_diagonal", &GramReport::max_off_diagonal)
      .def_readonly("max_diagonal_deviation", &GramReport::max_diagonal_deviation)
      .def_readonly("quadrature_order", &GramReport::quadrature_order);

  py::class_<DelayResult>(m, "DelayResult")
      .def_readonly("kernel", &DelayResult::kernel)
      .def_readonly("lag_target", &DelayResult::lag_target)
      .def_readonly("argmax_index", &DelayResult::argmax_index)
      .def_readonly("mass_at_target", &DelayResult::mass_at_target)
      .def_readonly("rmse_vs_lagged", &DelayResult::rmse_vs_lagged)
      .def_readonly("rmse_chance", &DelayResult::rmse_chance);

  py::class_<BoundCheck>(m, "BoundCheck")
      .def_readonly("lipschitz_l", &BoundCheck::lipschitz_l)
      .def_readonly("epsilon", &BoundCheck::epsilon)
      .def_readonly("n_required", &BoundCheck::n_required)
      .def_readonly("measured_error", &BoundCheck::measured_error);

  py::class_<ReconstructionResult>(m, "ReconstructionResult")
      .def_property_readonly("truth", [](const ReconstructionResult& r) { return r.truth.samples; })
      .def_property_readonly("reconstruction",
                             [](const ReconstructionResult& r) { return r.reconstruction.samples; })
      .def_property_readonly("per_window_rmse",
                             [](const ReconstructionResult& r) {
                               std::vector<std::tuple<double, double, double>> rows;
                               for (const auto& w : r.per_window_rmse)
                                 rows.emplace_back(w.t_begin, w.t_end, w.rmse);
                               return rows;
                             })
      .def_readonly("input_std", &ReconstructionResult::input_std);

  m.def("make_legs", &make_legs, py::arg("n"));
  m.def("make_legt", &make_legt, py::arg("n"), py::arg("normalized") = false);
  m.def("make_fout", &make_fout, py::arg("n"), py::arg("normalized") = false);
  m.def("delay_readout", &delay_readout);
  m.def("scale", &scale);
  m.def("shift", &shift);
  m.def("unitary_conjugate", [](const StateSystem& s, const std::vector<Vec>& v) {
    return unitary_conjugate(s, matrix_from_rows(v));
  });

  m.def("mat_exp", [](const std::vector<Vec>& rows) { return matrix_rows(mat_exp(matrix_from_rows(rows))); });
  m.def("solve_linear", [](const std::vector<Vec>& rows, const Vec& rhs) {
    return solve_linear(matrix_from_rows(rows), rhs);
  });
  m.def("gauss_legendre", [](std::size_t order) {
    const auto r = gauss_legendre(order);
    return py::make_tuple(r.nodes, r.weights);
  });
  m.def("fft_convolve", &fft_convolve);
  m.def("pade_exp_continuants", [](std::size_t n) {
    std::vector<std::pair<Vec, Vec>> out;
    for (const auto& r : pade_exp_continuants(n)) out.emplace_back(r.num, r.den);
    return out;
  });
  m.def("rng_gaussian", [](std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    return rng_gaussian(rng, n);
  });

  m.def("legendre_shifted", &legendre_shifted);
  m.def("basis_eval", [](Method method, std::size_t n, bool normalized, std::size_t idx, double t) {
    return basis_eval(BasisSpec{method, n, normalized}, idx, t);
  });
  m.def("measure_eval", [](Method method, std::size_t n, bool normalized, double t) {
    return measure_eval(BasisSpec{method, n, normalized}, t);
  });
  m.def("gram_matrix", [](Method method, std::size_t n, bool normalized, std::size_t order) {
    return gram_matrix(BasisSpec{method, n, normalized}, order);
  });
  m.def("timescale", [](Method method, std::size_t n, bool normalized) {
    return timescale(BasisSpec{method, n, normalized});
  });
  m.def("legendre_derivative_coeffs", &legendre_derivative_coeffs);

  m.def("sample_kernels", &sample_kernels);
  m.def("discretize", &discretize);
  m.def("run", [](const DiscreteSystem& sys, const Vec& samples, double dt) {
    const auto res = run(sys, Signal{samples, dt});
    return py::make_tuple(matrix_rows(res.states), res.output.samples);
  });
  m.def("discrete_kernel", &discrete_kernel);
  m.def("transfer_function", &transfer_function);

  m.def("bandlimited_noise", [](std::uint64_t seed, std::size_t len, double fraction) {
    Rng rng(seed);
    return bandlimited_noise(rng, len, fraction);
  });
  m.def("reconstruct_history",
        [](const StateSystem& sys, const Vec& samples, double dt, std::size_t at_step) {
          return reconstruct_history(sys, Signal{samples, dt}, at_step);
        });
  m.def("delay_experiment", &delay_experiment, py::arg("method"), py::arg("n"), py::arg("dt"),
        py::arg("len"), py::arg("seed"), py::arg("band_fraction") = kDefaultBandFraction,
        py::arg("disc") = DiscMethod::ZOH);
  m.def("normalization_experiment",
        [](const StateSystem& sys, double c, double dt, std::size_t steps) {
          const auto res = normalization_experiment(sys, c, dt, steps);
          return py::make_tuple(res.norm_trajectory, res.limit);
        });
  m.def("fout_bound_check", &fout_bound_check, py::arg("lipschitz_l"), py::arg("epsilon"),
        py::arg("derivative_order"), py::arg("seed"));
  m.def("timescale_sweep", [](Method method, std::size_t n, const Vec& dts, bool delay_task,
                              std::uint64_t seed, std::size_t lag) {
    std::vector<std::pair<double, double>> out;
    for (const auto& row : timescale_sweep(
             method, n, dts, delay_task ? SweepTask::DelayLag : SweepTask::ReconstructionWindow,
             seed, lag))
      out.emplace_back(row.dt, row.metric);
    return out;
  });
}
