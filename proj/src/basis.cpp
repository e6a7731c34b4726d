#include "hippolab/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hippolab/numerics.hpp"

namespace hippolab {

double legendre_shifted(std::size_t n, double y) {
  if (y < 0.0 || y > 1.0)
    throw std::invalid_argument("legendre_shifted: argument outside [0,1]");
  const double z = 2.0 * y - 1.0;
  double prev = 1.0;
  if (n == 0) return 1.0;
  double cur = z;
  for (std::size_t k = 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0) * z * cur - (k - 1.0) * prev) / static_cast<double>(k);
    prev = cur;
    cur = next;
  }
  return std::sqrt(2.0 * n + 1.0) * cur;
}

static double window_length(const BasisSpec& spec) {
  return spec.normalized ? 2.0 : 1.0;
}

double basis_eval(const BasisSpec& spec, std::size_t n, double t) {
  if (n >= spec.state_size) throw std::out_of_range("basis_eval: index out of range");
  if (t < 0.0) throw std::invalid_argument("basis_eval: t must be nonnegative");
  switch (spec.method) {
    case Method::LegS:
      return legendre_shifted(n, std::exp(-t));
    case Method::LegT: {
      const double w = window_length(spec);
      if (t > w) return 0.0;
      return legendre_shifted(n, 1.0 - t / w);
    }
    case Method::FouT: {
      const double w = window_length(spec);
      if (t > w) return 0.0;
      if (n == 0) return 1.0;
      const double m = static_cast<double>(fout_frequency(n));
      const double phase = 2.0 * std::numbers::pi * m * t / w;
      return std::sqrt(2.0) * ((n % 2 == 1) ? std::cos(phase) : std::sin(phase));
    }
  }
  throw std::logic_error("basis_eval: bad method");
}

double measure_eval(const BasisSpec& spec, double t) {
  if (t < 0.0) return 0.0;
  if (spec.method == Method::LegS) return std::exp(-t);
  const double w = window_length(spec);
  return (t <= w) ? 1.0 / w : 0.0;
}

GramReport gram_matrix(const BasisSpec& spec, std::size_t quad_order) {
  const std::size_t n = spec.state_size;
  if (quad_order < n)
    throw std::invalid_argument("gram_matrix: quadrature order below state size");
  const QuadratureRule rule = gauss_legendre(quad_order);

  GramReport report;
  report.quadrature_order = quad_order;
  report.gram = Matrix(n, n);

  // Rows of basis values at each node, weighted by the measure factor that
  // survives the change of variables onto (0,1).
  Matrix vals(n, quad_order);
  for (std::size_t q = 0; q < quad_order; ++q) {
    const double u = rule.nodes[q];
    for (std::size_t i = 0; i < n; ++i) {
      double v;
      if (spec.method == Method::LegS) {
        // u = e^{-t}: integral of p_i p_j e^{-t} dt becomes integral over u.
        v = legendre_shifted(i, u);
      } else {
        // stretch the unit-interval rule over the window; density * w = 1
        v = basis_eval(spec, i, u * window_length(spec));
      }
      vals(i, q) = v;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t q = 0; q < quad_order; ++q)
        s += rule.weights[q] * vals(i, q) * vals(j, q);
      report.gram(i, j) = s;
      report.gram(j, i) = s;
    }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = report.gram(i, j);
      if (i == j)
        report.max_diagonal_deviation = std::max(report.max_diagonal_deviation, std::abs(v - 1.0));
      else
        report.max_off_diagonal = std::max(report.max_off_diagonal, std::abs(v));
    }
  return report;
}

double timescale(const BasisSpec& spec) {
  if (spec.method == Method::LegS) return 1.0;  // int t e^{-t} / int e^{-t}
  return spec.normalized ? 1.0 : 0.5;           // mean of uniform window
}

Vec legendre_derivative_coeffs(std::size_t n) {
  if (n == 0) return {};
  Vec coeffs(n + 1);
  const double sn = std::sqrt(2.0 * n + 1.0);
  for (std::size_t k = 0; k < n; ++k) coeffs[k] = sn * std::sqrt(2.0 * k + 1.0);
  coeffs[n] = static_cast<double>(n);
  return coeffs;
}

}  // namespace hippolab
