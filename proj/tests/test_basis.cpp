#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hippolab/basis.hpp"
#include "hippolab/numerics.hpp"

using namespace hippolab;

TEST_CASE("legendre_shifted: endpoint values and low orders") {
  for (std::size_t n = 0; n <= 8; ++n) {
    const double s = std::sqrt(2.0 * n + 1.0);
    CHECK(legendre_shifted(n, 1.0) == doctest::Approx(s).epsilon(1e-14));
    CHECK(legendre_shifted(n, 0.0) == doctest::Approx(s * ((n % 2 == 0) ? 1.0 : -1.0)).epsilon(1e-14));
  }
  for (double y : {0.0, 0.2, 0.9}) {
    CHECK(legendre_shifted(0, y) == 1.0);
    CHECK(legendre_shifted(1, y) == doctest::Approx(std::sqrt(3.0) * (2.0 * y - 1.0)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(legendre_shifted(2, 1.5), std::invalid_argument);
}

TEST_CASE("basis_eval: windows and limits") {
  BasisSpec legs{Method::LegS, 4, false};
  for (double t : {0.0, 0.5, 3.0}) CHECK(basis_eval(legs, 0, t) == 1.0);

  BasisSpec legt{Method::LegT, 4, false};
  CHECK(basis_eval(legt, 0, 1.5) == 0.0);
  // kernel orientation: L_n(1-t)
  CHECK(basis_eval(legt, 1, 0.25) == doctest::Approx(legendre_shifted(1, 0.75)).epsilon(1e-14));

  BasisSpec fout{Method::FouT, 5, false};
  CHECK(basis_eval(fout, 0, 0.3) == 1.0);
  CHECK(basis_eval(fout, 1, 0.3) ==
        doctest::Approx(std::sqrt(2.0) * std::cos(2.0 * std::numbers::pi * 0.3)).epsilon(1e-14));
  CHECK(basis_eval(fout, 2, 0.3) ==
        doctest::Approx(std::sqrt(2.0) * std::sin(2.0 * std::numbers::pi * 0.3)).epsilon(1e-14));
  CHECK(basis_eval(fout, 2, 1.3) == 0.0);
  CHECK_THROWS_AS(basis_eval(fout, 5, 0.1), std::out_of_range);

  // sine-type functions vanish at both window endpoints
  for (std::size_t idx : {2u, 4u})
    for (double t : {0.0, 1.0}) CHECK(std::abs(basis_eval(fout, idx, t)) < 1e-12);
}

TEST_CASE("measure_eval: densities and total mass") {
  BasisSpec legs{Method::LegS, 2, false};
  CHECK(measure_eval(legs, 0.0) == 1.0);
  CHECK(measure_eval(legs, 2.0) == doctest::Approx(std::exp(-2.0)));

  BasisSpec fout{Method::FouT, 2, false};
  CHECK(measure_eval(fout, 0.5) == 1.0);
  CHECK(measure_eval(fout, 1.5) == 0.0);

  BasisSpec legt_n{Method::LegT, 2, true};
  CHECK(measure_eval(legt_n, 1.5) == 0.5);

  // probability-measure requirement: total mass 1 for LegS and normalized specs
  const auto rule = gauss_legendre(64);
  for (BasisSpec spec : {legs, legt_n, BasisSpec{Method::FouT, 2, true}}) {
    double mass = 0.0;
    const double w = spec.method == Method::LegS ? 1.0 : 2.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      // LegS: substitute u = e^{-t} so the weight is 1 on (0,1)
      if (spec.method == Method::LegS)
        mass += rule.weights[q];
      else
        mass += rule.weights[q] * w * measure_eval(spec, rule.nodes[q] * w);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("gram_matrix: orthonormality per method") {
  {
    const GramReport g = gram_matrix(BasisSpec{Method::LegT, 4, false}, 32);
    CHECK(g.max_off_diagonal <= 1e-12);
    CHECK(g.max_diagonal_deviation <= 1e-12);
  }
  {
    const GramReport g = gram_matrix(BasisSpec{Method::LegS, 8, false}, 64);
    CHECK(g.max_off_diagonal <= 1e-12);
    CHECK(g.max_diagonal_deviation <= 1e-12);
  }
  {
    const GramReport g = gram_matrix(BasisSpec{Method::FouT, 9, false}, 128);
    CHECK(g.max_off_diagonal <= 1e-10);
    CHECK(g.max_diagonal_deviation <= 1e-10);
  }
  {
    // normalized windows stay orthonormal
    const GramReport g = gram_matrix(BasisSpec{Method::LegT, 6, true}, 48);
    CHECK(g.max_off_diagonal <= 1e-12);
  }
  CHECK_THROWS_AS(gram_matrix(BasisSpec{Method::LegT, 8, false}, 4), std::invalid_argument);
}

TEST_CASE("gram_matrix: off-diagonals shrink as the order grows") {
  const BasisSpec spec{Method::FouT, 7, false};
  const GramReport coarse = gram_matrix(spec, 16);
  const GramReport fine = gram_matrix(spec, 112);
  CHECK(fine.max_off_diagonal < coarse.max_off_diagonal);
  CHECK(fine.max_diagonal_deviation < coarse.max_diagonal_deviation);
}

TEST_CASE("timescale: analytic values") {
  CHECK(timescale(BasisSpec{Method::LegS, 4, false}) == doctest::Approx(1.0));
  CHECK(timescale(BasisSpec{Method::FouT, 4, false}) == doctest::Approx(0.5));
  CHECK(timescale(BasisSpec{Method::LegT, 4, false}) == doctest::Approx(0.5));
  CHECK(timescale(BasisSpec{Method::LegT, 4, true}) == doctest::Approx(1.0));
}

TEST_CASE("legendre_derivative_coeffs: identity y L_n'(y) = sum_k c_k L_k(y)") {
  CHECK(legendre_derivative_coeffs(0).empty());

  const Vec c1 = legendre_derivative_coeffs(1);
  REQUIRE(c1.size() == 2);
  CHECK(c1[0] == doctest::Approx(std::sqrt(3.0)));
  CHECK(c1[1] == doctest::Approx(1.0));

  // quadrature oracle at n = 3: project y L_3'(y) onto L_k
  const std::size_t n = 3;
  const Vec coeffs = legendre_derivative_coeffs(n);
  const auto rule = gauss_legendre(16);
  const double h = 1e-6;
  for (std::size_t k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double y = rule.nodes[q];
      const double deriv =
          (legendre_shifted(n, std::min(1.0, y + h)) - legendre_shifted(n, std::max(0.0, y - h))) /
          (std::min(1.0, y + h) - std::max(0.0, y - h));
      acc += rule.weights[q] * y * deriv * legendre_shifted(k, y);
    }
    CHECK(acc == doctest::Approx(coeffs[k]).epsilon(1e-4));
  }
}
