#pragma once

#include "hippolab/hippo.hpp"
#include "hippolab/matrix.hpp"

namespace hippolab {

struct BasisSpec {
  Method method = Method::LegS;
  std::size_t state_size = 1;
  bool normalized = false;
};

/// Legendre polynomial rescaled to be orthonormal on [0,1]:
/// L_n(y) = sqrt(2n+1) P_n(2y-1). Requires y in [0,1].
double legendre_shifted(std::size_t n, double y);

/// The n-th orthogonal basis function p_n(t) realized by the SSM kernels
/// (K_n = p_n * measure). Windowed methods evaluate in kernel orientation:
/// LegT stores L_n counted from the old edge of the window, so
/// p_n(t) = L_n(1 - t/w); FouT uses 1, sqrt(2) cos(2 pi m t/w),
/// sqrt(2) sin(2 pi m t/w). LegS: p_n(t) = L_n(e^{-t}).
double basis_eval(const BasisSpec& spec, std::size_t n, double t);

/// Measure density at age t: e^{-t} (LegS), indicator of the window
/// (LegT/FouT; halved systems spread it as (1/2) 1[0,2]).
double measure_eval(const BasisSpec& spec, double t);

struct GramReport {
  Matrix gram;
  double max_off_diagonal = 0.0;
  double max_diagonal_deviation = 0.0;
  std::size_t quadrature_order = 0;
};

/// Pairwise inner products of the basis under its measure, by Gauss-Legendre
/// quadrature on the support. LegS integrates through the substitution
/// u = e^{-t}, which turns the half-line integral into a polynomial one.
GramReport gram_matrix(const BasisSpec& spec, std::size_t quad_order);

/// First moment of the measure, E[omega]; analytic for all three methods.
double timescale(const BasisSpec& spec);

/// Coefficients of y L_n'(y) expanded in {L_0 .. L_n}: entry n is n and
/// entry k < n is sqrt(2n+1) sqrt(2k+1). Empty for n = 0.
Vec legendre_derivative_coeffs(std::size_t n);

}  // namespace hippolab
