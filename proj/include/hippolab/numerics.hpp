#pragma once

#include <cstdint>
#include <vector>

#include "hippolab/matrix.hpp"

namespace hippolab {

/// e^m via scaling-and-squaring around a degree-13 diagonal Pade core.
/// Throws on non-square or non-finite input and refuses norms that would
/// need more than 60 squarings.
Matrix mat_exp(const Matrix& m);

/// Solves m x = rhs by LU with partial pivoting. Throws on a matrix that is
/// singular to working precision.
Matrix solve_linear(const Matrix& m, const Matrix& rhs);
Vec solve_linear(const Matrix& m, const Vec& rhs);

/// Complex variant of the same solver, for resolvent evaluations (s I - A)x = b.
CVec complex_solve(const std::vector<CVec>& m, const CVec& rhs);

/// Gauss-Legendre rule on (0,1), normalized so the weights sum to 1.
struct QuadratureRule {
  Vec nodes;
  Vec weights;
};
QuadratureRule gauss_legendre(std::size_t order);

/// Full linear convolution, |a|+|b|-1 samples, via radix-2 FFT.
Vec fft_convolve(const Vec& a, const Vec& b);

/// Polynomial-quotient pair; coefficients ascending in degree.
struct RationalFn {
  Vec num;
  Vec den;
  Complex eval(Complex s) const;
  double eval(double s) const;
};

/// Continuants of the continued-fraction expansion of e^{-s}.
/// Entry k-1 of the result is the [k-1/k] Pade approximant of e^{-s};
/// the first two are 1/(1+s) and (1-s/3)/(1+2s/3+s^2/6).
std::vector<RationalFn> pade_exp_continuants(std::size_t n);

/// Deterministic 64-bit generator (splitmix64) with Box-Muller Gaussians.
/// The integer stream is bit-reproducible for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  /// One standard-normal draw.
  double gaussian();

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// n i.i.d. standard-normal samples; n must be positive.
Vec rng_gaussian(Rng& rng, std::size_t n);

}  // namespace hippolab
