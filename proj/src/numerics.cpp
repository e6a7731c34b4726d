#include "hippolab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hippolab {

// ---------------------------------------------------------------------------
// Matrix exponential
// ---------------------------------------------------------------------------

// Pade-13 coefficients from Higham, "The scaling and squaring method for the
// matrix exponential revisited" (2005).
static const double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
static constexpr double kTheta13 = 5.371920351148152;

Matrix mat_exp(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("mat_exp: matrix must be square");
  if (!m.all_finite()) throw std::invalid_argument("mat_exp: non-finite entries");
  const std::size_t n = m.rows();
  if (n == 0) return Matrix();

  const double nrm = norm_1(m);
  int squarings = 0;
  if (nrm > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / kTheta13)));
    if (squarings > 60)
      throw std::overflow_error("mat_exp: norm too large, result would overflow");
  }
  const double scale = std::ldexp(1.0, -squarings);
  Matrix a = scale * m;

  const Matrix ident = Matrix::identity(n);
  Matrix a2 = a * a;
  Matrix a4 = a2 * a2;
  Matrix a6 = a4 * a2;

  const double* b = kPade13;
  Matrix u_inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  Matrix u = a * (a6 * u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  Matrix v_inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  Matrix v = a6 * v_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

  Matrix r = solve_linear(v - u, v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  if (!r.all_finite()) throw std::overflow_error("mat_exp: overflow during squaring");
  return r;
}

// ---------------------------------------------------------------------------
// LU solves (shared over double and complex<double>)
// ---------------------------------------------------------------------------

template <typename T>
static std::vector<T> lu_solve_dense(std::vector<T> a, std::vector<T> b,
                                     std::size_t n, std::size_t nrhs) {
  double scale = 0.0;
  for (const T& v : a) scale = std::max(scale, std::abs(v));
  const double tiny = std::max(1e-300, 1e-14 * scale);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    double best_mag = std::abs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(a[r * n + col]);
      if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best_mag < tiny)
      throw std::runtime_error("solve_linear: matrix is singular to working precision");
    if (best != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[best * n + j]);
      for (std::size_t j = 0; j < nrhs; ++j) std::swap(b[col * nrhs + j], b[best * nrhs + j]);
    }
    const T pivot = a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const T f = a[r * n + col] / pivot;
      if (f == T(0)) continue;
      a[r * n + col] = f;
      for (std::size_t j = col + 1; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
      for (std::size_t j = 0; j < nrhs; ++j) b[r * nrhs + j] -= f * b[col * nrhs + j];
    }
  }

  for (std::size_t col = n; col-- > 0;) {
    const T pivot = a[col * n + col];
    for (std::size_t j = 0; j < nrhs; ++j) {
      T s = b[col * nrhs + j];
      for (std::size_t p = col + 1; p < n; ++p) s -= a[col * n + p] * b[p * nrhs + j];
      b[col * nrhs + j] = s / pivot;
    }
  }
  return b;
}

Matrix solve_linear(const Matrix& m, const Matrix& rhs) {
  if (!m.square()) throw std::invalid_argument("solve_linear: matrix must be square");
  if (rhs.rows() != m.rows()) throw std::invalid_argument("solve_linear: rhs shape mismatch");
  std::vector<double> sol = lu_solve_dense<double>(m.data(), rhs.data(), m.rows(), rhs.cols());
  Matrix x(rhs.rows(), rhs.cols());
  x.data() = std::move(sol);
  return x;
}

Vec solve_linear(const Matrix& m, const Vec& rhs) {
  if (!m.square()) throw std::invalid_argument("solve_linear: matrix must be square");
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve_linear: rhs shape mismatch");
  return lu_solve_dense<double>(m.data(), rhs, m.rows(), 1);
}

CVec complex_solve(const std::vector<CVec>& m, const CVec& rhs) {
  const std::size_t n = m.size();
  if (n == 0 || rhs.size() != n)
    throw std::invalid_argument("complex_solve: shape mismatch");
  std::vector<Complex> flat(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("complex_solve: matrix must be square");
    std::copy(m[i].begin(), m[i].end(), flat.begin() + i * n);
  }
  return lu_solve_dense<Complex>(std::move(flat), rhs, n, 1);
}

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature on (0,1)
// ---------------------------------------------------------------------------

QuadratureRule gauss_legendre(std::size_t order) {
  if (order == 0) throw std::invalid_argument("gauss_legendre: order must be positive");
  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);

  const std::size_t half = (order + 1) / 2;
  for (std::size_t i = 1; i <= half; ++i) {
    // Newton iteration on P_n from the Chebyshev-based initial guess.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) - 0.25) /
                        (static_cast<double>(order) + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 1; j <= order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / static_cast<double>(j);
      }
      pp = static_cast<double>(order) * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    // Map [-1,1] to (0,1); weights then sum to 1.
    rule.nodes[i - 1] = 0.5 * (1.0 - z);
    rule.nodes[order - i] = 0.5 * (1.0 + z);
    const double w = 1.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[i - 1] = w;
    rule.weights[order - i] = w;
  }
  return rule;
}

// ---------------------------------------------------------------------------
// FFT convolution
// ---------------------------------------------------------------------------

static void fft_inplace(CVec& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const Complex wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Complex u = a[i + j];
        const Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse)
    for (Complex& x : a) x /= static_cast<double>(n);
}

Vec fft_convolve(const Vec& a, const Vec& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("fft_convolve: inputs must be non-empty");
  const std::size_t out_len = a.size() + b.size() - 1;
  std::size_t n = 1;
  while (n < out_len) n <<= 1;
  CVec fa(n), fb(n);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  fft_inplace(fa, false);
  fft_inplace(fb, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  fft_inplace(fa, true);
  Vec out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
  return out;
}

// ---------------------------------------------------------------------------
// Pade continuants of e^{-s}
// ---------------------------------------------------------------------------

template <typename T>
static T poly_eval(const Vec& coeffs, T s) {
  T acc(0);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * s + coeffs[i];
  return acc;
}

Complex RationalFn::eval(Complex s) const {
  return poly_eval(num, s) / poly_eval(den, s);
}

double RationalFn::eval(double s) const {
  return poly_eval(num, s) / poly_eval(den, s);
}

// p + c*s*q
static Vec poly_axpy_shift(const Vec& p, double c, const Vec& q) {
  Vec r(std::max(p.size(), q.size() + 1), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) r[i] += p[i];
  for (std::size_t i = 0; i < q.size(); ++i) r[i + 1] += c * q[i];
  while (r.size() > 1 && r.back() == 0.0) r.pop_back();
  return r;
}

std::vector<RationalFn> pade_exp_continuants(std::size_t n) {
  if (n == 0) throw std::invalid_argument("pade_exp_continuants: n must be positive");
  // Continued fraction of e^s with partial numerators
  //   a_1 = s,  a_{2j} = -s/(2(2j-1)),  a_{2j+1} = s/(2(2j+1)),
  // all partial denominators 1. The odd-step convergents h/k are the
  // [k/k-1] approximants of e^s, so their reciprocals k/h give e^{-s}.
  Vec h_prev = {1.0}, h_cur = {1.0};  // h_{-1}, h_0
  Vec k_prev = {0.0}, k_cur = {1.0};  // k_{-1}, k_0

  std::vector<RationalFn> out;
  out.reserve(n);
  for (std::size_t m = 1; m <= 2 * n - 1; ++m) {
    double c;
    if (m == 1) {
      c = 1.0;
    } else {
      const double odd = 2.0 * static_cast<double>((m - 1) / 2) + 1.0;
      c = (m % 2 == 1 ? 1.0 : -1.0) / (2.0 * odd);
    }
    Vec h_next = poly_axpy_shift(h_cur, c, h_prev);
    Vec k_next = poly_axpy_shift(k_cur, c, k_prev);
    h_prev = std::move(h_cur);
    h_cur = std::move(h_next);
    k_prev = std::move(k_cur);
    k_cur = std::move(k_next);
    if (m % 2 == 1) out.push_back(RationalFn{k_cur, h_cur});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rng
// ---------------------------------------------------------------------------

std::uint64_t Rng::next_u64() {
  // splitmix64 (Steele, Lea, Flood 2014); constants as published.
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 shifted away from 0 so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Vec rng_gaussian(Rng& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("rng_gaussian: n must be positive");
  Vec out(n);
  for (double& v : out) v = rng.gaussian();
  return out;
}

}  // namespace hippolab
