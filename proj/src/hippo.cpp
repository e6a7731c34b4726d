#include "hippolab/hippo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hippolab {

const char* method_name(Method m) {
  switch (m) {
    case Method::LegS: return "legs";
    case Method::LegT: return "legt";
    case Method::FouT: return "fout";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "legs") return Method::LegS;
  if (name == "legt") return Method::LegT;
  if (name == "fout") return Method::FouT;
  throw std::invalid_argument("unknown method: " + name);
}

StateSystem make_legs(std::size_t n) {
  if (n == 0) throw std::invalid_argument("make_legs: state size must be positive");
  StateSystem sys;
  sys.method = Method::LegS;
  sys.a = Matrix(n, n);
  sys.b.resize(n);
  for (std::size_t row = 0; row < n; ++row) {
    const double sr = std::sqrt(2.0 * row + 1.0);
    sys.b[row] = sr;
    for (std::size_t col = 0; col < row; ++col)
      sys.a(row, col) = -sr * std::sqrt(2.0 * col + 1.0);
    sys.a(row, row) = -(static_cast<double>(row) + 1.0);
  }
  return sys;
}

StateSystem make_legt(std::size_t n, bool normalized) {
  if (n == 0) throw std::invalid_argument("make_legt: state size must be positive");
  StateSystem sys;
  sys.method = Method::LegT;
  sys.normalized = normalized;
  sys.a = Matrix(n, n);
  sys.b.resize(n);
  const double half = normalized ? 0.5 : 1.0;
  for (std::size_t row = 0; row < n; ++row) {
    const double sr = std::sqrt(2.0 * row + 1.0);
    sys.b[row] = half * sr;
    for (std::size_t col = 0; col < n; ++col) {
      const double mag = sr * std::sqrt(2.0 * col + 1.0);
      const double sign = (col <= row) ? 1.0 : (((row + col) % 2 == 0) ? 1.0 : -1.0);
      sys.a(row, col) = -half * mag * sign;
    }
  }
  return sys;
}

FoutKind fout_index_kind(std::size_t index, std::size_t state_size) {
  if (index == 0) return FoutKind::Constant;
  if (index % 2 == 1)
    return (index + 1 < state_size) ? FoutKind::Cosine : FoutKind::Padding;
  return FoutKind::Sine;
}

std::size_t fout_frequency(std::size_t index) {
  return (index + 1) / 2;
}

StateSystem make_fout(std::size_t n, bool normalized) {
  if (n == 0) throw std::invalid_argument("make_fout: state size must be positive");
  StateSystem sys;
  sys.method = Method::FouT;
  sys.normalized = normalized;
  sys.a = Matrix(n, n);
  sys.b.resize(n, 0.0);
  const double half = normalized ? 0.5 : 1.0;
  const double s2 = std::sqrt(2.0);
  const std::size_t pairs = (n - 1) / 2;  // complete cosine/sine pairs

  sys.b[0] = half * 2.0;
  sys.a(0, 0) = half * -2.0;
  for (std::size_t m = 1; m <= pairs; ++m) {
    const std::size_t ci = 2 * m - 1, si = 2 * m;
    sys.b[ci] = half * 2.0 * s2;
    sys.a(0, ci) = sys.a(ci, 0) = half * -2.0 * s2;
    for (std::size_t k = 1; k <= pairs; ++k) sys.a(ci, 2 * k - 1) = half * -4.0;
    const double w = 2.0 * std::numbers::pi * static_cast<double>(m);
    sys.a(si, ci) = half * w;
    sys.a(ci, si) = half * -w;
  }
  // Even n leaves a cosine without its sine partner; that slot stays inert
  // (a dangling cosine row couples into the closed loop and contributes a
  // non-decaying mode, wrecking the finite-size kernels).
  return sys;
}

StateSystem make_system(Method method, std::size_t n, bool normalized) {
  switch (method) {
    case Method::LegS: return make_legs(n);
    case Method::LegT: return make_legt(n, normalized);
    case Method::FouT: return make_fout(n, normalized);
  }
  throw std::invalid_argument("make_system: bad method");
}

StateSystem delay_readout(const StateSystem& sys) {
  const std::size_t n = sys.state_size();
  StateSystem out = sys;
  Vec c(n, 0.0);
  switch (sys.method) {
    case Method::LegS:
      throw std::invalid_argument("delay_readout: LegS has no finite window");
    case Method::LegT:
      // C_n = p_n at the window edge = L_n(0) = sqrt(2n+1) (-1)^n.
      for (std::size_t i = 0; i < n; ++i)
        c[i] = std::sqrt(2.0 * i + 1.0) * ((i % 2 == 0) ? 1.0 : -1.0);
      out.d = 0.0;
      break;
    case Method::FouT:
      // C_n = 2 p_n at the window edge; sine slots vanish there. The
      // feedthrough cancels the kernel's transient at t=0: the readout
      // implements 2*u_hat(t) - u(t), hence D = -1.
      for (std::size_t i = 0; i < n; ++i) {
        const FoutKind kind = fout_index_kind(i, n);
        if (kind == FoutKind::Constant) c[i] = 2.0;
        else if (kind == FoutKind::Cosine) c[i] = 2.0 * std::sqrt(2.0);
      }
      out.d = -1.0;
      break;
  }
  out.c = std::move(c);
  return out;
}

StateSystem scale(const StateSystem& sys, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("scale: factor must be positive");
  StateSystem out = sys;
  out.a = c * sys.a;
  for (double& v : out.b) v *= c;
  return out;
}

StateSystem shift(const StateSystem& sys, double c) {
  StateSystem out = sys;
  for (std::size_t i = 0; i < out.a.rows(); ++i) out.a(i, i) += c;
  return out;
}

StateSystem unitary_conjugate(const StateSystem& sys, const Matrix& v) {
  const std::size_t n = sys.state_size();
  if (!v.square() || v.rows() != n)
    throw std::invalid_argument("unitary_conjugate: V must be N x N");
  const Matrix vt = transpose(v);
  const Matrix gram = vt * v;
  const Matrix ident = Matrix::identity(n);
  if (max_abs(gram - ident) > 1e-10)
    throw std::invalid_argument("unitary_conjugate: V is not orthogonal");
  StateSystem out = sys;
  out.a = v * sys.a * vt;
  out.b = matvec(v, sys.b);
  if (sys.c) out.c = matvec(v, *sys.c);
  return out;
}

}  // namespace hippolab
