#include "hippolab/ssm.hpp"

#include <cmath>
#include <stdexcept>

#include "hippolab/numerics.hpp"

namespace hippolab {

const char* disc_method_name(DiscMethod m) {
  switch (m) {
    case DiscMethod::Bilinear: return "bilinear";
    case DiscMethod::ZOH: return "zoh";
    case DiscMethod::Euler: return "euler";
    case DiscMethod::BackwardEuler: return "backward-euler";
  }
  return "?";
}

DiscMethod disc_method_from_name(const std::string& name) {
  if (name == "bilinear") return DiscMethod::Bilinear;
  if (name == "zoh") return DiscMethod::ZOH;
  if (name == "euler") return DiscMethod::Euler;
  if (name == "backward-euler") return DiscMethod::BackwardEuler;
  throw std::invalid_argument("unknown discretization: " + name);
}

KernelTable sample_kernels(const StateSystem& sys, double dt, std::size_t len) {
  if (len == 0) throw std::invalid_argument("sample_kernels: len must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("sample_kernels: dt must be positive");
  const std::size_t n = sys.state_size();
  const Matrix prop = mat_exp(dt * sys.a);
  KernelTable table;
  table.times.resize(len);
  table.values = Matrix(n, len);
  Vec v = sys.b;
  for (std::size_t k = 0; k < len; ++k) {
    table.times[k] = static_cast<double>(k) * dt;
    for (std::size_t i = 0; i < n; ++i) table.values(i, k) = v[i];
    if (k + 1 < len) v = matvec(prop, v);
  }
  return table;
}

DiscreteSystem discretize(const StateSystem& sys, double dt, DiscMethod method) {
  if (!(dt > 0.0)) throw std::invalid_argument("discretize: dt must be positive");
  const std::size_t n = sys.state_size();
  const Matrix ident = Matrix::identity(n);

  DiscreteSystem out;
  out.c = sys.c;
  out.d = sys.d;
  out.dt = dt;
  out.method = method;

  switch (method) {
    case DiscMethod::Bilinear: {
      const Matrix left = ident - (dt / 2.0) * sys.a;
      Matrix rhs(n, n + 1);
      const Matrix right = ident + (dt / 2.0) * sys.a;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rhs(i, j) = right(i, j);
        rhs(i, n) = dt * sys.b[i];
      }
      const Matrix sol = solve_linear(left, rhs);
      out.a_bar = Matrix(n, n);
      out.b_bar.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.a_bar(i, j) = sol(i, j);
        out.b_bar[i] = sol(i, n);
      }
      break;
    }
    case DiscMethod::ZOH: {
      // exp(dt [[A, B], [0, 0]]) holds Abar in the top-left block and Bbar in
      // the top-right column; exact and valid for singular A.
      Matrix aug(n + 1, n + 1);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = dt * sys.a(i, j);
        aug(i, n) = dt * sys.b[i];
      }
      const Matrix e = mat_exp(aug);
      out.a_bar = Matrix(n, n);
      out.b_bar.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.a_bar(i, j) = e(i, j);
        out.b_bar[i] = e(i, n);
      }
      break;
    }
    case DiscMethod::Euler: {
      out.a_bar = ident + dt * sys.a;
      out.b_bar.resize(n);
      for (std::size_t i = 0; i < n; ++i) out.b_bar[i] = dt * sys.b[i];
      break;
    }
    case DiscMethod::BackwardEuler: {
      const Matrix left = ident - dt * sys.a;
      Matrix rhs(n, n + 1);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rhs(i, j) = ident(i, j);
        rhs(i, n) = dt * sys.b[i];
      }
      const Matrix sol = solve_linear(left, rhs);
      out.a_bar = Matrix(n, n);
      out.b_bar.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.a_bar(i, j) = sol(i, j);
        out.b_bar[i] = sol(i, n);
      }
      break;
    }
  }
  return out;
}

std::pair<Vec, double> step(const DiscreteSystem& sys, const Vec& x, double u) {
  if (x.size() != sys.state_size()) throw std::invalid_argument("step: state size mismatch");
  Vec next = matvec(sys.a_bar, x);
  for (std::size_t i = 0; i < next.size(); ++i) next[i] += sys.b_bar[i] * u;
  double y = 0.0;
  if (sys.c) y = dot(*sys.c, next) + sys.d * u;
  return {std::move(next), y};
}

RunResult run(const DiscreteSystem& sys, const Signal& input) {
  if (std::abs(input.dt - sys.dt) > 1e-12)
    throw std::invalid_argument("run: signal and system step sizes differ");
  const std::size_t len = input.samples.size();
  const std::size_t n = sys.state_size();
  RunResult res;
  res.states = Matrix(len, n);
  res.output.dt = sys.dt;
  res.output.samples.resize(len);
  Vec x(n, 0.0);
  for (std::size_t k = 0; k < len; ++k) {
    auto [next, y] = step(sys, x, input.samples[k]);
    x = std::move(next);
    for (std::size_t i = 0; i < n; ++i) res.states(k, i) = x[i];
    res.output.samples[k] = y;
  }
  return res;
}

Vec discrete_kernel(const DiscreteSystem& sys, std::size_t len) {
  if (len == 0) throw std::invalid_argument("discrete_kernel: len must be positive");
  if (!sys.c) throw std::invalid_argument("discrete_kernel: system has no readout C");
  Vec kernel(len);
  Vec v = sys.b_bar;
  for (std::size_t k = 0; k < len; ++k) {
    kernel[k] = dot(*sys.c, v);
    if (k + 1 < len) v = matvec(sys.a_bar, v);
  }
  kernel[0] += sys.d;
  return kernel;
}

Complex transfer_function(const StateSystem& sys, Complex s) {
  if (!sys.c) throw std::invalid_argument("transfer_function: system has no readout C");
  const std::size_t n = sys.state_size();
  std::vector<CVec> m(n, CVec(n));
  CVec rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = -sys.a(i, j);
    m[i][i] += s;
    rhs[i] = sys.b[i];
  }
  const CVec x = complex_solve(m, rhs);
  Complex y(sys.d, 0.0);
  for (std::size_t i = 0; i < n; ++i) y += (*sys.c)[i] * x[i];
  return y;
}

}  // namespace hippolab
