#pragma once

#include <string>
#include <utility>

#include "hippolab/hippo.hpp"
#include "hippolab/matrix.hpp"

namespace hippolab {

enum class DiscMethod { Bilinear, ZOH, Euler, BackwardEuler };

const char* disc_method_name(DiscMethod m);
DiscMethod disc_method_from_name(const std::string& name);

struct DiscreteSystem {
  Matrix a_bar;
  Vec b_bar;
  std::optional<Vec> c;
  double d = 0.0;
  double dt = 0.0;
  DiscMethod method = DiscMethod::Bilinear;

  std::size_t state_size() const { return b_bar.size(); }
};

/// Samples of the kernel vector e^{tA} B on a uniform grid; values is
/// N x len with values(n, k) = K_n(k dt).
struct KernelTable {
  Vec times;
  Matrix values;
};

struct Signal {
  Vec samples;
  double dt = 0.0;
};

/// One matrix exponential of dt*A, then repeated products; avoids a fresh
/// exponential per grid point.
KernelTable sample_kernels(const StateSystem& sys, double dt, std::size_t len);

/// Bilinear, exact ZOH (via the augmented block exponential, so A need not
/// be invertible), forward Euler or backward Euler.
DiscreteSystem discretize(const StateSystem& sys, double dt, DiscMethod method);

/// x' = Abar x + Bbar u; y = C x' + D u (output reads the updated state).
std::pair<Vec, double> step(const DiscreteSystem& sys, const Vec& x, double u);

struct RunResult {
  Matrix states;  // (len x N), state after each input sample
  Signal output;
};

RunResult run(const DiscreteSystem& sys, const Signal& input);

/// Impulse response: K_k = C Abar^k Bbar, with D added at k = 0.
Vec discrete_kernel(const DiscreteSystem& sys, std::size_t len);

/// C (sI - A)^{-1} B + D.
Complex transfer_function(const StateSystem& sys, Complex s);

}  // namespace hippolab
