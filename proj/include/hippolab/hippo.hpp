#pragma once

#include <optional>

#include "hippolab/matrix.hpp"

namespace hippolab {

enum class Method { LegS, LegT, FouT };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

/// Continuous (A, B, C, D) bundle. C is absent until a readout is attached.
struct StateSystem {
  Matrix a;
  Vec b;
  std::optional<Vec> c;
  double d = 0.0;
  Method method = Method::LegS;
  bool normalized = false;

  std::size_t state_size() const { return b.size(); }
};

StateSystem make_legs(std::size_t n);
StateSystem make_legt(std::size_t n, bool normalized = false);
StateSystem make_fout(std::size_t n, bool normalized = false);

StateSystem make_system(Method method, std::size_t n, bool normalized = false);

/// Index roles in the FouT state layout: constant at 0, the frequency-m
/// cosine at 2m-1, its sine at 2m. For even n the final slot has no sine
/// partner and is kept inert (zero row, column and input).
enum class FoutKind { Constant, Cosine, Sine, Padding };
FoutKind fout_index_kind(std::size_t index, std::size_t state_size);
/// Frequency index m for cosine/sine slots.
std::size_t fout_frequency(std::size_t index);

/// Attaches the delay-network readout: the kernel C e^{tA} B + D delta(t)
/// approximates delta(t - w) with w the window length. LegS has no window
/// and is rejected.
StateSystem delay_readout(const StateSystem& sys);

/// Timescale change: (cA, cB), kernels become c K(ct).
StateSystem scale(const StateSystem& sys, double c);
/// Exponential tilt: (A + cI, B), kernels become e^{ct} K(t).
StateSystem shift(const StateSystem& sys, double c);
/// Orthogonal change of basis: (V A V^T, V B), kernels become V K(t).
StateSystem unitary_conjugate(const StateSystem& sys, const Matrix& v);

}  // namespace hippolab
