#pragma once

#include <cstdint>

#include "hippolab/numerics.hpp"
#include "hippolab/ssm.hpp"

namespace hippolab {

/// White noise with spectral content above fraction * Nyquist removed
/// (FFT bin zeroing), rescaled to unit sample variance. fraction = 1 keeps
/// plain white noise.
Vec bandlimited_noise(Rng& rng, std::size_t len, double fraction);

/// Default band fraction for the synthetic tasks; keeps the signal inside
/// the frequency span a few hundred states can represent.
inline constexpr double kDefaultBandFraction = 0.0625;

struct WindowRmse {
  double t_begin = 0.0;
  double t_end = 0.0;
  double rmse = 0.0;
};

struct ReconstructionResult {
  Signal truth;           // the reconstructed span of the input
  Signal reconstruction;  // same length as truth
  std::vector<WindowRmse> per_window_rmse;  // deciles, newest first
  std::size_t state_size = 0;
  Method method = Method::LegS;
  double input_std = 0.0;
};

/// Runs the recurrence to at_step, then rebuilds the input history from the
/// state via u(t-a) ~ sum_n x_n p_n(a). Windowed methods reconstruct only
/// their window. ZOH is used for the recurrence: the bilinear map warps the
/// oscillator frequencies enough to decohere the high basis functions over
/// long runs (measured: FouT window error at chance level under bilinear,
/// an order of magnitude better under ZOH).
ReconstructionResult reconstruct_history(const StateSystem& sys, const Signal& input,
                                         std::size_t at_step,
                                         DiscMethod disc = DiscMethod::ZOH);

struct DelayResult {
  Vec kernel;
  std::size_t lag_target = 0;
  std::size_t argmax_index = 0;
  double mass_at_target = 0.0;  // fraction of sum |K| within +-2 samples
  double rmse_vs_lagged = 0.0;
  double rmse_chance = 0.0;  // same readout scored against a mismatched lag
};

/// Builds the raw delay system, discretizes, and scores the spike kernel:
/// argmax, mass near the lag 1/dt, and RMSE of kernel-filtered noise
/// against the exactly lagged signal. ZOH by default for the same reason
/// as reconstruct_history (the spike lives near or above the bilinear
/// warp's usable band at N ~ 1000).
DelayResult delay_experiment(Method method, std::size_t n, double dt, std::size_t len,
                             std::uint64_t seed,
                             double band_fraction = kDefaultBandFraction,
                             DiscMethod disc = DiscMethod::ZOH);

struct NormalizationResult {
  Vec norm_trajectory;  // ||x_k||^2 per step
  double limit = 0.0;
};

/// Drives constant input c and tracks ||x||^2, which for a probability
/// measure converges to c^2.
NormalizationResult normalization_experiment(const StateSystem& sys, double c, double dt,
                                             std::size_t steps,
                                             DiscMethod disc = DiscMethod::Bilinear);

struct BoundCheck {
  double lipschitz_l = 0.0;
  double epsilon = 0.0;
  std::size_t n_required = 0;
  double measured_error = 0.0;
};

/// State size from N >= (L/(pi^k eps))^(2/(2k-1)) + 2, then projects a
/// random kernel with k-th derivative bounded by L onto the first N
/// truncated Fourier functions and measures the L2 error.
BoundCheck fout_bound_check(double lipschitz_l, double epsilon, std::size_t derivative_order,
                            std::uint64_t seed);

enum class SweepTask { DelayLag, ReconstructionWindow };

struct SweepRow {
  double dt = 0.0;
  double metric = 0.0;  // RMSE of the task at this step size
};

/// Runs the chosen task once per step size. The delay task uses the
/// normalized (halved) matrices with the readout C_n = p_n(lag dt), the
/// closed-form recall of the input at the target age; the age fits in the
/// window only for dt <= 2/lag, so the score is best near dt = 2/lag and
/// collapses to chance for coarser steps. Grid points run in parallel,
/// capped by HIPPO_LAB_THREADS.
std::vector<SweepRow> timescale_sweep(Method method, std::size_t n, const Vec& dts,
                                      SweepTask task, std::uint64_t seed,
                                      std::size_t lag = 1000);

/// Thread cap from HIPPO_LAB_THREADS (default: hardware concurrency).
std::size_t thread_budget();

}  // namespace hippolab
