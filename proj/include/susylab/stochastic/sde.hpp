#pragma once

#include "susylab/potential/scalar_field.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace susylab::stochastic {

/// dX = b(X) dt + sigma dW with a constant diffusion matrix.
struct SdeModel {
  int dim = 0;
  std::function<void(const Vec&, Vec&)> drift;
  /// dim x m.
  Mat sigma;
  double T1 = 0.0;
  double T2 = 0.0;
  std::string family;
  std::string id;

  Vec b(const Vec& x) const;
  /// D = sigma sigma^T / 2.
  Mat diffusion() const { return 0.5 * sigma * sigma.transpose(); }
};

/// dx = -gamma grad V dt + sqrt(2 gamma T) dw.
SdeModel make_overdamped(const potential::ScalarField& V, double gamma, double T);

/// dx = y dt, dy = -gamma y dt - grad V dt + sqrt(2 gamma T) dw.
SdeModel make_kinetic(const potential::ScalarField& V, double gamma, double T);

/// Chain in (x, y, z), blocks of size 2d:
///   dx = y dt, dy = (-grad V(x) + z) dt, dz = gamma (x - z) dt - sqrt(2 gamma T) dw
/// with temperature T1 on the first d noise rows and T2 on the last d.
SdeModel make_chain(const potential::ScalarField& V1, const potential::ScalarField& V2,
                    const potential::ScalarField& Vc, double gamma, double T1, double T2);

/// Counter-based generator: the k-th draw of stream (seed, stream) is
/// splitmix64 applied to a key derived from both and the counter k.
class StreamRng {
 public:
  using result_type = std::uint64_t;
  StreamRng(std::uint64_t seed, std::uint64_t stream);
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type(0); }
  result_type operator()();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

struct EnsembleOptions {
  int n_traj = 1000;
  double t_end = 1.0;
  double dt = 1e-3;
  std::uint64_t seed = 42;
  /// Steps between stored snapshots.
  int stride = 100;
  /// Initial state, shared by every trajectory.
  Vec x0;
  /// Box used to estimate the drift Lipschitz constant for the step check.
  Vec lip_lo;
  Vec lip_hi;
};

struct TrajectoryEnsemble {
  int dim = 0;
  int n_traj = 0;
  int n_snap = 0;
  int stride = 0;
  double dt = 0.0;
  double t_end = 0.0;
  std::uint64_t seed = 0;
  std::string model_id;
  /// Provenance tag written into the binary header (up to 16 chars).
  std::string config_hash;
  /// Trajectory-major, then snapshot, then coordinate.
  std::vector<double> data;

  double snapshot_time(int s) const { return s * stride * dt; }
  const double* at(int traj, int snap) const {
    return data.data() + (static_cast<std::size_t>(traj) * n_snap + snap) * dim;
  }
};

/// Largest Jacobian 2-norm of the drift over random points of [lo, hi].
double estimate_lipschitz(const SdeModel& model, const Vec& lo, const Vec& hi, int samples = 256,
                          std::uint64_t seed = 1);

/// Euler-Maruyama ensemble: X += b(X) dt + sigma sqrt(dt) xi. Snapshots at
/// step 0, stride, 2 stride, ... Raises StepTooLarge when dt exceeds
/// 0.1 / Lip(b) on the given box, and Blowup when a coordinate passes 1e6.
TrajectoryEnsemble simulate_ensemble(const SdeModel& model, const EnsembleOptions& options);

}  // namespace susylab::stochastic
