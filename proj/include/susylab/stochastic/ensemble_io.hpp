#pragma once

#include "susylab/stochastic/sde.hpp"

#include <string>

namespace susylab::stochastic {

/// Flat little-endian binary: 8-byte magic, 16-byte config hash (zero
/// padded), then uint64 dim, n_traj, n_snap,
/// stride, seed, then float64 dt, t_end, then the snapshot data.
void write_ensemble(const std::string& path, const TrajectoryEnsemble& ens);
TrajectoryEnsemble read_ensemble(const std::string& path);

/// JSON description of the binary layout and run parameters.
std::string ensemble_sidecar(const TrajectoryEnsemble& ens, const std::string& binary_name,
                             const std::string& config_hash);

}  // namespace susylab::stochastic
