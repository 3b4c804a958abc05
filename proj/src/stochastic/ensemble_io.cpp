#include "susylab/stochastic/ensemble_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>

namespace susylab::stochastic {

static_assert(std::endian::native == std::endian::little, "binary format assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'S', 'U', 'S', 'Y', 'E', 'N', 'S', '1'};

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw Error(ErrorKind::IoError, "truncated ensemble header");
  return v;
}

}  // namespace

void write_ensemble(const std::string& path, const TrajectoryEnsemble& ens) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path);
  out.write(kMagic, sizeof kMagic);
  char tag[16] = {};
  std::memcpy(tag, ens.config_hash.data(), std::min<std::size_t>(16, ens.config_hash.size()));
  out.write(tag, sizeof tag);
  put<std::uint64_t>(out, ens.dim);
  put<std::uint64_t>(out, ens.n_traj);
  put<std::uint64_t>(out, ens.n_snap);
  put<std::uint64_t>(out, ens.stride);
  put<std::uint64_t>(out, ens.seed);
  put<double>(out, ens.dt);
  put<double>(out, ens.t_end);
  out.write(reinterpret_cast<const char*>(ens.data.data()),
            static_cast<std::streamsize>(ens.data.size() * sizeof(double)));
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

TrajectoryEnsemble read_ensemble(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw Error(ErrorKind::IoError, "not an ensemble file: " + path);
  TrajectoryEnsemble ens;
  char tag[16];
  in.read(tag, sizeof tag);
  if (!in) throw Error(ErrorKind::IoError, "truncated ensemble header");
  ens.config_hash.assign(tag, strnlen(tag, sizeof tag));
  ens.dim = static_cast<int>(get<std::uint64_t>(in));
  ens.n_traj = static_cast<int>(get<std::uint64_t>(in));
  ens.n_snap = static_cast<int>(get<std::uint64_t>(in));
  ens.stride = static_cast<int>(get<std::uint64_t>(in));
  ens.seed = get<std::uint64_t>(in);
  ens.dt = get<double>(in);
  ens.t_end = get<double>(in);
  ens.data.resize(static_cast<std::size_t>(ens.dim) * ens.n_traj * ens.n_snap);
  in.read(reinterpret_cast<char*>(ens.data.data()),
          static_cast<std::streamsize>(ens.data.size() * sizeof(double)));
  if (!in) throw Error(ErrorKind::IoError, "truncated ensemble data in " + path);
  return ens;
}

std::string ensemble_sidecar(const TrajectoryEnsemble& ens, const std::string& binary_name,
                             const std::string& config_hash) {
  nlohmann::ordered_json j;
  j["config_hash"] = config_hash;
  j["binary"] = binary_name;
  j["format"] = "magic SUSYENS1; char[16] config hash; uint64 dim,n_traj,n_snap,stride,seed; float64 dt,t_end; "
                "float64 data[n_traj][n_snap][dim], little-endian";
  j["model_id"] = ens.model_id;
  j["dim"] = ens.dim;
  j["n_traj"] = ens.n_traj;
  j["n_snap"] = ens.n_snap;
  j["stride"] = ens.stride;
  j["seed"] = ens.seed;
  j["dt"] = ens.dt;
  j["t_end"] = ens.t_end;
  return j.dump(2);
}

}  // namespace susylab::stochastic
