#include "susylab/cli/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace susylab::cli {

namespace pt = boost::property_tree;

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::ConfigError, std::string("malformed config: ") + e.what());
  }
  for (const auto& [name, section] : tree) {
    if (section.empty() && !section.data().empty())
      throw Error(ErrorKind::ConfigError, "key '" + name + "' outside any section");
    auto& out = cfg.sections_[name];
    for (const auto& [key, value] : section) out[key] = boost::algorithm::trim_copy(value.data());
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool ExperimentConfig::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::string ExperimentConfig::str(const std::string& section, const std::string& key) const {
  if (!has(section, key)) throw Error(ErrorKind::ConfigError, "missing key [" + section + "] " + key);
  return sections_.at(section).at(key);
}

std::string ExperimentConfig::str(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
  return has(section, key) ? sections_.at(section).at(key) : fallback;
}

namespace {

double to_real(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::ConfigError, where + ": expected a number, got '" + s + "'");
}

long to_integer(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::ConfigError, where + ": expected an integer, got '" + s + "'");
}

std::string where(const std::string& section, const std::string& key) { return "[" + section + "] " + key; }

}  // namespace

double ExperimentConfig::real(const std::string& section, const std::string& key) const {
  return to_real(str(section, key), where(section, key));
}

double ExperimentConfig::real(const std::string& section, const std::string& key, double fallback) const {
  return has(section, key) ? real(section, key) : fallback;
}

long ExperimentConfig::integer(const std::string& section, const std::string& key) const {
  return to_integer(str(section, key), where(section, key));
}

long ExperimentConfig::integer(const std::string& section, const std::string& key, long fallback) const {
  return has(section, key) ? integer(section, key) : fallback;
}

std::uint64_t ExperimentConfig::u64(const std::string& section, const std::string& key,
                                    std::uint64_t fallback) const {
  if (!has(section, key)) return fallback;
  const std::string s = str(section, key);
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used == s.size() && s.find('-') == std::string::npos) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::ConfigError, where(section, key) + ": expected an unsigned integer, got '" + s + "'");
}

bool ExperimentConfig::flag(const std::string& section, const std::string& key, bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string s = boost::algorithm::to_lower_copy(str(section, key));
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw Error(ErrorKind::ConfigError, where(section, key) + ": expected a boolean, got '" + s + "'");
}

std::vector<double> ExperimentConfig::reals(const std::string& section, const std::string& key) const {
  std::vector<std::string> parts;
  const std::string s = str(section, key);
  boost::algorithm::split(parts, s, boost::algorithm::is_any_of(", "), boost::algorithm::token_compress_on);
  std::vector<double> out;
  for (const auto& p : parts)
    if (!p.empty()) out.push_back(to_real(p, where(section, key)));
  if (out.empty()) throw Error(ErrorKind::ConfigError, where(section, key) + ": empty list");
  return out;
}

std::vector<double> ExperimentConfig::reals(const std::string& section, const std::string& key,
                                            const std::vector<double>& fallback) const {
  return has(section, key) ? reals(section, key) : fallback;
}

void ExperimentConfig::set(const std::string& section, const std::string& key, const std::string& value) {
  sections_[section][key] = value;
}

void ExperimentConfig::override_seed(std::uint64_t seed) {
  for (auto& [name, section] : sections_)
    if (section.count("seed")) section["seed"] = std::to_string(seed);
}

std::string ExperimentConfig::canonical() const {
  std::string out;
  for (const auto& [name, section] : sections_)
    for (const auto& [key, value] : section) out += name + "." + key + "=" + value + "\n";
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string ExperimentConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical())));
  return buf;
}

const std::map<std::string, std::vector<std::string>>& schema() {
  static const std::map<std::string, std::vector<std::string>> s{
      {"model", {"family", "potential", "gamma", "v1", "v2", "vc", "temperature", "t1", "t2"}},
      {"analysis", {"lo", "hi", "seeds_per_axis", "newton_tol", "morse_tol", "max_iter", "strict_morse"}},
      {"grid", {"lo", "hi", "n", "spacing_over_h", "kappa", "node_cap"}},
      {"sweep", {"h", "barrier", "index"}},
      {"solver",
       {"h", "k", "tol", "max_iter", "seed", "shift_factor", "disc_radius", "metastable", "left"}},
      {"evolution", {"t_end", "dt", "samples", "startup_steps", "seed", "initial"}},
      {"sde",
       {"model", "n_traj", "dt", "t_end", "seed", "stride", "x0", "burn_in", "bins", "axes", "lo", "hi", "h",
        "radius", "min_transitions", "wells_lo", "wells_hi", "lipschitz_lo", "lipschitz_hi"}},
      {"dyncheck",
       {"lo", "hi", "seeds", "t0", "radii", "directions", "c", "far_samples", "xi_max", "far_exclusion",
        "far_floor", "measure_points", "measure_exclusion", "measure_threshold", "measure_floor",
        "measure_time_samples", "seed", "strict_morse"}},
      {"output", {"dir"}},
  };
  return s;
}

std::vector<std::string> required_sections(const std::string& command) {
  static const std::map<std::string, std::vector<std::string>> req{
      {"analyze-potential", {"model", "analysis"}},
      {"spectrum", {"model", "grid", "solver"}},
      {"splitting", {"model", "grid", "sweep", "solver"}},
      {"evolve", {"model", "grid", "solver", "evolution"}},
      {"sde", {"model", "sde"}},
      {"check-hypotheses", {"model", "dyncheck"}},
  };
  auto it = req.find(command);
  if (it == req.end()) throw Error(ErrorKind::ConfigError, "unknown command '" + command + "'");
  return it->second;
}

void validate(const ExperimentConfig& config, const std::string& command) {
  std::vector<std::string> problems;
  std::vector<std::string> missing;
  for (const auto& s : required_sections(command))
    if (!config.has(s)) missing.push_back(s);
  if (!missing.empty()) problems.push_back("missing sections: " + boost::algorithm::join(missing, ", "));
  for (const auto& [name, section] : config.sections()) {
    auto it = schema().find(name);
    if (it == schema().end()) {
      problems.push_back("unknown section [" + name + "]");
      continue;
    }
    for (const auto& [key, value] : section)
      if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
        problems.push_back("unknown key [" + name + "] " + key);
  }
  if (!problems.empty()) throw Error(ErrorKind::ConfigError, boost::algorithm::join(problems, "; "));
}

}  // namespace susylab::cli
