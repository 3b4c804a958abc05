#pragma once

#include "susylab/common.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace susylab::cli {

/// Sectioned key-value experiment configuration (INI syntax).
class ExperimentConfig {
 public:
  using Section = std::map<std::string, std::string>;

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);

  bool has(const std::string& section) const { return sections_.count(section) > 0; }
  bool has(const std::string& section, const std::string& key) const;
  const std::map<std::string, Section>& sections() const { return sections_; }

  std::string str(const std::string& section, const std::string& key) const;
  std::string str(const std::string& section, const std::string& key, const std::string& fallback) const;
  double real(const std::string& section, const std::string& key) const;
  double real(const std::string& section, const std::string& key, double fallback) const;
  long integer(const std::string& section, const std::string& key) const;
  long integer(const std::string& section, const std::string& key, long fallback) const;
  std::uint64_t u64(const std::string& section, const std::string& key, std::uint64_t fallback) const;
  bool flag(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> reals(const std::string& section, const std::string& key) const;
  std::vector<double> reals(const std::string& section, const std::string& key,
                            const std::vector<double>& fallback) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

  /// Replace every `seed` key present in any section.
  void override_seed(std::uint64_t seed);

  /// Canonical "section.key=value" lines in sorted order.
  std::string canonical() const;
  /// FNV-1a 64 of canonical(), as 16 hex digits.
  std::string hash() const;

 private:
  std::map<std::string, Section> sections_;
};

/// Sections each subcommand needs.
std::vector<std::string> required_sections(const std::string& command);
/// Keys accepted in each section.
const std::map<std::string, std::vector<std::string>>& schema();

/// Schema validation before any computation: missing sections, unknown
/// sections and unknown keys. Raises ConfigError listing every problem.
void validate(const ExperimentConfig& config, const std::string& command);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace susylab::cli
