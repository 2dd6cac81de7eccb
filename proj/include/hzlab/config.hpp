#ifndef HZLAB_CONFIG_HPP
#define HZLAB_CONFIG_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace hzlab {

/// Sectioned key = value configuration ([section] headers, '#' comments).
class Config {
 public:
  Config() = default;

  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;

  /// Required lookups: throw ContractViolation naming the missing key.
  std::string get_str(const std::string& section, const std::string& key) const;
  double get_num(const std::string& section, const std::string& key) const;
  long get_int(const std::string& section, const std::string& key) const;

  /// Optional lookups with explicit defaults.
  std::string get_str(const std::string& section, const std::string& key,
                      const std::string& fallback) const;
  double get_num(const std::string& section, const std::string& key, double fallback) const;
  long get_int(const std::string& section, const std::string& key, long fallback) const;

  /// Comma-separated list of numbers.
  std::vector<double> get_list(const std::string& section, const std::string& key) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Deterministic sub-stream of a global seed, keyed by a label, so
/// independent generators never share state.
std::mt19937_64 sub_rng(std::uint64_t seed, const std::string& label);

}  // namespace hzlab

#endif
