#include "hzlab/config.hpp"

#include <fstream>
#include <sstream>

#include "hzlab/errors.hpp"

namespace hzlab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "Config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      require(s.back() == ']', "Config: unterminated section at line " + std::to_string(lineno));
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    require(eq != std::string::npos, "Config: expected key = value at line " + std::to_string(lineno));
    cfg.sections_[section][trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::string Config::get_str(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  require(it != sections_.end() && it->second.count(key) > 0,
          "Config: missing key [" + section + "] " + key);
  return it->second.at(key);
}

double Config::get_num(const std::string& section, const std::string& key) const {
  const std::string v = get_str(section, key);
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ContractViolation("Config: [" + section + "] " + key + " is not a number: " + v);
  }
  require(pos == v.size(), "Config: [" + section + "] " + key + " has trailing junk: " + v);
  return x;
}

long Config::get_int(const std::string& section, const std::string& key) const {
  const double x = get_num(section, key);
  const long i = static_cast<long>(x);
  require(static_cast<double>(i) == x, "Config: [" + section + "] " + key + " is not an integer");
  return i;
}

std::string Config::get_str(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
  return has(section, key) ? get_str(section, key) : fallback;
}

double Config::get_num(const std::string& section, const std::string& key, double fallback) const {
  return has(section, key) ? get_num(section, key) : fallback;
}

long Config::get_int(const std::string& section, const std::string& key, long fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key) const {
  const std::string v = get_str(section, key);
  std::vector<double> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const std::string t = trim(tok);
    require(!t.empty(), "Config: empty list element in [" + section + "] " + key);
    out.push_back(std::stod(t));
  }
  require(!out.empty(), "Config: empty list [" + section + "] " + key);
  return out;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  sections_[section][key] = value;
}

std::mt19937_64 sub_rng(std::uint64_t seed, const std::string& label) {
  // FNV-1a over the label folded into a splitmix64 pass of the seed
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull + h;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  return std::mt19937_64(z);
}

}  // namespace hzlab
