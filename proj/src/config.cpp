#include "symclone/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "symclone/errors.hpp"
#include "symclone/table.hpp"

namespace symclone {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void fail(std::string_view where, std::string_view key, const std::string& msg) {
  std::ostringstream os;
  os << where << ": key '" << key << "': " << msg;
  throw ConfigError(os.str());
}

double to_double(std::string_view where, std::string_view key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
    fail(where, key, "'" + t + "' is not a finite number");
  }
  return v;
}

std::vector<double> to_list(std::string_view where, std::string_view key, const std::string& text) {
  std::vector<double> out;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(where, key, item));
  if (out.empty()) fail(where, key, "empty list");
  return out;
}

bool to_bool(std::string_view where, std::string_view key, const std::string& text) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  fail(where, key, "'" + t + "' is not a boolean");
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
  return s;
}

}  // namespace

std::vector<double> default_t_values() {
  std::vector<double> t;
  for (int n = 0; n <= 5; ++n) t.push_back(std::sqrt(n / 5.0));
  return t;
}

RunConfig::RunConfig() : t_values(default_t_values()) {}

void RunConfig::set(std::string_view key_view, std::string_view value_view, std::string_view where) {
  const std::string key = lower(trim(key_view));
  const std::string value = trim(value_view);
  if (key == "t_values" || key == "t") {
    auto ts = to_list(where, key, value);
    for (double t : ts)
      if (!(t >= 0.0 && t <= 1.0)) fail(where, key, "t = " + format_number(t) + " outside [0, 1]");
    t_values = std::move(ts);
  } else if (key == "eta_a" || key == "eta_b") {
    const double eta = to_double(where, key, value);
    if (!(eta >= EfficiencyPair::kMin && eta <= EfficiencyPair::kMax)) {
      fail(where, key, "efficiency outside [0.2, 5]");
    }
    (key == "eta_a" ? eta_true.eta_a : eta_true.eta_b) = eta;
  } else if (key == "counts") {
    counts_per_setting = to_double(where, key, value);
    if (!(counts_per_setting > 0.0)) fail(where, key, "must be positive");
  } else if (key == "seed") {
    std::uint64_t s = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      fail(where, key, "'" + value + "' is not an unsigned integer");
    }
    seed = s;
  } else if (key == "noiseless") {
    noiseless = to_bool(where, key, value);
  } else if (key == "pooled") {
    pooled = to_bool(where, key, value);
  } else if (key == "strict") {
    strict = to_bool(where, key, value);
  } else if (key == "objective") {
    try {
      objective = parse_objective(value);
    } catch (const ConfigError& e) {
      fail(where, key, e.what());
    }
  } else if (key == "out") {
    output_path = value;
  } else if (key == "format") {
    const std::string f = lower(value);
    if (f == "csv") output_format = OutputFormat::csv;
    else if (f == "json") output_format = OutputFormat::json;
    else fail(where, key, "unknown format '" + value + "' (expected csv or json)");
  } else if (key == "triple") {
    const auto v = to_list(where, key, value);
    if (v.size() != 3) fail(where, key, "expected three values F_A,F_B,P");
    try {
      triple = MachineTriple::make(v[0], v[1], v[2]);
    } catch (const ParameterError& e) {
      fail(where, key, e.what());
    }
  } else if (key == "eps_max") {
    eps_max = to_double(where, key, value);
    if (!(eps_max > 0.0 && eps_max < 1.0)) fail(where, key, "must lie in (0, 1)");
  } else if (key == "eps_steps" || key == "curve_points") {
    const double n = to_double(where, key, value);
    if (n != std::floor(n) || n < 2 || n > 100000) fail(where, key, "must be an integer in [2, 100000]");
    (key == "eps_steps" ? eps_steps : curve_points) = static_cast<int>(n);
  } else {
    fail(where, key, "unknown setting");
  }
}

std::string RunConfig::to_text() const {
  std::ostringstream os;
  os << "t_values = " << join(t_values) << '\n'
     << "eta_a = " << format_number(eta_true.eta_a) << '\n'
     << "eta_b = " << format_number(eta_true.eta_b) << '\n'
     << "counts = " << format_number(counts_per_setting) << '\n'
     << "seed = " << seed << '\n'
     << "noiseless = " << (noiseless ? "true" : "false") << '\n'
     << "objective = " << to_string(objective) << '\n'
     << "pooled = " << (pooled ? "true" : "false") << '\n'
     << "strict = " << (strict ? "true" : "false") << '\n'
     << "format = " << (output_format == OutputFormat::csv ? "csv" : "json") << '\n';
  if (!output_path.empty()) os << "out = " << output_path << '\n';
  if (triple) os << "triple = " << join({triple->fa, triple->fb, triple->p}) << '\n';
  os << "eps_max = " << format_number(eps_max) << '\n'
     << "eps_steps = " << eps_steps << '\n'
     << "curve_points = " << curve_points << '\n';
  return os.str();
}

void load_config_text(std::string_view text, std::string_view source_name, RunConfig& config) {
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const std::string where = std::string(source_name) + ":" + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected 'key = value', got '" + trim(line) + "'");
    }
    config.set(std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1), where);
  }
}

void load_config_file(const std::filesystem::path& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  load_config_text(buf.str(), path.string(), config);
}

}  // namespace symclone
