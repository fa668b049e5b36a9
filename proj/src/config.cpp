#include "prtrust/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "prtrust/errors.hpp"

namespace prtrust {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
  throw ConfigError("config key '" + std::string(key) + "': expected " + expected + ", got '" +
                    std::string(value) + "'");
}

double to_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out)) {
    bad_value(key, value, "a number");
  }
  return out;
}

std::uint64_t to_u64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    bad_value(key, value, "a non-negative integer");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, "true or false");
}

}  // namespace

void AnalysisConfig::validate() const {
  if (!std::isfinite(metrics.f_cap) || metrics.f_cap <= 0.0) {
    throw ConfigError("f_cap must be a positive number");
  }
  if (metrics.competence_window < 1) throw ConfigError("competence_window must be at least 1");
  weights.validate();
  sample.validate();
}

void set_config_value(AnalysisConfig& config, std::string_view key, std::string_view value,
                      const std::filesystem::path& base_dir) {
  if (key == "f_cap") {
    config.metrics.f_cap = to_double(key, value);
  } else if (key == "competence_window") {
    config.metrics.competence_window = static_cast<std::size_t>(to_u64(key, value));
  } else if (key == "accept_ratio") {
    config.sample.accept_ratio = to_double(key, value);
  } else if (key == "per_repo_n") {
    config.sample.per_repo_n = to_u64(key, value);
  } else if (key == "seed") {
    config.sample.seed = to_u64(key, value);
  } else if (key == "exclude_bots") {
    config.metrics.exclude_bots = to_bool(key, value);
  } else if (key == "lexicon_path") {
    std::filesystem::path p{std::string(value)};
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    config.metrics.lexicon = VouchLexicon::load(p);
    config.lexicon_path = p.string();
  } else if (key.starts_with("weights.")) {
    Dimension d;
    try {
      d = parse_dimension(key.substr(8));
    } catch (const ParseError&) {
      throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
    config.weights[d] = to_double(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(AnalysisConfig& config, std::string_view text,
                       const std::filesystem::path& base_dir) {
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), base_dir);
  }
}

AnalysisConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  AnalysisConfig config;
  apply_config_text(config, buf.str(), path.parent_path());
  config.validate();
  return config;
}

}  // namespace prtrust
