#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gmc/cli.hpp"
#include "gmc/errors.hpp"

namespace gmc::cli {

namespace {

constexpr std::array<std::pair<Suite, std::string_view>, 10> kSuiteNames{{
    {Suite::VerifyMoments, "verify-moments"},
    {Suite::VerifyDensity, "verify-density"},
    {Suite::VerifyShift, "verify-shift"},
    {Suite::VerifyBpz, "verify-bpz"},
    {Suite::VerifyCorollary, "verify-corollary"},
    {Suite::VerifyConjecture, "verify-conjecture"},
    {Suite::Critical, "critical"},
    {Suite::MaxGff, "max-gff"},
    {Suite::Rmt, "rmt"},
    {Suite::Tail, "tail"},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string canonical_key(std::string_view key) {
  std::string k(trim(key));
  for (char& c : k) {
    if (c == '-') c = '_';
  }
  if (k == "output_path" || k == "output") k = "out";
  return k;
}

double parse_double(std::string_view field, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(std::string(field) + ": '" + std::string(text) +
                      "' is not a finite number");
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view field, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(field) + ": '" + std::string(text) +
                      "' is not a non-negative integer");
  }
  return v;
}

std::vector<double> parse_list(std::string_view field, std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? text.size() - start
                                                                         : comma - start);
    out.push_back(parse_double(field, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

bool moment_suite(Suite s) {
  return s == Suite::VerifyMoments || s == Suite::VerifyDensity ||
         s == Suite::VerifyShift || s == Suite::VerifyCorollary ||
         s == Suite::VerifyConjecture;
}

}  // namespace

void set_field(RunConfig& config, std::string_view key, std::string_view value) {
  const std::string k = canonical_key(key);
  if (k == "gamma") {
    config.gamma = parse_list("gamma", value);
  } else if (k == "p") {
    config.p = parse_list("p", value);
  } else if (k == "t") {
    config.t = parse_list("t", value);
  } else if (k == "n_modes") {
    config.n_modes = parse_unsigned("n_modes", value);
  } else if (k == "m_points") {
    config.m_points = parse_unsigned("m_points", value);
  } else if (k == "replicas") {
    config.replicas = parse_unsigned("replicas", value);
  } else if (k == "seed") {
    config.seed = parse_unsigned("seed", value);
  } else if (k == "workers") {
    const auto w = parse_unsigned("workers", value);
    if (w > 4096) throw ConfigError("workers: at most 4096");
    config.workers = static_cast<unsigned>(w);
  } else if (k == "out") {
    config.output_path = std::string(trim(value));
  } else if (k == "format") {
    const auto v = trim(value);
    if (v == "csv") {
      config.format = Format::Csv;
    } else if (v == "json") {
      config.format = Format::Json;
    } else {
      throw ConfigError("format: '" + std::string(v) + "' is not one of csv, json");
    }
  } else {
    throw ConfigError("unknown configuration key '" + std::string(trim(key)) + "'");
  }
}

RunConfig parse_config_text(std::string_view text) {
  RunConfig config;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line =
        text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": expected key=value");
      }
      try {
        set_field(config, line.substr(0, eq), line.substr(eq + 1));
      } catch (const ConfigError& e) {
        throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::optional<Suite> suite_from_name(std::string_view name) {
  for (const auto& [suite, n] : kSuiteNames) {
    if (n == name) return suite;
  }
  return std::nullopt;
}

std::string_view suite_name(Suite suite) {
  for (const auto& [s, n] : kSuiteNames) {
    if (s == suite) return n;
  }
  return "unknown";
}

std::vector<Suite> all_suites() {
  std::vector<Suite> out;
  for (const auto& entry : kSuiteNames) out.push_back(entry.first);
  return out;
}

void validate(const RunConfig& config, Suite suite) {
  if (config.gamma && config.gamma->empty()) throw ConfigError("gamma: list is empty");
  if (config.p && config.p->empty()) throw ConfigError("p: list is empty");
  if (config.t && config.t->empty()) throw ConfigError("t: list is empty");

  const std::vector<double> gammas = config.gamma.value_or(std::vector<double>{1.0});
  for (double g : gammas) {
    if (suite == Suite::Rmt) continue;  // gamma is read as alpha there
    if (!(g > 0.0 && g < 2.0)) throw ConfigError("gamma: " + fmt(g) + " outside (0, 2)");
  }
  if (config.n_modes < 1) throw ConfigError("n_modes: must be >= 1");
  if (config.replicas < 1) throw ConfigError("replicas: must be >= 1");
  if (config.m_points < 4 * config.n_modes) {
    throw ConfigError("m_points: " + std::to_string(config.m_points) +
                      " is below 4 * n_modes = " + std::to_string(4 * config.n_modes));
  }
  if (config.t) {
    for (double t : *config.t) {
      if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("t: " + fmt(t) + " outside [0, 1]");
    }
  }
  if (config.p) {
    for (double g : gammas) {
      for (double p : *config.p) {
        if (moment_suite(suite) && !(p < 4.0 / (g * g))) {
          throw ConfigError("p: " + fmt(p) + " is not below 4/gamma^2 for gamma = " + fmt(g));
        }
      }
    }
  }
  switch (suite) {
    case Suite::VerifyShift:
      if (config.p) {
        for (double p : *config.p) {
          if (!(p <= 0.0)) throw ConfigError("p: shift suite requires p <= 0, got " + fmt(p));
        }
      }
      break;
    case Suite::VerifyBpz:
      if (config.p) {
        for (double p : *config.p) {
          if (!(p < 0.0)) throw ConfigError("p: bpz suite requires p < 0, got " + fmt(p));
        }
      }
      for (double g : gammas) {
        if (std::abs(g * g - 2.0) < 1e-12) {
          throw ConfigError("gamma: sqrt(2) is a pole of the connection formulas");
        }
      }
      if (config.t) {
        for (double t : *config.t) {
          if (!(t < 1.0)) throw ConfigError("t: bpz suite requires t < 1");
        }
      }
      break;
    case Suite::VerifyMoments:
    case Suite::VerifyDensity:
    case Suite::VerifyCorollary:
    case Suite::VerifyConjecture:
      if (config.n_modes < 16) throw ConfigError("n_modes: ladder needs n_modes >= 16");
      break;
    case Suite::Critical:
      if (config.n_modes < 16) throw ConfigError("n_modes: ladder needs n_modes >= 16");
      if (config.replicas < 2) throw ConfigError("replicas: critical suite needs >= 2");
      break;
    case Suite::MaxGff:
      if (config.n_modes < 3) throw ConfigError("n_modes: max statistic needs n_modes >= 3");
      if (config.m_points < 8 * config.n_modes) {
        throw ConfigError("m_points: max statistic needs m_points >= 8 * n_modes");
      }
      if (config.replicas < 50) throw ConfigError("replicas: KS test needs >= 50");
      break;
    case Suite::Rmt:
      if (config.n_modes < 32) throw ConfigError("n_modes: rmt ladder needs n_modes >= 32");
      if (config.m_points < 8 * config.n_modes) {
        throw ConfigError("m_points: rmt suite needs m_points >= 8 * n_modes");
      }
      if (config.replicas < 50) throw ConfigError("replicas: rmt suite needs >= 50");
      for (double a : gammas) {
        for (double p : config.p.value_or(std::vector<double>{2.0})) {
          if (a != 0.0 && !(p < 4.0 / (a * a))) {
            throw ConfigError("p: " + fmt(p) + " is not below 4/alpha^2 for alpha = " + fmt(a));
          }
        }
      }
      break;
    case Suite::Tail:
      break;
  }
}

std::uint64_t resolve_seed(const RunConfig& config) {
  if (config.seed) return *config.seed;
  if (const char* env = std::getenv("GMC_CIRCLE_SEED"); env != nullptr && *env != '\0') {
    return parse_unsigned("GMC_CIRCLE_SEED", env);
  }
  return kDefaultSeed;
}

}  // namespace gmc::cli
