#include "cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "s2st/error.hpp"

namespace s2st::cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::int64_t to_int(const std::string& key, const std::string& v, std::int64_t min) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  }
  if (out < min) throw ConfigError(key, "must be >= " + std::to_string(min));
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || d < 0) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a non-negative number, got '" + v + "'");
  }
}

std::filesystem::path to_file(const std::string& key, const std::string& v,
                              const std::filesystem::path& base) {
  std::filesystem::path p(v);
  if (p.is_relative()) p = base / p;
  if (!std::filesystem::is_regular_file(p)) throw ConfigError(key, "file not found: " + p.string());
  return p;
}

}  // namespace

std::map<std::string, std::string> parse_config_entries(const std::string& text) {
  std::map<std::string, std::string> entries;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected `section.key = value`");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.find('.') == std::string::npos) {
      throw ConfigError(key.empty() ? "line " + std::to_string(line_no) : key,
                        "keys are written section.key");
    }
    if (!entries.emplace(key, value).second) throw ConfigError(key, "set more than once");
  }
  return entries;
}

PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  PipelineConfig cfg;
  cfg.base_dir = base_dir;
  const auto entries = parse_config_entries(text);
  for (const auto& [key, v] : entries) {
    if (key == "pipeline.stages") {
      if (v != "SRC ISR IMT ITTS") {
        throw ConfigError(key, "stage order must be `SRC ISR IMT ITTS`");
      }
    } else if (key == "source.block_frames") {
      cfg.isr.block_frames = to_int(key, v, 1);
    } else if (key == "source.hop_ms") {
      const auto hop = HopMs::parse(v);
      if (!hop || hop->scaled() <= 0) {
        throw ConfigError(key, "expected a positive decimal with at most 4 fractional digits");
      }
      cfg.isr.hop = *hop;
    } else if (key == "source.gap_ms") {
      cfg.gap_ms = to_int(key, v, 0);
    } else if (key == "isr.lookahead_blocks") {
      cfg.isr.lookahead_blocks = to_int(key, v, 0);
    } else if (key == "isr.compute_ms_per_block") {
      cfg.isr.compute_ms_per_block = to_int(key, v, 0);
    } else if (key == "isr.transcript") {
      cfg.transcript = to_file(key, v, base_dir);
    } else if (key == "imt.policy") {
      if (v == "waitk") {
        cfg.imt_policy = TranslatorPolicy::WaitK;
      } else if (v == "passthrough") {
        cfg.imt_policy = TranslatorPolicy::PassThrough;
      } else {
        throw ConfigError(key, "expected waitk or passthrough");
      }
    } else if (key == "imt.k") {
      const auto k = to_int(key, v, 1);
      if (k > 1'000'000) throw ConfigError(key, "unreasonably large");
      cfg.k = static_cast<int>(k);
    } else if (key == "imt.table") {
      cfg.imt_table = to_file(key, v, base_dir);
    } else if (key == "imt.unmapped") {
      if (v == "passthrough") {
        cfg.imt_unmapped = UnmappedPolicy::Passthrough;
      } else if (v == "drop") {
        cfg.imt_unmapped = UnmappedPolicy::Drop;
      } else {
        throw ConfigError(key, "expected passthrough or drop");
      }
    } else if (key == "imt.compute_fixed_ms") {
      cfg.imt_compute.fixed_ms = to_int(key, v, 0);
    } else if (key == "imt.compute_per_token_ms") {
      cfg.imt_compute.per_token_ms = to_int(key, v, 0);
    } else if (key == "itts.rules") {
      cfg.itts_rules = to_file(key, v, base_dir);
    } else if (key == "itts.durations") {
      cfg.itts_durations = to_file(key, v, base_dir);
    } else if (key == "itts.mora_ms") {
      cfg.mora_ms = to_int(key, v, 1);
    } else if (key == "itts.compute_fixed_ms") {
      cfg.itts_compute.fixed_ms = to_int(key, v, 0);
    } else if (key == "itts.compute_per_token_ms") {
      cfg.itts_compute.per_token_ms = to_int(key, v, 0);
    } else if (key == "pipe.speed") {
      cfg.pipe_speed = to_double(key, v);
    } else if (key == "report.block_ms") {
      cfg.chart.block_ms = to_int(key, v, 1);
    } else if (key == "report.col_width") {
      cfg.chart.col_width = static_cast<std::size_t>(to_int(key, v, 1));
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  if (!entries.contains("report.block_ms")) {
    const Millis block = cfg.isr.block_duration_ms();
    if (block <= 0) throw ConfigError("source.hop_ms", "block duration rounds to 0 ms");
    cfg.chart.block_ms = block;
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

}  // namespace s2st::cli
