#include "s2st/duration.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "s2st/error.hpp"

namespace s2st {

TableDurationModel::TableDurationModel(std::map<std::string, Millis> table,
                                       std::optional<Millis> fallback)
    : table_(std::move(table)), fallback_(fallback) {
  for (auto& [mora, ms] : table_) {
    if (ms <= 0) throw std::invalid_argument("mora duration must be positive: " + mora);
    ms = round_up_to_frame(ms);
  }
  if (fallback_) {
    if (*fallback_ <= 0) throw std::invalid_argument("default mora duration must be positive");
    fallback_ = round_up_to_frame(*fallback_);
  }
}

Millis TableDurationModel::mora_duration(const MoraFeature& mora) const {
  if (auto it = table_.find(mora.mora); it != table_.end()) return it->second;
  if (fallback_) return *fallback_;
  throw UnknownMoraError(mora.mora);
}

TableDurationModel parse_duration_table(const std::string& text) {
  std::map<std::string, Millis> table;
  std::optional<Millis> fallback;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    const std::string where = "duration table line " + std::to_string(line_no);
    if (tab == std::string::npos || tab == 0) throw MalformedInputError(where + ": expected mora<TAB>ms");
    const std::string key = line.substr(0, tab);
    const std::string value = line.substr(tab + 1);
    Millis ms = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), ms);
    if (ec != std::errc{} || ptr != value.data() + value.size() || ms <= 0) {
      throw MalformedInputError(where + ": duration must be a positive integer");
    }
    if (key == "default") {
      fallback = ms;
    } else if (!table.emplace(key, ms).second) {
      throw MalformedInputError(where + ": duplicate mora '" + key + "'");
    }
  }
  return TableDurationModel(std::move(table), fallback);
}

TableDurationModel load_duration_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open duration table " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_duration_table(ss.str());
}

Millis predict_duration(const AccentPhrase& phrase, const DurationModel& model) {
  Millis total = 0;
  for (const MoraFeature& f : extract_features(phrase)) {
    total += round_up_to_frame(model.mora_duration(f));
  }
  return total;
}

}  // namespace s2st
