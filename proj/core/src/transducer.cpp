#include "s2st/transducer.hpp"

#include <fstream>
#include <sstream>

#include "s2st/error.hpp"

namespace s2st {

DictionaryTransducer::DictionaryTransducer(DictionaryTable table, UnmappedPolicy unmapped)
    : unmapped_(unmapped) {
  for (auto& [src, targets] : table) {
    std::vector<Token> tokens;
    tokens.reserve(targets.size());
    for (auto& t : targets) tokens.push_back(Token::regular(std::move(t)));
    table_.emplace(src, std::move(tokens));
  }
}

std::vector<Token> DictionaryTransducer::consume(const Token& input) {
  if (auto it = table_.find(input.text()); it != table_.end()) return it->second;
  if (unmapped_ == UnmappedPolicy::Passthrough) return {input};
  return {};
}

std::vector<Token> DictionaryTransducer::map_offline(const std::vector<Token>& inputs) const {
  std::vector<Token> out;
  for (const Token& in : inputs) {
    if (auto it = table_.find(in.text()); it != table_.end()) {
      out.insert(out.end(), it->second.begin(), it->second.end());
    } else if (unmapped_ == UnmappedPolicy::Passthrough) {
      out.push_back(in);
    }
  }
  return out;
}

std::unique_ptr<Transducer> make_dictionary_transducer(DictionaryTable table,
                                                       UnmappedPolicy unmapped) {
  return std::make_unique<DictionaryTransducer>(std::move(table), unmapped);
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

DictionaryTable parse_dictionary_table(const std::string& text) {
  DictionaryTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw MalformedInputError("dictionary line " + std::to_string(line_no) +
                                ": expected src<TAB>targets");
    }
    std::string src = line.substr(0, tab);
    std::vector<std::string> targets = split_whitespace(std::string_view(line).substr(tab + 1));
    for (const auto& t : targets) {
      if (t == kBeginSeqText || t == kEndBlockText || t == kEndSeqText) {
        throw MalformedInputError("dictionary line " + std::to_string(line_no) +
                                  ": special token in targets");
      }
    }
    if (!table.emplace(src, std::move(targets)).second) {
      throw MalformedInputError("dictionary line " + std::to_string(line_no) +
                                ": duplicate key '" + src + "'");
    }
  }
  return table;
}

DictionaryTable load_dictionary_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dictionary table " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dictionary_table(ss.str());
}

}  // namespace s2st
