#include "s2st/accent_phrase.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "s2st/error.hpp"
#include "s2st/transducer.hpp"

namespace s2st {

int BoundaryRules::accent_for(const std::vector<std::string>& surface) const {
  if (surface.empty()) return 0;
  auto it = accent.find(surface.front());
  return it == accent.end() ? 0 : it->second;
}

BoundaryRules parse_boundary_rules(const std::string& text) {
  BoundaryRules rules;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> words = split_whitespace(line);
    if (words.empty() || words.front().front() == '#') continue;
    const std::string where = "lexicon line " + std::to_string(line_no);
    const std::string& kind = words.front();
    if ((kind == "pre" || kind == "post") && words.size() == 2) {
      (kind == "pre" ? rules.before : rules.after).insert(words[1]);
    } else if (kind == "accent" && words.size() == 3) {
      int type = 0;
      const std::string& v = words[2];
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), type);
      if (ec != std::errc{} || ptr != v.data() + v.size() || type < 0) {
        throw MalformedInputError(where + ": accent type must be a non-negative integer");
      }
      rules.accent[words[1]] = type;
    } else if (kind == "split_every_token" && words.size() == 1) {
      rules.split_every_token = true;
    } else {
      throw MalformedInputError(where + ": expected `pre <token>`, `post <token>` or "
                                        "`accent <token> <type>` or `split_every_token`");
    }
  }
  return rules;
}

BoundaryRules load_boundary_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open boundary lexicon " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_boundary_rules(ss.str());
}

AccentPhrase AccentPhraser::take() {
  std::vector<std::string> surface;
  surface.swap(buffer_);
  const int accent = rules_->accent_for(surface);
  return make_accent_phrase(std::move(surface), accent);
}

std::optional<AccentPhrase> AccentPhraser::push(const std::string& token) {
  std::optional<AccentPhrase> done;
  if (!buffer_.empty() && rules_->boundary_between(buffer_.back(), token)) {
    done = take();
  }
  buffer_.push_back(token);
  return done;
}

std::optional<AccentPhrase> AccentPhraser::flush() {
  if (buffer_.empty()) return std::nullopt;
  return take();
}

std::vector<PhraseEvent> accent_phrase_stage(std::span<const TimedEvent> tokens,
                                             const BoundaryRules& rules) {
  std::vector<PhraseEvent> out;
  AccentPhraser phraser(rules);
  Provenance segment;
  bool in_segment = false;
  for (const TimedEvent& ev : tokens) {
    const Token* tok = ev.token();
    if (tok == nullptr) continue;
    if (!in_segment) {
      in_segment = true;
      segment = ev.provenance;
    } else {
      segment.first_input_ms = std::min(segment.first_input_ms, ev.provenance.first_input_ms);
    }
    if (tok->is_regular()) {
      if (auto phrase = phraser.push(tok->text())) {
        out.push_back({std::move(*phrase), ev.emit_ms, segment});
      }
    } else if (tok->kind() == TokenKind::EndSeq) {
      if (auto phrase = phraser.flush()) out.push_back({std::move(*phrase), ev.emit_ms, segment});
      in_segment = false;
    }
  }
  return out;
}

}  // namespace s2st
