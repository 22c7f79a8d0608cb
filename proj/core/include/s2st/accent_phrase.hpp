#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "s2st/accent.hpp"
#include "s2st/event.hpp"

namespace s2st {

/// Rule-based phrase boundaries: a boundary falls before any token in
/// `before` and after any token in `after`. `accent` optionally gives the
/// accent type of a phrase that starts with the token.
struct BoundaryRules {
  std::set<std::string> before;
  std::set<std::string> after;
  std::unordered_map<std::string, int> accent;
  bool split_every_token = false;

  bool boundary_between(const std::string& prev, const std::string& next) const {
    return split_every_token || before.contains(next) || after.contains(prev);
  }
  int accent_for(const std::vector<std::string>& surface) const;

  /// Every token is its own phrase.
  static BoundaryRules every_token() {
    BoundaryRules r;
    r.split_every_token = true;
    return r;
  }
};

/// Lexicon lines: `pre <token>`, `post <token>`, `accent <token> <type>` or
/// `split_every_token`.
/// Blank lines and '#' comments are skipped. Throws MalformedInputError.
BoundaryRules parse_boundary_rules(const std::string& text);
BoundaryRules load_boundary_rules(const std::string& path);

/// Hold-one phrase buffer: a phrase is released only once the first token of
/// the next phrase has been seen, or at end of segment.
class AccentPhraser {
 public:
  explicit AccentPhraser(const BoundaryRules& rules) : rules_(&rules) {}

  /// Returns the completed previous phrase if `token` starts a new one.
  std::optional<AccentPhrase> push(const std::string& token);
  /// End of segment: releases the buffered phrase, if any.
  std::optional<AccentPhrase> flush();

  std::size_t buffered_tokens() const noexcept { return buffer_.size(); }

 private:
  AccentPhrase take();

  const BoundaryRules* rules_;
  std::vector<std::string> buffer_;
};

struct PhraseEvent {
  AccentPhrase phrase;
  Millis emit_ms = 0;
  Provenance provenance;
};

/// Runs the hold-one phraser over a token event stream. Phrase p is stamped
/// with the arrival time of phrase p + 1's first token; a segment's last
/// phrase with its EndSeq. Markers other than EndSeq are transparent.
std::vector<PhraseEvent> accent_phrase_stage(std::span<const TimedEvent> tokens,
                                             const BoundaryRules& rules);

}  // namespace s2st
