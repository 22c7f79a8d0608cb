#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "s2st/event.hpp"

namespace s2st {

/// Incremental token-to-token model: the plug point for a recognizer or a
/// translator. Outputs must be a deterministic function of the Regular tokens
/// consumed since the last flush.
class Transducer {
 public:
  virtual ~Transducer() = default;

  /// Consumes one Regular token; returns the outputs it makes available now.
  virtual std::vector<Token> consume(const Token& input) = 0;

  /// End of segment: returns any remaining outputs and resets to the state of
  /// a freshly constructed instance.
  virtual std::vector<Token> flush() = 0;
};

class IdentityTransducer final : public Transducer {
 public:
  std::vector<Token> consume(const Token& input) override { return {input}; }
  std::vector<Token> flush() override { return {}; }
};

enum class UnmappedPolicy { Passthrough, Drop };

/// Table of source text -> target token texts.
using DictionaryTable = std::unordered_map<std::string, std::vector<std::string>>;

/// Stateless per-token substitution.
class DictionaryTransducer final : public Transducer {
 public:
  DictionaryTransducer(DictionaryTable table, UnmappedPolicy unmapped);

  std::vector<Token> consume(const Token& input) override;
  std::vector<Token> flush() override { return {}; }

  /// The same mapping applied to a whole token list at once.
  std::vector<Token> map_offline(const std::vector<Token>& inputs) const;

 private:
  std::unordered_map<std::string, std::vector<Token>> table_;
  UnmappedPolicy unmapped_;
};

std::unique_ptr<Transducer> make_dictionary_transducer(DictionaryTable table,
                                                       UnmappedPolicy unmapped);

/// Parses `src<TAB>tgt1 tgt2 ...` lines. Blank lines and lines starting with
/// '#' are skipped. An empty target list maps the source to nothing. Throws
/// MalformedInputError on duplicate keys or bad lines, naming the line.
DictionaryTable parse_dictionary_table(const std::string& text);
DictionaryTable load_dictionary_table(const std::string& path);

/// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string> split_whitespace(std::string_view text);

}  // namespace s2st
