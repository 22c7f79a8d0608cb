#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace s2st {

/// A mora sequence carrying one pitch-accent pattern: the synthesis unit.
class AccentPhrase {
 public:
  /// Throws std::invalid_argument if `moras` is empty or accent_type exceeds
  /// the mora count.
  AccentPhrase(std::vector<std::string> moras, int accent_type, std::vector<std::string> surface);

  const std::vector<std::string>& moras() const noexcept { return moras_; }
  int n_moras() const noexcept { return static_cast<int>(moras_.size()); }
  /// Mora after which the pitch falls, 1-based; 0 is flat.
  int accent_type() const noexcept { return accent_type_; }
  const std::vector<std::string>& surface() const noexcept { return surface_; }
  /// Surface tokens joined by single spaces.
  std::string text() const;

  friend bool operator==(const AccentPhrase&, const AccentPhrase&) = default;

 private:
  std::vector<std::string> moras_;
  int accent_type_;
  std::vector<std::string> surface_;
};

/// Mora used for a phrase with no pronounceable material (punctuation only).
inline constexpr std::string_view kPauseMora = "pau";

/// Splits romanized Japanese into moras: an onset cluster plus vowel ("kyu",
/// "shi"), a bare vowel, a moraic "n" (not followed by a vowel or y), and a
/// geminate "q" for a doubled consonant. Each non-ASCII code point counts as
/// one mora. Other ASCII characters are skipped.
std::vector<std::string> split_moras(std::string_view text);

/// Builds a phrase from surface tokens; falls back to a single pause mora,
/// and to a flat accent when `accent_type` does not fit.
AccentPhrase make_accent_phrase(std::vector<std::string> surface, int accent_type);

enum class Pitch : char { Low = 'L', High = 'H' };

struct MoraFeature {
  std::string mora;
  int position = 1;  // 1-based
  int n_moras = 1;
  int accent_type = 0;
  Pitch pitch = Pitch::Low;

  friend bool operator==(const MoraFeature&, const MoraFeature&) = default;
};

/// One record per mora with the Tokyo-dialect pitch pattern: type 1 is high
/// on the first mora only; flat (0) is low then high from mora 2; type n >= 2
/// is low, high on moras 2..n, then low.
std::vector<MoraFeature> extract_features(const AccentPhrase& phrase);

std::string pitch_pattern(const std::vector<MoraFeature>& features);  // e.g. "LHH"

}  // namespace s2st
