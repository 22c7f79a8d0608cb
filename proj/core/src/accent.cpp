#include "s2st/accent.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace s2st {
namespace {

bool is_vowel(char c) { return c == 'a' || c == 'i' || c == 'u' || c == 'e' || c == 'o'; }
bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

std::size_t utf8_length(unsigned char lead) {
  if (lead >= 0xF0) return 4;
  if (lead >= 0xE0) return 3;
  if (lead >= 0xC0) return 2;
  return 1;
}

}  // namespace

AccentPhrase::AccentPhrase(std::vector<std::string> moras, int accent_type,
                           std::vector<std::string> surface)
    : moras_(std::move(moras)), accent_type_(accent_type), surface_(std::move(surface)) {
  if (moras_.empty()) throw std::invalid_argument("accent phrase needs at least one mora");
  if (accent_type_ < 0 || accent_type_ > n_moras()) {
    throw std::invalid_argument("accent type out of range");
  }
}

std::string AccentPhrase::text() const {
  std::string out;
  for (const auto& s : surface_) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

std::vector<std::string> split_moras(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto byte = static_cast<unsigned char>(text[i]);
    if (byte >= 0x80) {
      const std::size_t len = std::min(utf8_length(byte), n - i);
      out.emplace_back(text.substr(i, len));
      i += len;
      continue;
    }
    if (!is_ascii_alpha(text[i])) {
      ++i;
      continue;
    }
    const char c = lower(text[i]);
    const char next = i + 1 < n ? lower(text[i + 1]) : '\0';
    if (is_vowel(c)) {
      out.emplace_back(1, c);
      ++i;
    } else if (c == 'n' && !is_vowel(next) && next != 'y') {
      out.emplace_back("n");
      ++i;
    } else if (next == c) {
      out.emplace_back("q");
      ++i;
    } else {
      std::size_t j = i;
      std::string mora;
      while (j < n && is_ascii_alpha(text[j]) && !is_vowel(lower(text[j]))) mora += lower(text[j++]);
      if (j < n && is_vowel(lower(text[j]))) mora += lower(text[j++]);
      out.push_back(std::move(mora));
      i = j;
    }
  }
  return out;
}

AccentPhrase make_accent_phrase(std::vector<std::string> surface, int accent_type) {
  std::vector<std::string> moras;
  for (const auto& s : surface) {
    auto m = split_moras(s);
    moras.insert(moras.end(), std::make_move_iterator(m.begin()), std::make_move_iterator(m.end()));
  }
  if (moras.empty()) moras.emplace_back(kPauseMora);
  if (accent_type < 0 || accent_type > static_cast<int>(moras.size())) accent_type = 0;
  return AccentPhrase(std::move(moras), accent_type, std::move(surface));
}

std::vector<MoraFeature> extract_features(const AccentPhrase& phrase) {
  std::vector<MoraFeature> out;
  const int n = phrase.n_moras();
  const int a = phrase.accent_type();
  out.reserve(static_cast<std::size_t>(n));
  for (int p = 1; p <= n; ++p) {
    bool high = false;
    if (a == 0) {
      high = p >= 2;
    } else if (a == 1) {
      high = p == 1;
    } else {
      high = p >= 2 && p <= a;
    }
    out.push_back(MoraFeature{phrase.moras()[static_cast<std::size_t>(p - 1)], p, n, a,
                              high ? Pitch::High : Pitch::Low});
  }
  return out;
}

std::string pitch_pattern(const std::vector<MoraFeature>& features) {
  std::string s;
  for (const auto& f : features) s += static_cast<char>(f.pitch);
  return s;
}

}  // namespace s2st
