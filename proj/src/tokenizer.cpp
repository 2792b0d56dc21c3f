#include "tokenizer.hpp"

#include <array>
#include <cctype>

#include "errors.hpp"

namespace sarc {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Separating punctuation: ASCII punctuation except the apostrophe, which
// stays attached so contraction suffixes survive intact.
bool is_separator(char c) {
  return c != '\'' && std::ispunct(static_cast<unsigned char>(c)) != 0;
}

char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool ends_with_nocase(const std::string& s, const char* suffix, size_t len) {
  if (s.size() < len) return false;
  for (size_t i = 0; i < len; ++i) {
    if (lower(s[s.size() - len + i]) != suffix[i]) return false;
  }
  return true;
}

// Longest suffixes first so n't wins over 't-style accidents.
constexpr std::array<const char*, 7> kContractionSuffixes = {
    "n't", "'re", "'ve", "'ll", "'s", "'d", "'m"};

void split_contractions(std::string word, std::vector<std::string>& out) {
  std::vector<std::string> tail;
  bool matched = true;
  while (matched && !word.empty()) {
    matched = false;
    for (const char* suffix : kContractionSuffixes) {
      size_t len = std::char_traits<char>::length(suffix);
      if (word.size() > len && ends_with_nocase(word, suffix, len)) {
        tail.push_back(word.substr(word.size() - len));
        word.resize(word.size() - len);
        matched = true;
        break;
      }
    }
  }
  if (!word.empty()) out.push_back(std::move(word));
  for (size_t i = tail.size(); i-- > 0;) out.push_back(std::move(tail[i]));
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string run;
  auto flush = [&] {
    if (!run.empty()) {
      split_contractions(std::move(run), tokens);
      run.clear();
    }
  };
  for (char c : text) {
    if (is_space(c)) {
      flush();
    } else if (is_separator(c)) {
      flush();
      tokens.emplace_back(1, c);
    } else {
      run.push_back(c);
    }
  }
  flush();
  if (tokens.empty()) {
    raise(ErrorCode::kEmptyInput, "comment is empty after trimming");
  }
  return tokens;
}

}  // namespace sarc
