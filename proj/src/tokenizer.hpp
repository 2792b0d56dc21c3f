#pragma once

#include <string>
#include <vector>

namespace sarc {

// Whitespace splitting, punctuation separation, and contraction-suffix
// splitting. Case-preserving; every non-whitespace character of the input
// survives in some token.
//
// Contraction suffixes: n't 're 've 'll 's 'd 'm (matched case-insensitively,
// longest first, repeatedly: "shouldn't've" -> should n't 've). The
// apostrophe is not treated as separating punctuation so suffixes stay
// attached to their tick.
std::vector<std::string> tokenize(const std::string& text);

}  // namespace sarc
