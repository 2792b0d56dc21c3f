#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "tokenizer.hpp"
#include "wordvec.hpp"

using namespace sarc;

namespace {

std::string strip_whitespace(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += t;
  return out;
}

}  // namespace

TEST_CASE("tokenize golden cases") {
  CHECK(tokenize("Great idea!") ==
        std::vector<std::string>{"Great", "idea", "!"});
  CHECK(tokenize("doesn't") == std::vector<std::string>{"does", "n't"});
  CHECK(tokenize("lol woops!") == std::vector<std::string>{"lol", "woops", "!"});
}

TEST_CASE("tokenize splits punctuation and stacked contractions") {
  CHECK(tokenize("great,idea") == std::vector<std::string>{"great", ",", "idea"});
  CHECK(tokenize("?!?") == std::vector<std::string>{"?", "!", "?"});
  CHECK(tokenize("shouldn't've") ==
        std::vector<std::string>{"should", "n't", "'ve"});
  CHECK(tokenize("It's Bob's") ==
        std::vector<std::string>{"It", "'s", "Bob", "'s"});
  CHECK(tokenize("I'm, you're") ==
        std::vector<std::string>{"I", "'m", ",", "you", "'re"});
  // Case-insensitive suffix match, case-preserving output.
  CHECK(tokenize("DOESN'T") == std::vector<std::string>{"DOES", "N'T"});
  // A bare suffix is not split further.
  CHECK(tokenize("n't") == std::vector<std::string>{"n't"});
}

TEST_CASE("tokenize rejects empty and whitespace-only text") {
  CHECK_THROWS_AS(tokenize(""), Error);
  CHECK_THROWS_AS(tokenize("   \t\n "), Error);
}

TEST_CASE("tokenize loses no non-whitespace characters") {
  Rng rng(404);
  const std::string pool = "abZ'!,.?x- 9\t";
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    size_t len = 1 + rng.below(30);
    for (size_t i = 0; i < len; ++i) text.push_back(pool[rng.below(pool.size())]);
    std::string expected = strip_whitespace(text);
    if (expected.empty()) {
      CHECK_THROWS_AS(tokenize(text), Error);
    } else {
      CHECK(join(tokenize(text)) == expected);
    }
  }
}

TEST_CASE("load parses the header and rows") {
  std::istringstream in("2 3\nthe 0.1 0.2 0.3\ncat 1 2 3\n");
  WordVectorTable t = WordVectorTable::load(in, 7);
  CHECK(t.size() == 2);
  CHECK(t.dim() == 3);
  CHECK(t.lookup("cat") == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("load reports arity and numeric errors with line numbers") {
  std::istringstream short_row("2 3\nthe 0.1 0.2 0.3\ncat 1 2\n");
  try {
    WordVectorTable::load(short_row, 7);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  std::istringstream bad_num("1 2\ndog 0.5 oops\n");
  CHECK_THROWS_AS(WordVectorTable::load(bad_num, 7), Error);

  std::istringstream long_row("1 2\ndog 0.5 0.5 0.5\n");
  CHECK_THROWS_AS(WordVectorTable::load(long_row, 7), Error);

  std::istringstream no_header("");
  CHECK_THROWS_AS(WordVectorTable::load(no_header, 7), Error);
}

TEST_CASE("duplicate tokens: last occurrence wins") {
  std::istringstream in("3 2\na 1 1\nb 2 2\na 9 9\n");
  WordVectorTable t = WordVectorTable::load(in, 7);
  CHECK(t.size() == 2);
  CHECK(t.lookup("a") == std::vector<double>{9.0, 9.0});
}

TEST_CASE("lookup falls back to lowercase, then to a fixed UNK vector") {
  std::istringstream in("1 2\nthe 0.5 0.6\n");
  WordVectorTable t = WordVectorTable::load(in, 99);
  CHECK(t.lookup("The") == std::vector<double>{0.5, 0.6});

  const auto& unk1 = t.lookup("zzyzx");
  const auto& unk2 = t.lookup("qwertyuiop");
  CHECK(unk1 == unk2);
  CHECK(unk1 == t.unk_vector());
  for (double v : unk1) {
    CHECK(v >= -WordVectorTable::kUnkRange);
    CHECK(v <= WordVectorTable::kUnkRange);
  }

  // Same seed, same UNK vector; different seed, different draw.
  std::istringstream in2("1 2\nthe 0.5 0.6\n");
  WordVectorTable t_same = WordVectorTable::load(in2, 99);
  CHECK(t_same.unk_vector() == t.unk_vector());
  std::istringstream in3("1 2\nthe 0.5 0.6\n");
  WordVectorTable t_diff = WordVectorTable::load(in3, 100);
  CHECK(t_diff.unk_vector() != t.unk_vector());
}

TEST_CASE("encode_comment stacks looked-up rows in token order") {
  std::istringstream in("3 2\nGreat 1 2\nidea 3 4\n! 5 6\n");
  WordVectorTable t = WordVectorTable::load(in, 7);

  Tensor m = encode_comment("Great idea!", t);
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 2);
  // Composition of tokenize + lookup by hand.
  CHECK(m.at(0, 0) == 1.0);
  CHECK(m.at(0, 1) == 2.0);
  CHECK(m.at(1, 0) == 3.0);
  CHECK(m.at(1, 1) == 4.0);
  CHECK(m.at(2, 0) == 5.0);
  CHECK(m.at(2, 1) == 6.0);

  Tensor all_unk = encode_comment("zzz yyy", t);
  REQUIRE(all_unk.rows() == 2);
  for (size_t r = 0; r < 2; ++r) {
    for (size_t c = 0; c < 2; ++c) {
      CHECK(all_unk.at(r, c) == t.unk_vector()[c]);
    }
  }

  CHECK_THROWS_AS(encode_comment("  ", t), Error);
}

TEST_CASE("encode row count always equals token count") {
  WordVectorTable t = WordVectorTable::random({"a", "b", "c"}, 4, 5);
  Rng rng(8);
  const std::string pool = "ab c'!x";
  for (int trial = 0; trial < 100; ++trial) {
    std::string text;
    for (size_t i = 0; i < 1 + rng.below(20); ++i) {
      text.push_back(pool[rng.below(pool.size())]);
    }
    std::vector<std::string> tokens;
    try {
      tokens = tokenize(text);
    } catch (const Error&) {
      continue;
    }
    CHECK(encode_comment(text, t).rows() == tokens.size());
  }
}

TEST_CASE("random tables are caller-order independent") {
  WordVectorTable a = WordVectorTable::random({"x", "y", "z"}, 3, 42);
  WordVectorTable b = WordVectorTable::random({"z", "x", "y"}, 3, 42);
  CHECK(a.lookup("x") == b.lookup("x"));
  CHECK(a.lookup("z") == b.lookup("z"));
  CHECK(a.unk_vector() == b.unk_vector());
}
