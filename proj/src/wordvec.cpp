#include "wordvec.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "errors.hpp"
#include "rng.hpp"
#include "tokenizer.hpp"

namespace sarc {

namespace {

std::string to_lower(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  });
}

}  // namespace

WordVectorTable::WordVectorTable(size_t dim, uint64_t unk_seed)
    : dim_(dim), unk_seed_(unk_seed) {
  Rng rng(unk_seed);
  unk_.resize(dim);
  for (double& v : unk_) v = rng.uniform(-kUnkRange, kUnkRange);
}

WordVectorTable WordVectorTable::load(std::istream& in, uint64_t unk_seed) {
  std::string line;
  if (!std::getline(in, line)) {
    raise(ErrorCode::kParse, "word vectors: missing header line");
  }
  std::istringstream header(line);
  size_t count = 0, dim = 0;
  if (!(header >> count >> dim) || dim == 0) {
    raise(ErrorCode::kParse, "word vectors: bad header on line 1: '", line,
          "'");
  }
  WordVectorTable table(dim, unk_seed);
  table.vectors_.reserve(count);

  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::istringstream row(line);
    std::string token;
    row >> token;
    std::vector<double> vec(dim);
    for (size_t i = 0; i < dim; ++i) {
      if (!(row >> vec[i])) {
        raise(ErrorCode::kParse, "word vectors: line ", line_no,
              ": expected ", dim, " numeric components for token '", token,
              "'");
      }
    }
    double extra;
    if (row >> extra) {
      raise(ErrorCode::kParse, "word vectors: line ", line_no, ": row has more than ",
            dim, " components");
    }
    table.vectors_[token] = std::move(vec);
  }
  return table;
}

WordVectorTable WordVectorTable::load_file(const std::string& path,
                                           uint64_t unk_seed) {
  std::ifstream in(path);
  if (!in) {
    raise(ErrorCode::kIo, "cannot open word-vector file: ", path);
  }
  return load(in, unk_seed);
}

WordVectorTable WordVectorTable::random(std::vector<std::string> tokens,
                                        size_t dim, uint64_t seed) {
  WordVectorTable table(dim, seed);
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  Rng rng(derive_seed(seed, 1));
  for (const std::string& tok : tokens) {
    std::vector<double> vec(dim);
    for (double& v : vec) v = rng.uniform(-kUnkRange, kUnkRange);
    table.vectors_[tok] = std::move(vec);
  }
  return table;
}

const std::vector<double>& WordVectorTable::lookup(
    const std::string& token) const {
  auto it = vectors_.find(token);
  if (it != vectors_.end()) return it->second;
  it = vectors_.find(to_lower(token));
  if (it != vectors_.end()) return it->second;
  return unk_;
}

bool WordVectorTable::contains(const std::string& token) const {
  return vectors_.count(token) > 0;
}

void WordVectorTable::insert(const std::string& token,
                             std::vector<double> vec) {
  if (vec.size() != dim_) {
    raise(ErrorCode::kDimension, "word vector for '", token, "' has length ",
          vec.size(), ", table dimension is ", dim_);
  }
  vectors_[token] = std::move(vec);
}

void WordVectorTable::for_each_sorted(
    const std::function<void(const std::string&, const std::vector<double>&)>&
        fn) const {
  std::map<std::string, const std::vector<double>*> sorted;
  for (const auto& [tok, vec] : vectors_) sorted.emplace(tok, &vec);
  for (const auto& [tok, vec] : sorted) fn(tok, *vec);
}

Tensor encode_comment(const std::string& text, const WordVectorTable& table) {
  std::vector<std::string> tokens = tokenize(text);
  Tensor out = Tensor::zeros_matrix(tokens.size(), table.dim());
  for (size_t t = 0; t < tokens.size(); ++t) {
    const std::vector<double>& vec = table.lookup(tokens[t]);
    std::copy(vec.begin(), vec.end(), out.values.begin() + t * table.dim());
  }
  return out;
}

std::vector<const std::vector<double>*> encode_tokens(
    std::span<const std::string> tokens, const WordVectorTable& table) {
  std::vector<const std::vector<double>*> rows;
  rows.reserve(tokens.size());
  for (const std::string& tok : tokens) {
    rows.push_back(&table.lookup(tok));
  }
  return rows;
}

}  // namespace sarc
