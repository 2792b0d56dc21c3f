#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tensor.hpp"

namespace sarc {

// Pretrained word vectors plus one shared random UNK vector. Immutable after
// construction; safe for concurrent reads.
//
// Lookup policy: exact-case match, then lowercased fallback, then UNK.
class WordVectorTable {
 public:
  WordVectorTable(size_t dim, uint64_t unk_seed);

  // Text format: header "<count> <dim>", then one "<token> <v1> ... <vdim>"
  // row per line, UTF-8, single spaces. Duplicate tokens: last row wins.
  static WordVectorTable load(std::istream& in, uint64_t unk_seed);
  static WordVectorTable load_file(const std::string& path, uint64_t unk_seed);
  // Seeded random vectors for a synthetic vocabulary (tokens are sorted
  // internally so the draw order does not depend on the caller).
  static WordVectorTable random(std::vector<std::string> tokens, size_t dim,
                                uint64_t seed);

  size_t dim() const { return dim_; }
  size_t size() const { return vectors_.size(); }
  uint64_t unk_seed() const { return unk_seed_; }
  const std::vector<double>& unk_vector() const { return unk_; }

  const std::vector<double>& lookup(const std::string& token) const;
  bool contains(const std::string& token) const;
  void insert(const std::string& token, std::vector<double> vec);

  // Sorted iteration, for serialization.
  void for_each_sorted(
      const std::function<void(const std::string&, const std::vector<double>&)>&
          fn) const;

  static constexpr double kUnkRange = 0.1;

 private:
  size_t dim_;
  uint64_t unk_seed_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
  std::vector<double> unk_;
};

// Rows of looked-up vectors for each token of tokenize(text), in order.
Tensor encode_comment(const std::string& text, const WordVectorTable& table);

// Pointer form used by the trainer to avoid copying vectors per epoch; the
// table must outlive the result.
std::vector<const std::vector<double>*> encode_tokens(
    std::span<const std::string> tokens, const WordVectorTable& table);

}  // namespace sarc
