#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sarc {

// One labeled comment. label 1 = sarcastic. pair_id groups the two halves of
// a balanced pair; empty = unpaired.
struct CommentRecord {
  std::string id;
  std::string text;
  std::string author;
  std::string subreddit;
  int label = 0;
  std::string pair_id;
};

// JSONL: {"id": str, "text": str, "author": str, "subreddit": str,
// "label": 0|1, "pair_id": str?}, one object per line, blank lines skipped.
// Errors name the offending line.
std::vector<CommentRecord> load_jsonl(std::istream& in);
std::vector<CommentRecord> load_jsonl_file(const std::string& path);
void save_jsonl(std::span<const CommentRecord> records, std::ostream& out);
void save_jsonl_file(std::span<const CommentRecord> records,
                     const std::string& path);

// Per-author sarcastic / non-sarcastic counts from the training split.
// Absent authors look up as (0,0).
class AuthorStatsTable {
 public:
  struct Counts {
    uint32_t sarcastic = 0;
    uint32_t not_sarcastic = 0;
    uint32_t total() const { return sarcastic + not_sarcastic; }
  };

  static AuthorStatsTable from_records(std::span<const CommentRecord> train);

  Counts lookup(const std::string& author) const;
  size_t size() const { return counts_.size(); }
  // Sum of all counts; equals the size of the split the table was built from.
  size_t total_comments() const { return total_; }
  void set(const std::string& author, Counts c);
  void for_each_sorted(
      const std::function<void(const std::string&, Counts)>& fn) const;

 private:
  std::unordered_map<std::string, Counts> counts_;
  size_t total_ = 0;
};

// Uniformly random partition with |holdout| = round(fraction * N).
// Records sharing a pair_id always land on the same side; both outputs keep
// the input's relative order. fraction must be in (0, 0.5).
std::pair<std::vector<CommentRecord>, std::vector<CommentRecord>>
split_holdout(std::span<const CommentRecord> records, double fraction,
              uint64_t seed);

struct CorpusStats {
  size_t count = 0;
  double percent_sarcastic = 0.0;
};

CorpusStats corpus_stats(std::span<const CommentRecord> records);

}  // namespace sarc
