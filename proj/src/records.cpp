#include "records.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <unordered_set>

#include <json.hpp>

#include "errors.hpp"
#include "rng.hpp"

namespace sarc {

using nlohmann::json;

namespace {

std::string get_string_field(const json& obj, const char* key, size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    raise(ErrorCode::kParse, "line ", line, ": missing field '", key, "'");
  }
  if (!it->is_string()) {
    raise(ErrorCode::kParse, "line ", line, ": field '", key,
          "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

std::vector<CommentRecord> load_jsonl(std::istream& in) {
  std::vector<CommentRecord> records;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      raise(ErrorCode::kParse, "line ", line_no, ": ", e.what());
    }
    if (!obj.is_object()) {
      raise(ErrorCode::kParse, "line ", line_no, ": expected a JSON object");
    }
    CommentRecord rec;
    rec.id = get_string_field(obj, "id", line_no);
    rec.text = get_string_field(obj, "text", line_no);
    rec.author = get_string_field(obj, "author", line_no);
    rec.subreddit = get_string_field(obj, "subreddit", line_no);
    auto label_it = obj.find("label");
    if (label_it == obj.end()) {
      raise(ErrorCode::kParse, "line ", line_no, ": missing field 'label'");
    }
    if (!label_it->is_number_integer() ||
        (label_it->get<int64_t>() != 0 && label_it->get<int64_t>() != 1)) {
      raise(ErrorCode::kParse, "line ", line_no,
            ": label must be 0 or 1, got ", label_it->dump());
    }
    rec.label = static_cast<int>(label_it->get<int64_t>());
    if (auto it = obj.find("pair_id"); it != obj.end() && !it->is_null()) {
      if (!it->is_string()) {
        raise(ErrorCode::kParse, "line ", line_no,
              ": field 'pair_id' must be a string");
      }
      rec.pair_id = it->get<std::string>();
    }
    if (rec.text.empty()) {
      raise(ErrorCode::kParse, "line ", line_no, ": empty text for id '",
            rec.id, "'");
    }
    if (!seen_ids.insert(rec.id).second) {
      raise(ErrorCode::kParse, "line ", line_no, ": duplicate id '", rec.id,
            "'");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<CommentRecord> load_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    raise(ErrorCode::kIo, "cannot open data file: ", path);
  }
  return load_jsonl(in);
}

void save_jsonl(std::span<const CommentRecord> records, std::ostream& out) {
  for (const CommentRecord& rec : records) {
    json obj{{"id", rec.id},
             {"text", rec.text},
             {"author", rec.author},
             {"subreddit", rec.subreddit},
             {"label", rec.label}};
    if (!rec.pair_id.empty()) obj["pair_id"] = rec.pair_id;
    out << obj.dump() << '\n';
  }
}

void save_jsonl_file(std::span<const CommentRecord> records,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    raise(ErrorCode::kIo, "cannot write data file: ", path);
  }
  save_jsonl(records, out);
}

AuthorStatsTable AuthorStatsTable::from_records(
    std::span<const CommentRecord> train) {
  AuthorStatsTable table;
  for (const CommentRecord& rec : train) {
    Counts& c = table.counts_[rec.author];
    if (rec.label == 1) {
      c.sarcastic += 1;
    } else {
      c.not_sarcastic += 1;
    }
    table.total_ += 1;
  }
  return table;
}

AuthorStatsTable::Counts AuthorStatsTable::lookup(
    const std::string& author) const {
  auto it = counts_.find(author);
  return it == counts_.end() ? Counts{} : it->second;
}

void AuthorStatsTable::set(const std::string& author, Counts c) {
  auto [it, inserted] = counts_.try_emplace(author, c);
  if (!inserted) {
    total_ -= it->second.total();
    it->second = c;
  }
  total_ += c.total();
}

void AuthorStatsTable::for_each_sorted(
    const std::function<void(const std::string&, Counts)>& fn) const {
  std::map<std::string, Counts> sorted(counts_.begin(), counts_.end());
  for (const auto& [author, counts] : sorted) fn(author, counts);
}

std::pair<std::vector<CommentRecord>, std::vector<CommentRecord>>
split_holdout(std::span<const CommentRecord> records, double fraction,
              uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 0.5)) {
    raise(ErrorCode::kConfig, "holdout fraction must be in (0, 0.5), got ",
          fraction);
  }
  size_t target = static_cast<size_t>(
      std::llround(fraction * static_cast<double>(records.size())));

  // Group indices by pair_id; unpaired records are singleton groups.
  std::vector<std::vector<size_t>> groups;
  std::unordered_map<std::string, size_t> pair_group;
  for (size_t i = 0; i < records.size(); ++i) {
    if (records[i].pair_id.empty()) {
      groups.push_back({i});
      continue;
    }
    auto [it, inserted] =
        pair_group.try_emplace(records[i].pair_id, groups.size());
    if (inserted) {
      groups.push_back({i});
    } else {
      groups[it->second].push_back(i);
    }
  }

  std::vector<size_t> order(groups.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);

  std::vector<bool> in_holdout(records.size(), false);
  size_t holdout_count = 0;
  for (size_t gi : order) {
    if (holdout_count >= target) break;
    for (size_t idx : groups[gi]) {
      in_holdout[idx] = true;
      ++holdout_count;
    }
  }

  std::pair<std::vector<CommentRecord>, std::vector<CommentRecord>> out;
  for (size_t i = 0; i < records.size(); ++i) {
    (in_holdout[i] ? out.second : out.first).push_back(records[i]);
  }
  return out;
}

CorpusStats corpus_stats(std::span<const CommentRecord> records) {
  if (records.empty()) {
    raise(ErrorCode::kEmptyInput, "corpus_stats: no records");
  }
  size_t sarcastic = 0;
  for (const CommentRecord& rec : records) {
    if (rec.label == 1) ++sarcastic;
  }
  CorpusStats stats;
  stats.count = records.size();
  stats.percent_sarcastic =
      100.0 * static_cast<double>(sarcastic) / static_cast<double>(records.size());
  return stats;
}

}  // namespace sarc
