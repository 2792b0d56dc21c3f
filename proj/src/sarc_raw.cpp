#include "sarc_raw.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace sarc {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

std::vector<std::string> split_ids(const std::string& field) {
  std::vector<std::string> ids;
  std::istringstream in(field);
  std::string id;
  while (in >> id) ids.push_back(id);
  return ids;
}

}  // namespace

std::vector<CommentRecord> load_sarc_raw(const std::string& comments_json_path,
                                         const std::string& pairs_path) {
  std::ifstream cin(comments_json_path);
  if (!cin) {
    raise(ErrorCode::kIo, "cannot open comments file: ", comments_json_path);
  }
  json comments;
  try {
    cin >> comments;
  } catch (const json::exception& e) {
    raise(ErrorCode::kParse, comments_json_path, ": ", e.what());
  }
  if (!comments.is_object()) {
    raise(ErrorCode::kParse, comments_json_path,
          ": expected an object keyed by comment id");
  }

  std::ifstream pin(pairs_path);
  if (!pin) {
    raise(ErrorCode::kIo, "cannot open pairs file: ", pairs_path);
  }

  std::vector<CommentRecord> records;
  std::string line;
  size_t line_no = 0;
  while (std::getline(pin, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> fields = split(line, '|');
    if (fields.size() != 3) {
      raise(ErrorCode::kParse, pairs_path, ": line ", line_no,
            ": expected 3 pipe-delimited fields, got ", fields.size());
    }
    std::vector<std::string> ancestors = split_ids(fields[0]);
    std::vector<std::string> responses = split_ids(fields[1]);
    std::vector<std::string> labels = split_ids(fields[2]);
    if (responses.empty() || responses.size() != labels.size()) {
      raise(ErrorCode::kParse, pairs_path, ": line ", line_no,
            ": response/label count mismatch");
    }
    std::string pair_id;
    if (responses.size() == 2) {
      pair_id = ancestors.empty() ? "line" + std::to_string(line_no)
                                  : ancestors.back();
    }
    for (size_t i = 0; i < responses.size(); ++i) {
      if (labels[i] != "0" && labels[i] != "1") {
        raise(ErrorCode::kParse, pairs_path, ": line ", line_no, ": label '",
              labels[i], "' is not 0 or 1");
      }
      auto it = comments.find(responses[i]);
      if (it == comments.end()) {
        raise(ErrorCode::kParse, pairs_path, ": line ", line_no,
              ": comment id '", responses[i], "' missing from ",
              comments_json_path);
      }
      CommentRecord rec;
      rec.id = responses[i];
      rec.text = it->value("text", std::string());
      rec.author = it->value("author", std::string());
      rec.subreddit = it->value("subreddit", std::string());
      rec.label = labels[i] == "1" ? 1 : 0;
      rec.pair_id = pair_id;
      if (rec.text.empty()) {
        raise(ErrorCode::kParse, pairs_path, ": line ", line_no,
              ": comment '", rec.id, "' has empty text");
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

}  // namespace sarc
