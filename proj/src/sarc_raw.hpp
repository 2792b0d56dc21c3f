#pragma once

#include <string>
#include <vector>

#include "records.hpp"

namespace sarc {

// Adapter for the raw SARC distribution layout:
//   comments.json  -- {"<id>": {"text": ..., "author": ..., "subreddit": ...}}
//   pairs file     -- one sequence per line, "anc1 anc2|resp1 resp2|1 0"
//                     (ancestor ids | response ids | labels, pipe-delimited,
//                     space-separated within each field)
// Balanced rows (exactly two responses) get a shared pair_id: the last
// ancestor id, or "line<N>" when the ancestor list is empty.
std::vector<CommentRecord> load_sarc_raw(const std::string& comments_json_path,
                                         const std::string& pairs_path);

}  // namespace sarc
