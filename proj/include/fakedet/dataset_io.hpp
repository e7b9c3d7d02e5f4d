#pragma once

#include <filesystem>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fakedet/types.hpp"

namespace fakedet {

// One JSON object per line; see README for the schema. Validates every
// record and rejects duplicate account ids. Errors carry the line number.
std::vector<AccountRecord> load_accounts_jsonl(const std::filesystem::path& path);

// Parses and validates a single account object from a JSON string.
AccountRecord parse_account_json(const std::string& json_text);
void write_accounts_jsonl(const std::vector<AccountRecord>& accounts,
                          const std::filesystem::path& path);

// Feature CSV with the exact header
//   account_id,pos,flw,flg,bl,pic,lin,cl,cz,ni,erl,erc,lt,hc,pr,fo,cs,pi,label
// Floats are written with 6 decimal places.
std::vector<LabeledExample> load_feature_csv(const std::filesystem::path& path);
void write_feature_csv(const std::vector<LabeledExample>& examples,
                       const std::filesystem::path& path);

// Sidecar label file: header "account_id,label".
std::unordered_map<std::string, UserClass> load_labels_csv(
    const std::filesystem::path& path);
void write_labels_csv(
    const std::vector<std::pair<std::string, UserClass>>& labels,
    const std::filesystem::path& path);

}  // namespace fakedet
