#include "fakedet/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fakedet/errors.hpp"

namespace fakedet {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail_line(const std::filesystem::path& path, std::size_t line,
                            const std::string& msg) {
  throw DataError(path.string() + ", line " + std::to_string(line) + ": " + msg);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  return out;
}

const ordered_json& require_field(const ordered_json& obj, const char* key,
                                  const std::filesystem::path& path,
                                  std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) fail_line(path, line, std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t as_count(const ordered_json& v, const char* key,
                      const std::filesystem::path& path, std::size_t line) {
  if (!v.is_number_integer()) {
    fail_line(path, line, std::string("field '") + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

std::string as_string(const ordered_json& v, const char* key,
                      const std::filesystem::path& path, std::size_t line) {
  if (!v.is_string()) {
    fail_line(path, line, std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

bool as_bool(const ordered_json& v, const char* key,
             const std::filesystem::path& path, std::size_t line) {
  if (!v.is_boolean()) {
    fail_line(path, line, std::string("field '") + key + "' must be a boolean");
  }
  return v.get<bool>();
}

void reject_unknown_keys(const ordered_json& obj,
                         std::initializer_list<const char*> allowed,
                         const std::filesystem::path& path, std::size_t line) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (key == k) { known = true; break; }
    }
    if (!known) fail_line(path, line, "unknown field '" + key + "'");
  }
}

PostRecord parse_post(const ordered_json& obj, const std::filesystem::path& path,
                      std::size_t line) {
  if (!obj.is_object()) fail_line(path, line, "post entry must be an object");
  reject_unknown_keys(obj,
                      {"caption", "hashtags", "likes", "comments", "has_image",
                       "location_tagged", "posted_at"},
                      path, line);
  PostRecord post;
  post.caption = as_string(require_field(obj, "caption", path, line), "caption", path, line);
  const ordered_json& tags = require_field(obj, "hashtags", path, line);
  if (!tags.is_array()) fail_line(path, line, "field 'hashtags' must be an array");
  for (const auto& t : tags) {
    post.hashtags.push_back(as_string(t, "hashtags", path, line));
  }
  post.likes = as_count(require_field(obj, "likes", path, line), "likes", path, line);
  post.comments = as_count(require_field(obj, "comments", path, line), "comments", path, line);
  post.has_image = as_bool(require_field(obj, "has_image", path, line), "has_image", path, line);
  post.location_tagged = as_bool(require_field(obj, "location_tagged", path, line),
                                 "location_tagged", path, line);
  post.posted_at = as_count(require_field(obj, "posted_at", path, line), "posted_at", path, line);
  return post;
}

AccountRecord parse_account(const ordered_json& obj, const std::filesystem::path& path,
                            std::size_t line) {
  if (!obj.is_object()) fail_line(path, line, "each line must be a JSON object");
  reject_unknown_keys(obj,
                      {"account_id", "followers", "following", "biography",
                       "has_profile_picture", "has_external_link", "posts"},
                      path, line);
  AccountRecord acc;
  acc.account_id = as_string(require_field(obj, "account_id", path, line), "account_id", path, line);
  acc.followers = as_count(require_field(obj, "followers", path, line), "followers", path, line);
  acc.following = as_count(require_field(obj, "following", path, line), "following", path, line);
  acc.biography = as_string(require_field(obj, "biography", path, line), "biography", path, line);
  acc.has_profile_picture = as_bool(require_field(obj, "has_profile_picture", path, line),
                                    "has_profile_picture", path, line);
  acc.has_external_link = as_bool(require_field(obj, "has_external_link", path, line),
                                  "has_external_link", path, line);
  const ordered_json& posts = require_field(obj, "posts", path, line);
  if (!posts.is_array()) fail_line(path, line, "field 'posts' must be an array");
  for (const auto& p : posts) acc.posts.push_back(parse_post(p, path, line));
  return acc;
}

}  // namespace

AccountRecord parse_account_json(const std::string& json_text) {
  const std::filesystem::path where = "<string>";
  ordered_json obj;
  try {
    obj = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("malformed JSON: ") + e.what());
  }
  AccountRecord acc = parse_account(obj, where, 1);
  validate_account(acc);
  return acc;
}

std::vector<AccountRecord> load_accounts_jsonl(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<AccountRecord> accounts;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json obj;
    try {
      obj = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail_line(path, line_no, std::string("malformed JSON: ") + e.what());
    }
    AccountRecord acc = parse_account(obj, path, line_no);
    try {
      validate_account(acc);
    } catch (const DataError& e) {
      fail_line(path, line_no, e.what());
    }
    if (!seen_ids.insert(acc.account_id).second) {
      fail_line(path, line_no, "duplicate account_id '" + acc.account_id + "'");
    }
    accounts.push_back(std::move(acc));
  }
  return accounts;
}

void write_accounts_jsonl(const std::vector<AccountRecord>& accounts,
                          const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  for (const AccountRecord& acc : accounts) {
    ordered_json obj;
    obj["account_id"] = acc.account_id;
    obj["followers"] = acc.followers;
    obj["following"] = acc.following;
    obj["biography"] = acc.biography;
    obj["has_profile_picture"] = acc.has_profile_picture;
    obj["has_external_link"] = acc.has_external_link;
    ordered_json posts = ordered_json::array();
    for (const PostRecord& post : acc.posts) {
      ordered_json p;
      p["caption"] = post.caption;
      p["hashtags"] = post.hashtags;
      p["likes"] = post.likes;
      p["comments"] = post.comments;
      p["has_image"] = post.has_image;
      p["location_tagged"] = post.location_tagged;
      p["posted_at"] = post.posted_at;
      posts.push_back(std::move(p));
    }
    obj["posts"] = std::move(posts);
    out << obj.dump() << '\n';
  }
  if (!out) throw DataError("write failed for " + path.string());
}

namespace {

constexpr const char* kFeatureCsvHeader =
    "account_id,pos,flw,flg,bl,pic,lin,cl,cz,ni,erl,erc,lt,hc,pr,fo,cs,pi,label";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

void check_feature_header(const std::string& header,
                          const std::filesystem::path& path) {
  if (header == kFeatureCsvHeader) return;
  const std::vector<std::string> expected = split_csv_line(kFeatureCsvHeader);
  const std::vector<std::string> actual = split_csv_line(header);
  std::string missing, extra;
  for (const std::string& col : expected) {
    if (std::find(actual.begin(), actual.end(), col) == actual.end()) {
      missing += missing.empty() ? col : "," + col;
    }
  }
  for (const std::string& col : actual) {
    if (std::find(expected.begin(), expected.end(), col) == expected.end()) {
      extra += extra.empty() ? col : "," + col;
    }
  }
  std::string msg = "header mismatch";
  if (!missing.empty()) msg += "; missing columns: " + missing;
  if (!extra.empty()) msg += "; unexpected columns: " + extra;
  if (missing.empty() && extra.empty()) msg += "; columns out of order";
  fail_line(path, 1, msg);
}

double parse_cell(const std::string& cell, std::string_view column,
                  const std::filesystem::path& path, std::size_t line) {
  double value = 0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    fail_line(path, line, "column '" + std::string(column) +
                              "': non-numeric value '" + cell + "'");
  }
  return value;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::vector<LabeledExample> load_feature_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty file, expected header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  check_feature_header(line, path);

  std::vector<LabeledExample> examples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != FeatureVector::kCount + 2) {
      fail_line(path, line_no, "expected " + std::to_string(FeatureVector::kCount + 2) +
                                   " cells, got " + std::to_string(cells.size()));
    }
    LabeledExample ex;
    ex.account_id = cells[0];
    std::array<double, FeatureVector::kCount> values{};
    for (std::size_t i = 0; i < FeatureVector::kCount; ++i) {
      values[i] = parse_cell(cells[i + 1], kFeatureNames[i], path, line_no);
    }
    ex.features = FeatureVector::from_array(values);
    auto label = parse_class_token(cells.back());
    if (!label) fail_line(path, line_no, "unknown label '" + cells.back() + "'");
    ex.label = *label;
    examples.push_back(std::move(ex));
  }
  return examples;
}

void write_feature_csv(const std::vector<LabeledExample>& examples,
                       const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  out << kFeatureCsvHeader << '\n';
  for (const LabeledExample& ex : examples) {
    if (ex.account_id.find_first_of(",\n\r") != std::string::npos) {
      throw DataError("account_id '" + ex.account_id + "' contains CSV delimiters");
    }
    out << ex.account_id;
    for (double v : ex.features.to_array()) out << ',' << format_double(v);
    out << ',' << class_token(ex.label) << '\n';
  }
  if (!out) throw DataError("write failed for " + path.string());
}

std::unordered_map<std::string, UserClass> load_labels_csv(
    const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty file, expected header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "account_id,label") {
    fail_line(path, 1, "expected header 'account_id,label', got '" + line + "'");
  }
  std::unordered_map<std::string, UserClass> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != 2) fail_line(path, line_no, "expected 2 cells");
    auto label = parse_class_token(cells[1]);
    if (!label) fail_line(path, line_no, "unknown label '" + cells[1] + "'");
    if (!labels.emplace(cells[0], *label).second) {
      fail_line(path, line_no, "duplicate account_id '" + cells[0] + "'");
    }
  }
  return labels;
}

void write_labels_csv(
    const std::vector<std::pair<std::string, UserClass>>& labels,
    const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  out << "account_id,label\n";
  for (const auto& [id, label] : labels) {
    out << id << ',' << class_token(label) << '\n';
  }
  if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace fakedet
