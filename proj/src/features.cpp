#include "fakedet/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <unordered_map>

#include <json.hpp>

#include "fakedet/errors.hpp"

namespace fakedet {

KeywordConfig KeywordConfig::defaults() {
  return {{"contest", "repost", "mention"},
          {"follow", "like", "follow for follow"}};
}

KeywordConfig KeywordConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string() + " for reading");
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": malformed JSON: " + e.what());
  }
  auto read_list = [&](const char* key) {
    if (!obj.contains(key) || !obj[key].is_array()) {
      throw DataError(path.string() + ": expected array field '" + key + "'");
    }
    std::vector<std::string> phrases;
    for (const auto& p : obj[key]) {
      if (!p.is_string()) throw DataError(path.string() + ": '" + key + "' entries must be strings");
      std::string phrase = p.get<std::string>();
      std::transform(phrase.begin(), phrase.end(), phrase.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      if (phrase.empty()) throw DataError(path.string() + ": '" + key + "' entries must be non-empty");
      phrases.push_back(std::move(phrase));
    }
    return phrases;
  };
  KeywordConfig cfg;
  cfg.promotional = read_list("promotional");
  cfg.follower_hunter = read_list("follower_hunter");
  return cfg;
}

std::string normalize_hashtag(std::string_view tag) {
  std::string out;
  out.reserve(tag.size());
  for (unsigned char c : tag) {
    if (c == '#' || c == '-' || c == '_' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::vector<std::string> tokenize_caption(std::string_view caption) {
  // Lowercased ASCII alphanumerics; bytes >= 0x80 stay inside tokens so
  // multi-byte characters are not split apart.
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : caption) {
    if (std::isalnum(c) || c >= 0x80) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::pair<double, double> engagement_rates(const std::vector<PostRecord>& posts,
                                           std::int64_t followers) {
  if (posts.empty() || followers <= 0) return {0.0, 0.0};
  std::int64_t likes = 0, comments = 0;
  for (const PostRecord& p : posts) {
    likes += p.likes;
    comments += p.comments;
  }
  const double denom =
      static_cast<double>(posts.size()) * static_cast<double>(followers);
  return {static_cast<double>(likes) / denom,
          static_cast<double>(comments) / denom};
}

double keyword_rate(const std::vector<PostRecord>& posts,
                    const std::vector<std::string>& phrases) {
  if (posts.empty()) return 0.0;
  std::vector<std::string> normalized;
  normalized.reserve(phrases.size());
  for (const std::string& p : phrases) normalized.push_back(normalize_hashtag(p));
  std::int64_t matches = 0;
  for (const PostRecord& post : posts) {
    for (const std::string& tag : post.hashtags) {
      const std::string norm = normalize_hashtag(tag);
      for (const std::string& phrase : normalized) {
        if (!phrase.empty() && norm.find(phrase) != std::string::npos) {
          ++matches;
          break;  // a hashtag counts once even if several phrases hit
        }
      }
    }
  }
  return static_cast<double>(matches) / static_cast<double>(posts.size());
}

namespace {

std::string_view trim_ascii(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

std::pair<double, double> caption_stats(const std::vector<PostRecord>& posts) {
  if (posts.empty()) return {0.0, 0.0};
  double total_chars = 0;
  std::int64_t near_empty = 0;
  for (const PostRecord& p : posts) {
    total_chars += static_cast<double>(utf8_length(p.caption));
    // "near-empty" means at most 2 characters after trimming whitespace
    if (utf8_length(trim_ascii(p.caption)) <= 2) ++near_empty;
  }
  const double n = static_cast<double>(posts.size());
  return {total_chars / n, static_cast<double>(near_empty) / n};
}

namespace {

// Term-frequency vector as (token id, count) pairs sorted by id, plus
// the Euclidean norm; lets the pair loop run as a linear merge.
struct TfVector {
  std::vector<std::pair<int, int>> counts;
  double norm = 0.0;
};

TfVector build_tf(const std::vector<std::string>& tokens,
                  std::unordered_map<std::string, int>& vocabulary) {
  std::map<int, int> counter;
  for (const std::string& tok : tokens) {
    auto [it, _] = vocabulary.try_emplace(tok, static_cast<int>(vocabulary.size()));
    ++counter[it->second];
  }
  TfVector tf;
  tf.counts.assign(counter.begin(), counter.end());
  double sq = 0.0;
  for (const auto& [id, c] : tf.counts) sq += static_cast<double>(c) * c;
  tf.norm = std::sqrt(sq);
  return tf;
}

double cosine(const TfVector& a, const TfVector& b) {
  if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
  double dot = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.counts.size() && j < b.counts.size()) {
    if (a.counts[i].first < b.counts[j].first) {
      ++i;
    } else if (a.counts[i].first > b.counts[j].first) {
      ++j;
    } else {
      dot += static_cast<double>(a.counts[i].second) * b.counts[j].second;
      ++i;
      ++j;
    }
  }
  return dot / (a.norm * b.norm);
}

}  // namespace

double pairwise_cosine(const std::vector<PostRecord>& posts) {
  const std::size_t n = posts.size();
  if (n < 2) return 0.0;
  std::unordered_map<std::string, int> vocabulary;
  std::vector<TfVector> tf;
  tf.reserve(n);
  for (const PostRecord& p : posts) {
    tf.push_back(build_tf(tokenize_caption(p.caption), vocabulary));
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      total += cosine(tf[i], tf[j]);
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return total / pairs;
}

double mean_interval_hours(const std::vector<PostRecord>& posts) {
  if (posts.size() < 2) return 0.0;
  // Consecutive differences telescope to (last - first).
  const std::int64_t span = posts.back().posted_at - posts.front().posted_at;
  return static_cast<double>(span) /
         (static_cast<double>(posts.size() - 1) * 3600.0);
}

FeatureVector extract_features(const AccountRecord& account,
                               const KeywordConfig& keywords) {
  FeatureVector v;
  v.pos = static_cast<double>(account.posts.size());
  v.flw = static_cast<double>(account.followers);
  v.flg = static_cast<double>(account.following);
  v.bl = static_cast<double>(utf8_length(account.biography));
  v.pic = account.has_profile_picture ? 1.0 : 0.0;
  v.lin = account.has_external_link ? 1.0 : 0.0;
  const std::vector<PostRecord>& posts = account.posts;
  if (posts.empty()) return v;

  std::tie(v.cl, v.cz) = caption_stats(posts);
  std::tie(v.erl, v.erc) = engagement_rates(posts, account.followers);

  const double n = static_cast<double>(posts.size());
  std::int64_t no_image = 0, tagged = 0, hashtags = 0;
  for (const PostRecord& p : posts) {
    if (!p.has_image) ++no_image;
    if (p.location_tagged) ++tagged;
    hashtags += static_cast<std::int64_t>(p.hashtags.size());
  }
  v.ni = static_cast<double>(no_image) / n;
  v.lt = static_cast<double>(tagged) / n;
  v.hc = static_cast<double>(hashtags) / n;
  v.pr = keyword_rate(posts, keywords.promotional);
  v.fo = keyword_rate(posts, keywords.follower_hunter);
  v.cs = pairwise_cosine(posts);
  v.pi = mean_interval_hours(posts);
  return v;
}

}  // namespace fakedet
