#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fakedet/types.hpp"

namespace fakedet {

// Hashtag keyword lists used for the pr and fo features. Phrases are
// matched as substrings of the normalized hashtag (lowercased, with
// '#', '-', '_' and spaces removed), so "follow for follow" also hits
// tags like "Follow4Follow".
struct KeywordConfig {
  std::vector<std::string> promotional;
  std::vector<std::string> follower_hunter;

  static KeywordConfig defaults();
  // JSON file: {"promotional": [...], "follower_hunter": [...]}.
  // Phrases are lowercased; empty phrases are rejected.
  static KeywordConfig load(const std::filesystem::path& path);
};

// Maps a validated account to its 17 features. Total on valid input;
// an account with zero posts gets 0 for every post-derived feature.
FeatureVector extract_features(const AccountRecord& account,
                               const KeywordConfig& keywords = KeywordConfig::defaults());

// The individual post-derived statistics, exposed for direct testing.
std::pair<double, double> engagement_rates(const std::vector<PostRecord>& posts,
                                           std::int64_t followers);
double keyword_rate(const std::vector<PostRecord>& posts,
                    const std::vector<std::string>& phrases);
std::pair<double, double> caption_stats(const std::vector<PostRecord>& posts);
double pairwise_cosine(const std::vector<PostRecord>& posts);
double mean_interval_hours(const std::vector<PostRecord>& posts);

std::string normalize_hashtag(std::string_view tag);
std::vector<std::string> tokenize_caption(std::string_view caption);

}  // namespace fakedet
