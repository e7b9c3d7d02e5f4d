#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fakedet {

struct PostRecord {
  std::string caption;
  std::vector<std::string> hashtags;  // stored without leading '#'
  std::int64_t likes = 0;
  std::int64_t comments = 0;
  bool has_image = false;
  bool location_tagged = false;
  std::int64_t posted_at = 0;  // UTC epoch seconds
};

struct AccountRecord {
  std::string account_id;
  std::int64_t followers = 0;
  std::int64_t following = 0;
  std::string biography;
  bool has_profile_picture = false;
  bool has_external_link = false;
  std::vector<PostRecord> posts;  // ascending by posted_at once validated
};

enum class UserClass : int {
  Authentic = 0,
  ActiveFake = 1,
  InactiveFake = 2,
  Spammer = 3,
};

inline constexpr int kNumClasses = 4;

inline constexpr std::array<UserClass, kNumClasses> kAllClasses = {
    UserClass::Authentic, UserClass::ActiveFake, UserClass::InactiveFake,
    UserClass::Spammer};

// Binary view: authentic accounts are real (0), everything else fake (1).
int binary_label(UserClass c);

std::string_view class_token(UserClass c);
std::optional<UserClass> parse_class_token(std::string_view token);

// Label granularity used by classifiers and reports.
enum class Scheme { TwoClass, FourClass };

int num_scheme_classes(Scheme scheme);
int scheme_label(UserClass c, Scheme scheme);
std::string_view scheme_class_token(Scheme scheme, int index);
std::string_view scheme_token(Scheme scheme);  // "2" / "4"

// The 17 per-account features, in the canonical order that drives the
// CSV layout and every model's input vector.
struct FeatureVector {
  double pos = 0;  // total posts
  double flw = 0;  // followers
  double flg = 0;  // accounts followed
  double bl = 0;   // biography length, Unicode scalar characters
  double pic = 0;  // 1 if a profile picture is set
  double lin = 0;  // 1 if an external link is set
  double cl = 0;   // mean caption length
  double cz = 0;   // fraction of near-empty captions
  double ni = 0;   // fraction of posts without an image
  double erl = 0;  // likes / (posts * followers)
  double erc = 0;  // comments / (posts * followers)
  double lt = 0;   // fraction of location-tagged posts
  double hc = 0;   // mean hashtags per post
  double pr = 0;   // mean promotional-keyword hashtags per post
  double fo = 0;   // mean follower-hunter-keyword hashtags per post
  double cs = 0;   // mean pairwise caption cosine similarity
  double pi = 0;   // mean hours between consecutive posts

  static constexpr std::size_t kCount = 17;

  std::array<double, kCount> to_array() const;
  static FeatureVector from_array(const std::array<double, kCount>& a);
};

inline constexpr std::array<std::string_view, FeatureVector::kCount>
    kFeatureNames = {"pos", "flw", "flg", "bl", "pic", "lin", "cl", "cz",
                     "ni",  "erl", "erc", "lt", "hc",  "pr",  "fo", "cs",
                     "pi"};

struct LabeledExample {
  std::string account_id;
  FeatureVector features;
  UserClass label = UserClass::Authentic;
};

// Normalizes and checks one record in place: strips a single leading '#'
// from hashtags, rejects negative counts, whitespace-only hashtags and
// empty ids, and sorts posts by posted_at. Throws DataError.
void validate_account(AccountRecord& account);

// Unicode scalar count of a UTF-8 string (continuation bytes skipped).
std::size_t utf8_length(std::string_view s);

}  // namespace fakedet
