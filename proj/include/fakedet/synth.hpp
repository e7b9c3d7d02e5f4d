#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fakedet/types.hpp"

namespace fakedet {

// Per-class generator parameters. Count-valued fields are drawn from a
// rounded log-normal (median, dispersion = sigma of the underlying
// normal); flags are Bernoulli; per-post keyword counts are Poisson.
struct ClassProfile {
  UserClass cls = UserClass::Authentic;

  double post_count_median = 1;
  double post_count_dispersion = 0.5;
  double followers_median = 1;
  double followers_dispersion = 0.5;
  double following_median = 1;
  double following_dispersion = 0.5;
  double bio_len_median = 1;
  double bio_len_dispersion = 0.5;
  double pic_prob = 1.0;

  // P(external link) = logistic(link_base_logit + link_bio_slope * bl);
  // a positive slope couples long biographies to links.
  double link_base_logit = -3.0;
  double link_bio_slope = 0.03;

  double caption_len_median = 10;
  double caption_len_dispersion = 0.5;
  double zero_caption_prob = 0.1;
  double no_image_prob = 0.1;
  double location_prob = 0.1;

  double hashtag_rate = 1.0;  // generic hashtags per post
  double promo_rate = 0.0;    // promotional-keyword hashtags per post
  double follow_rate = 0.0;   // follower-hunter-keyword hashtags per post

  double vocab_reuse = 0.0;   // chance a post repeats the account's
                              // signature caption verbatim
  double likes_rate = 1.0;
  double comments_rate = 0.1;
  double post_interval_median_hours = 24;
};

// Profiles encoding the qualitative class separations: authentic accounts
// have the most followers, follow the fewest accounts and repeat
// themselves least; spammers post the most and lean hardest on
// promotional and follower-hunting hashtags; inactive fakes often lack a
// profile picture.
std::array<ClassProfile, kNumClasses> default_profiles();

// Throws DataError if probabilities leave [0,1] or rates/medians are
// negative or non-finite.
void validate_profile(const ClassProfile& profile);

struct LabeledAccount {
  AccountRecord account;
  UserClass label = UserClass::Authentic;
};

// Exactly per_class accounts per profile, deterministic in
// (profiles, per_class, seed). Classes use independent sub-seeds.
std::vector<LabeledAccount> generate_dataset(
    const std::array<ClassProfile, kNumClasses>& profiles, int per_class,
    std::uint64_t seed);

}  // namespace fakedet
