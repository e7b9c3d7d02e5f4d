#include "fakedet/synth.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "fakedet/errors.hpp"
#include "fakedet/rng.hpp"

namespace fakedet {

namespace {

// Pronounceable filler vocabulary built from consonant-vowel syllables.
// None of the syllables can line up into the default keyword phrases
// (follow, like, contest, repost, mention), so generic words and tags
// never pollute the pr/fo features.
constexpr const char* kSyllables[] = {
    "ba", "be", "bi", "bo", "bu", "ca", "co", "cu", "da", "de", "di", "do",
    "du", "fa", "fe", "fi", "fo", "fu", "ga", "go", "gu", "ha", "he", "hi",
    "ho", "ja", "jo", "ka", "ko", "ku", "la", "le", "lo", "lu", "ma", "me",
    "mi", "mo", "mu", "na", "ne", "ni", "no", "nu", "pa", "pe", "pi", "po",
    "pu", "ra", "re", "ri", "ro", "ru", "sa", "se", "si", "so", "su", "ta",
    "te", "ti", "to", "tu", "va", "ve", "vi", "vo", "wa", "wi", "ya", "yo",
    "za", "zo"};
constexpr int kNumSyllables = static_cast<int>(std::size(kSyllables));

std::string pool_word(int index) {
  const int a = index % kNumSyllables;
  const int b = (index / kNumSyllables + 7 * index) % kNumSyllables;
  const int c = (index / (kNumSyllables * kNumSyllables) + 13 * index) % kNumSyllables;
  return std::string(kSyllables[a]) + kSyllables[b] + kSyllables[c];
}

constexpr int kWordPoolSize = 500;
constexpr int kGenericTagPoolSize = 120;
constexpr std::int64_t kBaseEpoch = 1577836800;  // 2020-01-01T00:00:00Z

const char* kPromoTags[] = {"contest",     "contestalert", "bigcontest",
                            "repost",      "repostthis",   "repostnow",
                            "mention",     "mentionfriends"};
const char* kFollowTags[] = {"follow",          "followme",  "follow4follow",
                             "followforfollow", "like4like", "likeforlike",
                             "followback",      "liketime"};

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Per-account rate multiplier with mean exactly 1; injects independent
// within-class variation so rate features are not class constants.
double rate_jitter(Rng& rng, double sigma) {
  return std::exp(sigma * rng.normal() - sigma * sigma / 2.0);
}

// Logit-space jitter for per-account probabilities.
double prob_jitter(Rng& rng, double p, double sigma) {
  if (p <= 0.0 || p >= 1.0) return p;
  const double logit = std::log(p / (1.0 - p)) + sigma * rng.normal();
  return 1.0 / (1.0 + std::exp(-logit));
}

std::int64_t rounded_lognormal(Rng& rng, double median, double sigma) {
  return static_cast<std::int64_t>(std::llround(rng.lognormal(median, sigma)));
}

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DataError(std::string("profile: ") + name + " must be in [0,1]");
  }
}

void check_rate(double r, const char* name) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DataError(std::string("profile: ") + name + " must be finite and >= 0");
  }
}

void check_positive(double r, const char* name) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DataError(std::string("profile: ") + name + " must be finite and > 0");
  }
}

}  // namespace

void validate_profile(const ClassProfile& p) {
  check_positive(p.post_count_median, "post_count_median");
  check_rate(p.post_count_dispersion, "post_count_dispersion");
  check_positive(p.followers_median, "followers_median");
  check_rate(p.followers_dispersion, "followers_dispersion");
  check_positive(p.following_median, "following_median");
  check_rate(p.following_dispersion, "following_dispersion");
  check_positive(p.bio_len_median, "bio_len_median");
  check_rate(p.bio_len_dispersion, "bio_len_dispersion");
  check_prob(p.pic_prob, "pic_prob");
  if (!std::isfinite(p.link_base_logit) || !std::isfinite(p.link_bio_slope)) {
    throw DataError("profile: link logit parameters must be finite");
  }
  check_positive(p.caption_len_median, "caption_len_median");
  check_rate(p.caption_len_dispersion, "caption_len_dispersion");
  check_prob(p.zero_caption_prob, "zero_caption_prob");
  check_prob(p.no_image_prob, "no_image_prob");
  check_prob(p.location_prob, "location_prob");
  check_rate(p.hashtag_rate, "hashtag_rate");
  check_rate(p.promo_rate, "promo_rate");
  check_rate(p.follow_rate, "follow_rate");
  check_prob(p.vocab_reuse, "vocab_reuse");
  check_rate(p.likes_rate, "likes_rate");
  check_rate(p.comments_rate, "comments_rate");
  check_positive(p.post_interval_median_hours, "post_interval_median_hours");
}

std::array<ClassProfile, kNumClasses> default_profiles() {
  ClassProfile authentic;
  authentic.cls = UserClass::Authentic;
  authentic.post_count_median = 40;
  authentic.post_count_dispersion = 0.9;
  authentic.followers_median = 1200;
  authentic.followers_dispersion = 1.1;
  authentic.following_median = 350;
  authentic.following_dispersion = 0.8;
  authentic.bio_len_median = 60;
  authentic.bio_len_dispersion = 0.55;
  authentic.pic_prob = 0.97;
  authentic.link_base_logit = -2.8;
  authentic.link_bio_slope = 0.05;
  authentic.caption_len_median = 70;
  authentic.caption_len_dispersion = 0.7;
  authentic.zero_caption_prob = 0.08;
  authentic.no_image_prob = 0.15;
  authentic.location_prob = 0.35;
  authentic.hashtag_rate = 2.5;
  authentic.promo_rate = 0.03;
  authentic.follow_rate = 0.03;
  authentic.vocab_reuse = 0.06;
  authentic.likes_rate = 35;
  authentic.comments_rate = 7;
  authentic.post_interval_median_hours = 48;

  ClassProfile active;
  active.cls = UserClass::ActiveFake;
  active.post_count_median = 45;
  active.post_count_dispersion = 0.9;
  active.followers_median = 500;
  active.followers_dispersion = 1.1;
  active.following_median = 1900;
  active.following_dispersion = 0.9;
  active.bio_len_median = 32;
  active.bio_len_dispersion = 0.7;
  active.pic_prob = 0.96;
  active.link_base_logit = -3.0;
  active.link_bio_slope = 0.05;
  active.caption_len_median = 32;
  active.caption_len_dispersion = 0.7;
  active.zero_caption_prob = 0.18;
  active.no_image_prob = 0.28;
  active.location_prob = 0.16;
  active.hashtag_rate = 1.6;
  active.promo_rate = 0.15;
  active.follow_rate = 0.30;
  active.vocab_reuse = 0.28;
  active.likes_rate = 45;
  active.comments_rate = 1.2;
  active.post_interval_median_hours = 36;

  ClassProfile inactive;
  inactive.cls = UserClass::InactiveFake;
  inactive.post_count_median = 6;
  inactive.post_count_dispersion = 0.7;
  inactive.followers_median = 150;
  inactive.followers_dispersion = 1.1;
  inactive.following_median = 2800;
  inactive.following_dispersion = 0.9;
  inactive.bio_len_median = 12;
  inactive.bio_len_dispersion = 0.8;
  inactive.pic_prob = 0.76;
  inactive.link_base_logit = -3.2;
  inactive.link_bio_slope = 0.05;
  inactive.caption_len_median = 12;
  inactive.caption_len_dispersion = 0.8;
  inactive.zero_caption_prob = 0.40;
  inactive.no_image_prob = 0.12;
  inactive.location_prob = 0.06;
  inactive.hashtag_rate = 0.5;
  inactive.promo_rate = 0.02;
  inactive.follow_rate = 0.06;
  inactive.vocab_reuse = 0.50;
  inactive.likes_rate = 8;
  inactive.comments_rate = 0.6;
  inactive.post_interval_median_hours = 300;

  ClassProfile spammer;
  spammer.cls = UserClass::Spammer;
  spammer.post_count_median = 90;
  spammer.post_count_dispersion = 0.9;
  spammer.followers_median = 500;
  spammer.followers_dispersion = 1.1;
  spammer.following_median = 1700;
  spammer.following_dispersion = 0.9;
  spammer.bio_len_median = 35;
  spammer.bio_len_dispersion = 0.7;
  spammer.pic_prob = 0.95;
  spammer.link_base_logit = -2.9;
  spammer.link_bio_slope = 0.05;
  spammer.caption_len_median = 40;
  spammer.caption_len_dispersion = 0.7;
  spammer.zero_caption_prob = 0.25;
  spammer.no_image_prob = 0.24;
  spammer.location_prob = 0.12;
  spammer.hashtag_rate = 5.0;
  spammer.promo_rate = 0.50;
  spammer.follow_rate = 0.80;
  spammer.vocab_reuse = 0.30;
  spammer.likes_rate = 30;
  spammer.comments_rate = 1.8;
  spammer.post_interval_median_hours = 10;

  return {authentic, active, inactive, spammer};
}

namespace {

// Account-level parameters resolved once so accounts of one class still
// differ from each other in their typical rates and habits.
struct AccountContext {
  std::string signature_caption;  // recycled verbatim by reused posts
  double caption_len_mult = 1;
  double zero_caption_prob = 0;
  double no_image_prob = 0;
  double location_prob = 0;
  double vocab_reuse = 0;
  double interval_mult = 1;
  double hashtag_mult = 1, promo_mult = 1, follow_mult = 1;
  double likes_mult = 1, comments_mult = 1;
  double followers_mult = 1, following_mult = 1, bio_mult = 1;
  double link_logit_offset = 0;
};

// A slice of each class follows a second behavioral archetype:
// promotional business-style accounts among the authentic users, and
// fakes that mimic authentic surface metadata while keeping their
// engagement habits. Class regions stay separable but stop being
// single blobs.
constexpr double kAltArchetypeProb = 0.10;

void apply_archetype(AccountContext& ctx, UserClass cls) {
  if (cls == UserClass::Authentic) {
    // small-business flavor: promotional but genuinely engaged
    ctx.promo_mult *= 8.0;
    ctx.follow_mult *= 2.0;
    ctx.hashtag_mult *= 2.0;
    ctx.following_mult = 2.5;
    ctx.caption_len_mult *= 0.6;
    ctx.link_logit_offset = 1.2;
  } else {
    // mimic: authentic-looking metadata, unchanged engagement habits
    ctx.followers_mult = 2.6;
    ctx.following_mult = 0.20;
    ctx.bio_mult = 2.2;
    ctx.caption_len_mult *= 2.0;
    ctx.zero_caption_prob *= 0.4;
    ctx.vocab_reuse *= 0.25;
    ctx.location_prob = std::min(0.95, ctx.location_prob * 2.5);
  }
}

std::string fresh_caption(Rng& rng, const ClassProfile& p,
                          const AccountContext& ctx) {
  const double target = ctx.caption_len_mult *
      rng.lognormal(p.caption_len_median, p.caption_len_dispersion);
  std::string caption;
  while (static_cast<double>(caption.size()) < target) {
    if (!caption.empty()) caption.push_back(' ');
    caption += pool_word(static_cast<int>(rng.uniform_int(0, kWordPoolSize - 1)));
  }
  return caption;
}

// With probability vocab_reuse a post repeats the account's signature
// caption word for word, which is what drives pairwise similarity up
// for the fake classes independent of caption length.
std::string make_caption(Rng& rng, const ClassProfile& p,
                         const AccountContext& ctx) {
  if (rng.bernoulli(ctx.zero_caption_prob)) return "";
  if (rng.bernoulli(ctx.vocab_reuse)) return ctx.signature_caption;
  return fresh_caption(rng, p, ctx);
}

std::vector<std::string> make_hashtags(Rng& rng, const ClassProfile& p,
                                       const AccountContext& ctx) {
  std::vector<std::string> tags;
  const std::int64_t generic = rng.poisson(p.hashtag_rate * ctx.hashtag_mult);
  for (std::int64_t i = 0; i < generic; ++i) {
    tags.push_back(pool_word(kWordPoolSize +
                             static_cast<int>(rng.uniform_int(0, kGenericTagPoolSize - 1))));
  }
  const std::int64_t promo = rng.poisson(p.promo_rate * ctx.promo_mult);
  for (std::int64_t i = 0; i < promo; ++i) {
    tags.push_back(kPromoTags[rng.uniform_int(0, std::size(kPromoTags) - 1)]);
  }
  const std::int64_t follow = rng.poisson(p.follow_rate * ctx.follow_mult);
  for (std::int64_t i = 0; i < follow; ++i) {
    tags.push_back(kFollowTags[rng.uniform_int(0, std::size(kFollowTags) - 1)]);
  }
  return tags;
}

AccountRecord make_account(Rng& rng, const ClassProfile& p,
                           const std::string& account_id) {
  AccountContext ctx;
  ctx.caption_len_mult = rate_jitter(rng, 0.5);
  ctx.zero_caption_prob = prob_jitter(rng, p.zero_caption_prob, 0.6);
  ctx.no_image_prob = prob_jitter(rng, p.no_image_prob, 0.6);
  ctx.location_prob = prob_jitter(rng, p.location_prob, 0.7);
  ctx.vocab_reuse = p.vocab_reuse;
  ctx.interval_mult = rate_jitter(rng, 0.5);
  ctx.hashtag_mult = rate_jitter(rng, 0.8);
  ctx.promo_mult = rate_jitter(rng, 0.8);
  ctx.follow_mult = rate_jitter(rng, 0.8);
  ctx.likes_mult = rate_jitter(rng, 0.7);
  ctx.comments_mult = rate_jitter(rng, 0.7);
  if (rng.bernoulli(kAltArchetypeProb)) apply_archetype(ctx, p.cls);

  AccountRecord acc;
  acc.account_id = account_id;
  acc.followers = rounded_lognormal(
      rng, p.followers_median * ctx.followers_mult, p.followers_dispersion);
  acc.following = rounded_lognormal(
      rng, p.following_median * ctx.following_mult, p.following_dispersion);

  const std::int64_t bio_target = rounded_lognormal(
      rng, p.bio_len_median * ctx.bio_mult, p.bio_len_dispersion);
  while (static_cast<std::int64_t>(acc.biography.size()) < bio_target) {
    if (!acc.biography.empty()) acc.biography.push_back(' ');
    acc.biography +=
        pool_word(static_cast<int>(rng.uniform_int(0, kWordPoolSize - 1)));
  }

  acc.has_profile_picture = rng.bernoulli(p.pic_prob);
  const double bl = static_cast<double>(acc.biography.size());  // ASCII pool
  acc.has_external_link = rng.bernoulli(logistic(
      p.link_base_logit + ctx.link_logit_offset + p.link_bio_slope * bl));

  ctx.signature_caption = fresh_caption(rng, p, ctx);
  if (ctx.signature_caption.empty()) {
    ctx.signature_caption = pool_word(
        static_cast<int>(rng.uniform_int(0, kWordPoolSize - 1)));
  }

  const std::int64_t post_count =
      rounded_lognormal(rng, p.post_count_median, p.post_count_dispersion);
  std::int64_t t = kBaseEpoch;
  acc.posts.reserve(static_cast<std::size_t>(post_count));
  for (std::int64_t i = 0; i < post_count; ++i) {
    PostRecord post;
    post.caption = make_caption(rng, p, ctx);
    post.hashtags = make_hashtags(rng, p, ctx);
    post.likes = rng.poisson(p.likes_rate * ctx.likes_mult);
    post.comments = rng.poisson(p.comments_rate * ctx.comments_mult);
    post.has_image = !rng.bernoulli(ctx.no_image_prob);
    post.location_tagged = rng.bernoulli(ctx.location_prob);
    const double gap_seconds =
        rng.exponential(p.post_interval_median_hours * ctx.interval_mult) * 3600.0;
    t += std::max<std::int64_t>(1, std::llround(gap_seconds));
    post.posted_at = t;
    acc.posts.push_back(std::move(post));
  }
  return acc;
}

}  // namespace

std::vector<LabeledAccount> generate_dataset(
    const std::array<ClassProfile, kNumClasses>& profiles, int per_class,
    std::uint64_t seed) {
  if (per_class < 1) throw DataError("per_class must be >= 1");
  for (const ClassProfile& p : profiles) validate_profile(p);

  std::vector<LabeledAccount> out;
  out.reserve(static_cast<std::size_t>(per_class) * kNumClasses);
  for (int ci = 0; ci < kNumClasses; ++ci) {
    const ClassProfile& profile = profiles[static_cast<std::size_t>(ci)];
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(ci)));
    for (int i = 0; i < per_class; ++i) {
      char id[64];
      std::snprintf(id, sizeof(id), "%s_%06d",
                    std::string(class_token(profile.cls)).c_str(), i);
      LabeledAccount la;
      la.account = make_account(rng, profile, id);
      la.label = profile.cls;
      validate_account(la.account);
      out.push_back(std::move(la));
    }
  }
  return out;
}

}  // namespace fakedet
