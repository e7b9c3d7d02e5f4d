#include <doctest.h>

#include <cmath>
#include <fstream>

#include "fakedet/errors.hpp"
#include "fakedet/features.hpp"
#include "fakedet/rng.hpp"
#include "test_util.hpp"

using namespace fakedet;

namespace {

PostRecord post_with(std::string caption, std::vector<std::string> hashtags = {},
                     std::int64_t likes = 0, std::int64_t comments = 0,
                     std::int64_t at = 0) {
  PostRecord p;
  p.caption = std::move(caption);
  p.hashtags = std::move(hashtags);
  p.likes = likes;
  p.comments = comments;
  p.posted_at = at;
  p.has_image = true;
  return p;
}

}  // namespace

TEST_SUITE("features") {

TEST_CASE("zero-post account gets metadata only") {
  AccountRecord acc;
  acc.account_id = "a";
  acc.followers = 5;
  acc.following = 9;
  acc.biography = "hi";
  acc.has_profile_picture = true;
  acc.has_external_link = false;
  const FeatureVector v = extract_features(acc);
  CHECK(v.pos == 0.0);
  CHECK(v.flw == 5.0);
  CHECK(v.flg == 9.0);
  CHECK(v.bl == 2.0);
  CHECK(v.pic == 1.0);
  CHECK(v.lin == 0.0);
  for (double post_derived : {v.cl, v.cz, v.ni, v.erl, v.erc, v.lt, v.hc,
                              v.pr, v.fo, v.cs, v.pi}) {
    CHECK(post_derived == 0.0);
  }
}

TEST_CASE("engagement rates") {
  std::vector<PostRecord> posts = {post_with("", {}, 10, 1),
                                   post_with("", {}, 20, 3)};
  SUBCASE("hand-computed example") {
    const auto [erl, erc] = engagement_rates(posts, 100);
    CHECK(erl == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(erc == doctest::Approx(0.02).epsilon(1e-12));
  }
  SUBCASE("zero followers degenerates to zero") {
    CHECK(engagement_rates(posts, 0) == std::pair{0.0, 0.0});
  }
  SUBCASE("zero posts degenerates to zero") {
    CHECK(engagement_rates({}, 100) == std::pair{0.0, 0.0});
  }
  SUBCASE("zero numerator") {
    std::vector<PostRecord> quiet = {post_with(""), post_with("")};
    CHECK(engagement_rates(quiet, 50).first == 0.0);
  }
}

TEST_CASE("erl in extract_features matches the direct formula") {
  AccountRecord acc;
  acc.account_id = "a";
  acc.followers = 100;
  acc.posts = {post_with("", {}, 10, 0, 0), post_with("", {}, 20, 0, 10)};
  CHECK(extract_features(acc).erl == doctest::Approx(30.0 / (2 * 100)).epsilon(1e-12));
}

TEST_CASE("keyword matching is substring on normalized hashtags") {
  const KeywordConfig defaults = KeywordConfig::defaults();
  SUBCASE("Follow4Follow matches the follow phrase") {
    std::vector<PostRecord> posts = {post_with("", {"Follow4Follow", "sunset"})};
    CHECK(keyword_rate(posts, defaults.follower_hunter) == 1.0);
  }
  SUBCASE("no hashtags means rate 0") {
    std::vector<PostRecord> posts = {post_with("caption only")};
    CHECK(keyword_rate(posts, defaults.promotional) == 0.0);
  }
  SUBCASE("mean over posts") {
    std::vector<PostRecord> posts = {post_with("", {"contest", "repost_me"}),
                                     post_with("", {"sunset"})};
    CHECK(keyword_rate(posts, defaults.promotional) == 1.0);
  }
  SUBCASE("a hashtag counts once even when several phrases hit") {
    std::vector<PostRecord> posts = {post_with("", {"follow-for-follow-like"})};
    CHECK(keyword_rate(posts, defaults.follower_hunter) == 1.0);
  }
  SUBCASE("separator stripping joins multi-word phrases") {
    CHECK(normalize_hashtag("#Follow_For Follow") == "followforfollow");
  }
}

TEST_CASE("hashtag count feature is the mean per post") {
  AccountRecord acc;
  acc.account_id = "a";
  acc.followers = 1;
  acc.posts = {post_with("", {"a", "b"}, 0, 0, 0),
               post_with("", {"c", "d", "e", "f"}, 0, 0, 1)};
  CHECK(extract_features(acc).hc == 3.0);
}

TEST_CASE("caption statistics") {
  SUBCASE("hand-computed means") {
    std::vector<PostRecord> posts = {post_with("abcd"), post_with("")};
    const auto [cl, cz] = caption_stats(posts);
    CHECK(cl == 2.0);
    CHECK(cz == 0.5);
  }
  SUBCASE("two-character captions count as near-empty") {
    std::vector<PostRecord> posts = {post_with("ok")};
    CHECK(caption_stats(posts).second == 1.0);
  }
  SUBCASE("whitespace-padded captions are trimmed for cz only") {
    std::vector<PostRecord> posts = {post_with("  hi   ")};
    const auto [cl, cz] = caption_stats(posts);
    CHECK(cl == 7.0);
    CHECK(cz == 1.0);
  }
  SUBCASE("no posts") {
    CHECK(caption_stats({}) == std::pair{0.0, 0.0});
  }
}

TEST_CASE("pairwise cosine") {
  SUBCASE("identical captions give 1") {
    std::vector<PostRecord> posts = {post_with("hello world"),
                                     post_with("hello world")};
    CHECK(pairwise_cosine(posts) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("hand-computed half overlap") {
    std::vector<PostRecord> posts = {post_with("follow like"),
                                     post_with("follow win")};
    CHECK(pairwise_cosine(posts) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("disjoint vocabularies give 0") {
    std::vector<PostRecord> posts = {post_with("alpha beta"),
                                     post_with("gamma delta")};
    CHECK(pairwise_cosine(posts) == 0.0);
  }
  SUBCASE("empty captions contribute zero similarity") {
    std::vector<PostRecord> posts = {post_with(""), post_with(""),
                                     post_with("hello")};
    CHECK(pairwise_cosine(posts) == 0.0);
  }
  SUBCASE("fewer than two posts gives 0") {
    CHECK(pairwise_cosine({}) == 0.0);
    std::vector<PostRecord> one = {post_with("hello")};
    CHECK(pairwise_cosine(one) == 0.0);
  }
  SUBCASE("tokenization lowercases and splits on punctuation") {
    const auto tokens = tokenize_caption("Hello, WORLD!! 123 héllo");
    REQUIRE(tokens.size() == 4);
    CHECK(tokens[0] == "hello");
    CHECK(tokens[1] == "world");
    CHECK(tokens[2] == "123");
  }
}

TEST_CASE("mean interval") {
  SUBCASE("one hour apart") {
    std::vector<PostRecord> posts = {post_with("", {}, 0, 0, 1000),
                                     post_with("", {}, 0, 0, 4600)};
    CHECK(mean_interval_hours(posts) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("hand-computed mean of two intervals") {
    std::vector<PostRecord> posts = {post_with("", {}, 0, 0, 0),
                                     post_with("", {}, 0, 0, 3600),
                                     post_with("", {}, 0, 0, 10800)};
    CHECK(mean_interval_hours(posts) == doctest::Approx(1.5).epsilon(1e-12));
  }
  SUBCASE("single post gives 0") {
    std::vector<PostRecord> one = {post_with("x")};
    CHECK(mean_interval_hours(one) == 0.0);
  }
}

TEST_CASE("keyword config file loading") {
  const auto dir = std::filesystem::temp_directory_path() / "fakedet_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / "keywords.json";
  {
    std::ofstream out(path);
    out << R"({"promotional": ["SALE"], "follower_hunter": ["f4f"]})";
  }
  const KeywordConfig cfg = KeywordConfig::load(path);
  CHECK(cfg.promotional == std::vector<std::string>{"sale"});
  CHECK(cfg.follower_hunter == std::vector<std::string>{"f4f"});
  {
    std::ofstream out(path);
    out << R"({"promotional": [""], "follower_hunter": []})";
  }
  CHECK_THROWS_AS(KeywordConfig::load(path), DataError);
  {
    std::ofstream out(path);
    out << R"({"promotional": []})";
  }
  CHECK_THROWS_AS(KeywordConfig::load(path), DataError);
}

TEST_CASE("extraction is deterministic and permutation invariant") {
  Rng rng(55);
  for (int round = 0; round < 50; ++round) {
    AccountRecord acc = testutil::random_account(rng);
    validate_account(acc);
    const auto a = extract_features(acc).to_array();
    const auto b = extract_features(acc).to_array();
    CHECK(a == b);

    AccountRecord shuffled = acc;
    std::reverse(shuffled.posts.begin(), shuffled.posts.end());
    validate_account(shuffled);  // re-sorts
    const auto c = extract_features(shuffled).to_array();
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(c[j] == doctest::Approx(a[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("fuzz: fractions stay in range and nothing is non-finite") {
  Rng rng(123);
  for (int round = 0; round < 2000; ++round) {
    AccountRecord acc = testutil::random_account(rng);
    validate_account(acc);
    const FeatureVector v = extract_features(acc);
    for (double value : v.to_array()) CHECK(std::isfinite(value));
    for (double fraction : {v.cz, v.ni, v.lt, v.cs}) {
      CHECK(fraction >= 0.0);
      CHECK(fraction <= 1.0);
    }
    CHECK(v.pic == doctest::Approx(acc.has_profile_picture ? 1.0 : 0.0));
  }
}

TEST_CASE("scaling likes and comments scales erl and erc linearly") {
  Rng rng(321);
  for (int round = 0; round < 200; ++round) {
    AccountRecord acc = testutil::random_account(rng);
    validate_account(acc);
    const std::int64_t k = rng.uniform_int(2, 7);
    AccountRecord scaled = acc;
    for (PostRecord& p : scaled.posts) {
      p.likes *= k;
      p.comments *= k;
    }
    const FeatureVector base = extract_features(acc);
    const FeatureVector got = extract_features(scaled);
    CHECK(got.erl == doctest::Approx(base.erl * k).epsilon(1e-12));
    CHECK(got.erc == doctest::Approx(base.erc * k).epsilon(1e-12));
    // nothing else moves
    auto a = base.to_array();
    auto b = got.to_array();
    a[9] = a[10] = b[9] = b[10] = 0.0;  // erl, erc slots
    CHECK(a == b);
  }
}

}  // TEST_SUITE
