#include <doctest.h>

#include <fstream>
#include <map>
#include <set>

#include "fakedet/dataset_io.hpp"
#include "fakedet/errors.hpp"
#include "fakedet/features.hpp"
#include "fakedet/stats.hpp"
#include "fakedet/synth.hpp"

using namespace fakedet;

namespace {

std::map<UserClass, std::vector<FeatureVector>> extract_by_class(
    const std::vector<LabeledAccount>& dataset) {
  std::map<UserClass, std::vector<FeatureVector>> by_class;
  for (const LabeledAccount& la : dataset) {
    by_class[la.label].push_back(extract_features(la.account));
  }
  return by_class;
}

double mean_of(const std::vector<FeatureVector>& vs,
               double FeatureVector::*field) {
  double sum = 0;
  for (const FeatureVector& v : vs) sum += v.*field;
  return sum / static_cast<double>(vs.size());
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("default profiles encode the documented separations") {
  const auto profiles = default_profiles();
  const ClassProfile& authentic = profiles[0];
  const ClassProfile& active = profiles[1];
  const ClassProfile& inactive = profiles[2];
  const ClassProfile& spammer = profiles[3];

  for (const ClassProfile& p : profiles) validate_profile(p);
  CHECK(authentic.cls == UserClass::Authentic);
  CHECK(spammer.cls == UserClass::Spammer);

  for (const ClassProfile* fake : {&active, &inactive, &spammer}) {
    CHECK(authentic.followers_median > fake->followers_median);
    CHECK(authentic.following_median < fake->following_median);
    CHECK(authentic.vocab_reuse < fake->vocab_reuse);
  }
  for (const ClassProfile* other : {&authentic, &active, &inactive}) {
    CHECK(spammer.promo_rate > other->promo_rate);
    CHECK(spammer.follow_rate > other->follow_rate);
    CHECK(spammer.post_count_median > other->post_count_median);
  }
  CHECK(inactive.pic_prob == 0.76);
  CHECK(authentic.pic_prob >= 0.95);
  CHECK(active.pic_prob >= 0.95);
  CHECK(spammer.pic_prob >= 0.95);
  for (const ClassProfile& p : profiles) CHECK(p.link_bio_slope > 0.0);
}

TEST_CASE("validate_profile rejects out-of-range values") {
  ClassProfile p = default_profiles()[0];
  p.pic_prob = 1.5;
  CHECK_THROWS_AS(validate_profile(p), DataError);
  p = default_profiles()[0];
  p.followers_median = 0;
  CHECK_THROWS_AS(validate_profile(p), DataError);
  p = default_profiles()[0];
  p.promo_rate = -0.1;
  CHECK_THROWS_AS(validate_profile(p), DataError);
}

TEST_CASE("generation is deterministic and rejects per_class < 1") {
  CHECK_THROWS_AS(generate_dataset(default_profiles(), 0, 1), DataError);

  const auto a = generate_dataset(default_profiles(), 1, 7);
  const auto b = generate_dataset(default_profiles(), 1, 7);
  REQUIRE(a.size() == b.size());
  const auto dir = std::filesystem::temp_directory_path() / "fakedet_tests";
  std::filesystem::create_directories(dir);
  auto dump = [&](const std::vector<LabeledAccount>& ds, const char* name) {
    std::vector<AccountRecord> accounts;
    for (const auto& la : ds) accounts.push_back(la.account);
    write_accounts_jsonl(accounts, dir / name);
    std::ifstream in(dir / name, std::ios::binary);
    return std::string{std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>()};
  };
  CHECK(dump(a, "det_a.jsonl") == dump(b, "det_b.jsonl"));
}

TEST_CASE("different seeds produce different datasets") {
  const auto a = generate_dataset(default_profiles(), 2, 1);
  const auto b = generate_dataset(default_profiles(), 2, 2);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].account.followers != b[i].account.followers ||
        a[i].account.posts.size() != b[i].account.posts.size() ||
        a[i].account.biography != b[i].account.biography) {
      any_diff = true;
    }
  }
  CHECK(any_diff);
}

TEST_CASE("exact label balance and unique ids") {
  const int per_class = 25;
  const auto dataset = generate_dataset(default_profiles(), per_class, 42);
  REQUIRE(dataset.size() == static_cast<std::size_t>(per_class) * 4);
  std::map<UserClass, int> counts;
  std::set<std::string> ids;
  for (const LabeledAccount& la : dataset) {
    ++counts[la.label];
    ids.insert(la.account.account_id);
  }
  for (UserClass c : kAllClasses) CHECK(counts[c] == per_class);
  CHECK(ids.size() == dataset.size());
}

TEST_CASE("hashtag pools never leak keywords into generic tags") {
  const auto dataset = generate_dataset(default_profiles(), 40, 3);
  const KeywordConfig defaults = KeywordConfig::defaults();
  auto matches_any = [](const std::string& tag,
                        const std::vector<std::string>& phrases) {
    const std::string norm = normalize_hashtag(tag);
    for (const std::string& phrase : phrases) {
      if (norm.find(normalize_hashtag(phrase)) != std::string::npos) return true;
    }
    return false;
  };
  // authentic accounts have tiny keyword rates, so nearly every tag must
  // be clean; a polluted generic pool would light up everywhere
  std::int64_t authentic_tags = 0, authentic_matches = 0;
  for (const LabeledAccount& la : dataset) {
    if (la.label != UserClass::Authentic) continue;
    for (const PostRecord& p : la.account.posts) {
      for (const std::string& tag : p.hashtags) {
        ++authentic_tags;
        if (matches_any(tag, defaults.promotional) ||
            matches_any(tag, defaults.follower_hunter)) {
          ++authentic_matches;
        }
      }
    }
  }
  CHECK(authentic_tags > 1000);
  CHECK(static_cast<double>(authentic_matches) /
            static_cast<double>(authentic_tags) <
        0.05);
}

TEST_CASE("class mean orderings hold at per_class=500, seed 42") {
  const auto dataset = generate_dataset(default_profiles(), 500, 42);
  const auto by_class = extract_by_class(dataset);
  const auto& authentic = by_class.at(UserClass::Authentic);
  for (UserClass fake :
       {UserClass::ActiveFake, UserClass::InactiveFake, UserClass::Spammer}) {
    CHECK(mean_of(authentic, &FeatureVector::flw) >
          mean_of(by_class.at(fake), &FeatureVector::flw));
    CHECK(mean_of(authentic, &FeatureVector::flg) <
          mean_of(by_class.at(fake), &FeatureVector::flg));
    CHECK(mean_of(authentic, &FeatureVector::cs) <
          mean_of(by_class.at(fake), &FeatureVector::cs));
  }
  const auto& spammer = by_class.at(UserClass::Spammer);
  for (UserClass other :
       {UserClass::Authentic, UserClass::ActiveFake, UserClass::InactiveFake}) {
    CHECK(mean_of(spammer, &FeatureVector::pr) >
          mean_of(by_class.at(other), &FeatureVector::pr));
    CHECK(mean_of(spammer, &FeatureVector::fo) >
          mean_of(by_class.at(other), &FeatureVector::fo));
  }
}

TEST_CASE("bio length couples to link presence") {
  const auto dataset = generate_dataset(default_profiles(), 500, 42);
  std::vector<double> bl, lin;
  for (const LabeledAccount& la : dataset) {
    const FeatureVector v = extract_features(la.account);
    bl.push_back(v.bl);
    lin.push_back(v.lin);
  }
  CHECK(pearson(bl, lin) >= 0.2);
}

}  // TEST_SUITE
