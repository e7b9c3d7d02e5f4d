#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "fakedet/dataset_io.hpp"
#include "fakedet/errors.hpp"
#include "fakedet/rng.hpp"
#include "fakedet/types.hpp"
#include "test_util.hpp"

using namespace fakedet;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "fakedet_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

constexpr const char* kAccountLine =
    R"({"account_id":"a1","followers":5,"following":9,"biography":"hi",)"
    R"("has_profile_picture":true,"has_external_link":false,"posts":[)"
    R"({"caption":"x","hashtags":["sun"],"likes":3,"comments":1,)"
    R"("has_image":true,"location_tagged":false,"posted_at":100}]})";

}  // namespace

TEST_SUITE("domain") {

TEST_CASE("class tokens round-trip and binary projection") {
  for (UserClass c : kAllClasses) {
    CHECK(parse_class_token(class_token(c)) == c);
  }
  CHECK(binary_label(UserClass::Authentic) == 0);
  CHECK(binary_label(UserClass::ActiveFake) == 1);
  CHECK(binary_label(UserClass::InactiveFake) == 1);
  CHECK(binary_label(UserClass::Spammer) == 1);
  CHECK(!parse_class_token("bot").has_value());
}

TEST_CASE("utf8_length counts scalar values") {
  CHECK(utf8_length("") == 0);
  CHECK(utf8_length("abcd") == 4);
  CHECK(utf8_length("日記") == 2);
  CHECK(utf8_length("héllo") == 5);
}

TEST_CASE("validate_account sorts posts and strips hashtag prefix") {
  AccountRecord acc;
  acc.account_id = "a";
  acc.posts.resize(2);
  acc.posts[0].posted_at = 200;
  acc.posts[1].posted_at = 100;
  acc.posts[0].hashtags = {"#tag"};
  validate_account(acc);
  CHECK(acc.posts[0].posted_at == 100);
  CHECK(acc.posts[1].posted_at == 200);
  CHECK(acc.posts[1].hashtags[0] == "tag");
}

TEST_CASE("validate_account rejects bad records") {
  AccountRecord acc;
  acc.account_id = "";
  CHECK_THROWS_AS(validate_account(acc), DataError);

  acc.account_id = "a";
  acc.followers = -1;
  CHECK_THROWS_AS(validate_account(acc), DataError);

  acc.followers = 0;
  acc.posts.resize(1);
  acc.posts[0].likes = -3;
  CHECK_THROWS_AS(validate_account(acc), DataError);

  acc.posts[0].likes = 0;
  acc.posts[0].hashtags = {"   "};
  CHECK_THROWS_AS(validate_account(acc), DataError);
}

TEST_CASE("load_accounts_jsonl on empty file yields empty list") {
  const auto path = temp_file("empty.jsonl");
  write_text(path, "");
  CHECK(load_accounts_jsonl(path).empty());
}

TEST_CASE("load_accounts_jsonl reports field and line for negative likes") {
  const auto path = temp_file("bad_likes.jsonl");
  std::string line = kAccountLine;
  const auto pos = line.find("\"likes\":3");
  line.replace(pos, 9, "\"likes\":-3");
  write_text(path, line + "\n");
  try {
    load_accounts_jsonl(path);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 1") != std::string::npos);
    CHECK(msg.find("likes") != std::string::npos);
  }
}

TEST_CASE("load_accounts_jsonl rejects duplicate ids") {
  const auto path = temp_file("dup.jsonl");
  write_text(path, std::string(kAccountLine) + "\n" + kAccountLine + "\n");
  try {
    load_accounts_jsonl(path);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("duplicate account_id 'a1'") !=
          std::string::npos);
  }
}

TEST_CASE("load_accounts_jsonl rejects malformed and unknown content") {
  const auto path = temp_file("bad.jsonl");
  write_text(path, "{not json\n");
  CHECK_THROWS_AS(load_accounts_jsonl(path), DataError);
  write_text(path, R"({"account_id":"a"})" "\n");
  CHECK_THROWS_AS(load_accounts_jsonl(path), DataError);  // missing fields
  std::string extra = kAccountLine;
  extra.insert(extra.size() - 1, R"(,"surprise":1)");
  write_text(path, extra + "\n");
  CHECK_THROWS_AS(load_accounts_jsonl(path), DataError);  // unknown field
}

TEST_CASE("jsonl round-trip is a fixed point") {
  Rng rng(991);
  std::vector<AccountRecord> accounts;
  for (int i = 0; i < 20; ++i) {
    AccountRecord acc = testutil::random_account(rng);
    acc.account_id = "acct_" + std::to_string(i);
    validate_account(acc);
    accounts.push_back(std::move(acc));
  }
  const auto p1 = temp_file("rt1.jsonl");
  const auto p2 = temp_file("rt2.jsonl");
  write_accounts_jsonl(accounts, p1);
  write_accounts_jsonl(load_accounts_jsonl(p1), p2);
  CHECK(read_text(p1) == read_text(p2));
  CHECK(!read_text(p1).empty());
}

TEST_CASE("parse_account_json validates a single record") {
  const AccountRecord acc = parse_account_json(kAccountLine);
  CHECK(acc.account_id == "a1");
  CHECK(acc.posts.size() == 1);
  CHECK_THROWS_AS(parse_account_json("{"), DataError);
}

TEST_CASE("feature csv: header-only file loads empty") {
  const auto path = temp_file("feat_empty.csv");
  write_text(path,
             "account_id,pos,flw,flg,bl,pic,lin,cl,cz,ni,erl,erc,lt,hc,pr,fo,"
             "cs,pi,label\n");
  CHECK(load_feature_csv(path).empty());
}

TEST_CASE("feature csv: direct parse of one row") {
  const auto path = temp_file("feat_one.csv");
  write_text(path,
             "account_id,pos,flw,flg,bl,pic,lin,cl,cz,ni,erl,erc,lt,hc,pr,fo,"
             "cs,pi,label\n"
             "a1,10,100,50,20,1,0,12.5,0.1,0.0,0.02,0.003,0.2,1.5,0.0,0.0,0.1,"
             "24.0,authentic\n");
  const auto examples = load_feature_csv(path);
  REQUIRE(examples.size() == 1);
  CHECK(examples[0].account_id == "a1");
  CHECK(examples[0].features.pos == 10.0);
  CHECK(examples[0].features.cl == 12.5);
  CHECK(examples[0].features.pi == 24.0);
  CHECK(examples[0].label == UserClass::Authentic);
}

TEST_CASE("feature csv: unknown label names the line") {
  const auto path = temp_file("feat_label.csv");
  write_text(path,
             "account_id,pos,flw,flg,bl,pic,lin,cl,cz,ni,erl,erc,lt,hc,pr,fo,"
             "cs,pi,label\n"
             "a1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,bot\n");
  try {
    load_feature_csv(path);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("unknown label 'bot'") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
  }
}

TEST_CASE("feature csv: header mismatch lists offending columns") {
  const auto path = temp_file("feat_header.csv");
  write_text(path, "account_id,pos,flw,extra,label\n");
  try {
    load_feature_csv(path);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("missing") != std::string::npos);
    CHECK(msg.find("extra") != std::string::npos);
  }
}

TEST_CASE("feature csv: non-numeric and non-finite cells rejected") {
  const auto header =
      "account_id,pos,flw,flg,bl,pic,lin,cl,cz,ni,erl,erc,lt,hc,pr,fo,cs,pi,"
      "label\n";
  const auto path = temp_file("feat_nan.csv");
  write_text(path, std::string(header) +
                       "a1,x,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,authentic\n");
  CHECK_THROWS_AS(load_feature_csv(path), DataError);
  write_text(path, std::string(header) +
                       "a1,nan,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,authentic\n");
  CHECK_THROWS_AS(load_feature_csv(path), DataError);
}

TEST_CASE("feature csv: write of empty list produces header-only file") {
  const auto path = temp_file("feat_out_empty.csv");
  write_feature_csv({}, path);
  CHECK(read_text(path) ==
        "account_id,pos,flw,flg,bl,pic,lin,cl,cz,ni,erl,erc,lt,hc,pr,fo,cs,pi,"
        "label\n");
}

TEST_CASE("feature csv: 50 random examples round-trip within 1e-6") {
  Rng rng(17);
  std::vector<LabeledExample> examples;
  for (int i = 0; i < 50; ++i) {
    LabeledExample ex;
    ex.account_id = "acct_" + std::to_string(i);
    std::array<double, FeatureVector::kCount> values{};
    for (double& v : values) v = rng.uniform() * 1000.0;
    ex.features = FeatureVector::from_array(values);
    ex.label = static_cast<UserClass>(rng.uniform_int(0, 3));
    examples.push_back(std::move(ex));
  }
  const auto path = temp_file("feat_rt.csv");
  write_feature_csv(examples, path);
  const auto loaded = load_feature_csv(path);
  REQUIRE(loaded.size() == examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    CHECK(loaded[i].account_id == examples[i].account_id);
    CHECK(loaded[i].label == examples[i].label);
    const auto expect = examples[i].features.to_array();
    const auto got = loaded[i].features.to_array();
    for (std::size_t j = 0; j < expect.size(); ++j) {
      CHECK(std::fabs(got[j] - expect[j]) <= 1e-6);
    }
  }
}

TEST_CASE("labels csv round-trip and duplicate rejection") {
  const auto path = temp_file("labels.csv");
  write_labels_csv({{"a", UserClass::Authentic}, {"b", UserClass::Spammer}}, path);
  const auto labels = load_labels_csv(path);
  CHECK(labels.at("a") == UserClass::Authentic);
  CHECK(labels.at("b") == UserClass::Spammer);
  write_text(path, "account_id,label\na,authentic\na,spammer\n");
  CHECK_THROWS_AS(load_labels_csv(path), DataError);
}

}  // TEST_SUITE
