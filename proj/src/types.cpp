#include "fakedet/types.hpp"

#include <algorithm>
#include <cctype>

#include "fakedet/errors.hpp"

namespace fakedet {

int binary_label(UserClass c) { return c == UserClass::Authentic ? 0 : 1; }

std::string_view class_token(UserClass c) {
  switch (c) {
    case UserClass::Authentic: return "authentic";
    case UserClass::ActiveFake: return "active_fake";
    case UserClass::InactiveFake: return "inactive_fake";
    case UserClass::Spammer: return "spammer";
  }
  return "?";
}

std::optional<UserClass> parse_class_token(std::string_view token) {
  for (UserClass c : kAllClasses) {
    if (token == class_token(c)) return c;
  }
  return std::nullopt;
}

int num_scheme_classes(Scheme scheme) {
  return scheme == Scheme::TwoClass ? 2 : kNumClasses;
}

int scheme_label(UserClass c, Scheme scheme) {
  return scheme == Scheme::TwoClass ? binary_label(c) : static_cast<int>(c);
}

std::string_view scheme_class_token(Scheme scheme, int index) {
  if (scheme == Scheme::TwoClass) return index == 0 ? "real" : "fake";
  return class_token(static_cast<UserClass>(index));
}

std::string_view scheme_token(Scheme scheme) {
  return scheme == Scheme::TwoClass ? "2" : "4";
}

std::array<double, FeatureVector::kCount> FeatureVector::to_array() const {
  return {pos, flw, flg, bl, pic, lin, cl, cz, ni,
          erl, erc, lt, hc, pr, fo, cs, pi};
}

FeatureVector FeatureVector::from_array(
    const std::array<double, kCount>& a) {
  FeatureVector v;
  v.pos = a[0]; v.flw = a[1]; v.flg = a[2]; v.bl = a[3]; v.pic = a[4];
  v.lin = a[5]; v.cl = a[6]; v.cz = a[7]; v.ni = a[8]; v.erl = a[9];
  v.erc = a[10]; v.lt = a[11]; v.hc = a[12]; v.pr = a[13]; v.fo = a[14];
  v.cs = a[15]; v.pi = a[16];
  return v;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char b : s) {
    if ((b & 0xC0) != 0x80) ++n;
  }
  return n;
}

namespace {

bool whitespace_only(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

}  // namespace

void validate_account(AccountRecord& account) {
  if (account.account_id.empty()) {
    throw DataError("account_id must be non-empty");
  }
  const std::string& id = account.account_id;
  if (account.followers < 0) {
    throw DataError("account '" + id + "': followers must be >= 0");
  }
  if (account.following < 0) {
    throw DataError("account '" + id + "': following must be >= 0");
  }
  for (std::size_t p = 0; p < account.posts.size(); ++p) {
    PostRecord& post = account.posts[p];
    const std::string where =
        "account '" + id + "', post " + std::to_string(p);
    if (post.likes < 0) throw DataError(where + ": likes must be >= 0");
    if (post.comments < 0) throw DataError(where + ": comments must be >= 0");
    for (std::string& tag : post.hashtags) {
      if (!tag.empty() && tag.front() == '#') tag.erase(0, 1);
      if (whitespace_only(tag)) {
        throw DataError(where + ": hashtags must not be whitespace-only");
      }
    }
  }
  std::stable_sort(account.posts.begin(), account.posts.end(),
                   [](const PostRecord& a, const PostRecord& b) {
                     return a.posted_at < b.posted_at;
                   });
}

}  // namespace fakedet
