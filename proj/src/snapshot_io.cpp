#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "prtrust/corpus.hpp"
#include "prtrust/errors.hpp"

namespace prtrust {

using nlohmann::json;

namespace {

// Walks a JSON value while remembering where it is, so parse errors read
// like "pulls[3].reviews[0].verdict: expected string".
class Field {
 public:
  Field(const json& value, std::string path) : v_(value), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError((path_.empty() ? std::string("document") : path_) + ": " + what);
  }

  Field at(const char* key) const {
    if (!v_.is_object()) fail("expected object");
    auto it = v_.find(key);
    if (it == v_.end()) {
      throw ParseError(join(key) + ": missing required field");
    }
    return Field(*it, join(key));
  }

  std::optional<Field> maybe(const char* key) const {
    if (!v_.is_object()) fail("expected object");
    auto it = v_.find(key);
    if (it == v_.end() || it->is_null()) return std::nullopt;
    return Field(*it, join(key));
  }

  std::string str() const {
    if (!v_.is_string()) fail("expected string");
    return v_.get<std::string>();
  }

  std::int64_t integer() const {
    if (!v_.is_number_integer()) fail("expected integer");
    return v_.get<std::int64_t>();
  }

  std::uint64_t count() const {
    if (!v_.is_number_integer() || (v_.is_number_integer() && !v_.is_number_unsigned() &&
                                    v_.get<std::int64_t>() < 0)) {
      fail("expected non-negative integer");
    }
    return v_.get<std::uint64_t>();
  }

  bool boolean() const {
    if (!v_.is_boolean()) fail("expected boolean");
    return v_.get<bool>();
  }

  Timestamp time() const {
    const std::string s = str();
    try {
      return parse_timestamp(s);
    } catch (const ParseError& e) {
      fail(e.what());
    }
  }

  template <typename Fn>
  void each(Fn&& fn) const {
    if (!v_.is_array()) fail("expected array");
    for (std::size_t i = 0; i < v_.size(); ++i) {
      fn(Field(v_[i], path_ + "[" + std::to_string(i) + "]"));
    }
  }

  template <typename Parse>
  auto as(Parse&& parse) const {
    const std::string s = str();
    try {
      return parse(s);
    } catch (const ParseError& e) {
      fail(e.what());
    }
  }

 private:
  std::string join(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& v_;
  std::string path_;
};

Comment read_comment(const Field& f) {
  Comment c;
  c.id = f.at("id").integer();
  c.author = f.at("author").str();
  c.created_at = f.at("created_at").time();
  c.body = f.at("body").str();
  return c;
}

Review read_review(const Field& f) {
  Review r;
  r.id = f.at("id").integer();
  r.author = f.at("author").str();
  r.submitted_at = f.at("submitted_at").time();
  r.verdict = f.at("verdict").as(parse_review_verdict);
  r.body = f.at("body").str();
  return r;
}

PullRequest read_pull(const Field& f) {
  PullRequest pr;
  pr.number = f.at("number").integer();
  pr.author = f.at("author").str();
  pr.state = f.at("state").as(parse_pr_state);
  pr.created_at = f.at("created_at").time();
  if (auto c = f.maybe("closed_at")) pr.closed_at = c->time();
  if (auto c = f.maybe("closer")) pr.closer = c->str();
  f.at("labels").each([&](const Field& l) { pr.labels.insert(l.str()); });
  pr.contribution_kind = f.at("contribution_kind").as(parse_contribution_kind);
  f.at("files").each([&](const Field& x) { pr.files.push_back(x.str()); });
  f.at("commits").each([&](const Field& x) {
    pr.commits.push_back(CommitEvent{x.at("sha").str(), x.at("author").str(),
                                     x.at("committed_at").time()});
  });
  f.at("issue_comments").each([&](const Field& x) { pr.issue_comments.push_back(read_comment(x)); });
  f.at("review_comments").each([&](const Field& x) { pr.review_comments.push_back(read_comment(x)); });
  f.at("reviews").each([&](const Field& x) { pr.reviews.push_back(read_review(x)); });
  f.at("review_requests").each([&](const Field& x) {
    pr.review_requests.push_back(ReviewRequest{x.at("requestee").str(), x.at("requested_at").time()});
  });
  return pr;
}

UserProfile read_user(const Field& f) {
  UserProfile u;
  u.login = f.at("login").str();
  u.followers = f.at("followers").count();
  f.at("orgs").each([&](const Field& o) { u.orgs.insert(o.str()); });
  u.permission = f.at("permission").as(parse_permission);
  if (auto pu = f.maybe("permission_unknown")) u.permission_unknown = pu->boolean();
  if (auto h = f.maybe("closure_history")) {
    u.closure_history = ClosureHistory{h->at("closed_count").count(), h->at("accepted_count").count()};
  }
  return u;
}

json comment_json(const Comment& c) {
  return {{"id", c.id}, {"author", c.author}, {"created_at", format_timestamp(c.created_at)},
          {"body", c.body}};
}

}  // namespace

nlohmann::json snapshot_to_json(const RepoSnapshot& s) {
  json users = json::array();
  for (const auto& [login, u] : s.users) {
    json j = {{"login", u.login},
              {"followers", u.followers},
              {"orgs", u.orgs},
              {"permission", to_string(u.permission)}};
    if (u.permission_unknown) j["permission_unknown"] = true;
    if (u.closure_history) {
      j["closure_history"] = {{"closed_count", u.closure_history->closed_count},
                              {"accepted_count", u.closure_history->accepted_count}};
    }
    users.push_back(std::move(j));
  }

  json pulls = json::array();
  for (const auto& pr : s.pulls) {
    json j = {{"number", pr.number},
              {"author", pr.author},
              {"state", to_string(pr.state)},
              {"created_at", format_timestamp(pr.created_at)},
              {"labels", pr.labels},
              {"contribution_kind", to_string(pr.contribution_kind)},
              {"files", pr.files}};
    if (pr.closed_at) j["closed_at"] = format_timestamp(*pr.closed_at);
    if (pr.closer) j["closer"] = *pr.closer;

    json commits = json::array();
    for (const auto& c : pr.commits) {
      commits.push_back({{"sha", c.sha}, {"author", c.author},
                         {"committed_at", format_timestamp(c.committed_at)}});
    }
    j["commits"] = std::move(commits);

    json ic = json::array();
    for (const auto& c : pr.issue_comments) ic.push_back(comment_json(c));
    j["issue_comments"] = std::move(ic);
    json rc = json::array();
    for (const auto& c : pr.review_comments) rc.push_back(comment_json(c));
    j["review_comments"] = std::move(rc);

    json reviews = json::array();
    for (const auto& r : pr.reviews) {
      reviews.push_back({{"id", r.id},
                         {"author", r.author},
                         {"submitted_at", format_timestamp(r.submitted_at)},
                         {"verdict", to_string(r.verdict)},
                         {"body", r.body}});
    }
    j["reviews"] = std::move(reviews);

    json requests = json::array();
    for (const auto& rr : pr.review_requests) {
      requests.push_back({{"requestee", rr.requestee},
                          {"requested_at", format_timestamp(rr.requested_at)}});
    }
    j["review_requests"] = std::move(requests);
    pulls.push_back(std::move(j));
  }

  return {{"repo",
           {{"owner", s.repo_owner},
            {"name", s.repo_name},
            {"fetched_at", format_timestamp(s.fetched_at)}}},
          {"users", std::move(users)},
          {"pulls", std::move(pulls)}};
}

RepoSnapshot snapshot_from_json(const nlohmann::json& doc) {
  const Field root(doc, "");
  if (!doc.is_object()) root.fail("expected object");
  RepoSnapshot s;
  const Field repo = root.at("repo");
  s.repo_owner = repo.at("owner").str();
  s.repo_name = repo.at("name").str();
  s.fetched_at = repo.at("fetched_at").time();

  root.at("users").each([&](const Field& f) {
    UserProfile u = read_user(f);
    const std::string login = u.login;
    if (!s.users.emplace(login, std::move(u)).second) {
      throw ValidationError("duplicate user login '" + login + "'", std::nullopt, login);
    }
  });
  root.at("pulls").each([&](const Field& f) { s.pulls.push_back(read_pull(f)); });
  return s;
}

RepoSnapshot parse_snapshot(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  RepoSnapshot s = snapshot_from_json(doc);
  validate_snapshot(s);
  return s;
}

RepoSnapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_snapshot(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what(), e.pr_number(), e.login());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string dump_snapshot(const RepoSnapshot& snapshot) {
  return snapshot_to_json(snapshot).dump(2) + "\n";
}

void save_snapshot(const RepoSnapshot& snapshot, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write snapshot '" + path.string() + "'");
  out << dump_snapshot(snapshot);
  if (!out) throw IoError("failed writing snapshot '" + path.string() + "'");
}

}  // namespace prtrust
