#include "prtrust/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

#include "prtrust/errors.hpp"

namespace prtrust {

const PullRequest* RepoSnapshot::find_pull(std::int64_t number) const {
  auto it = std::lower_bound(pulls.begin(), pulls.end(), number,
                             [](const PullRequest& p, std::int64_t n) { return p.number < n; });
  if (it != pulls.end() && it->number == number) return &*it;
  // Unvalidated snapshots may be unsorted.
  auto lin = std::find_if(pulls.begin(), pulls.end(),
                          [number](const PullRequest& p) { return p.number == number; });
  return lin == pulls.end() ? nullptr : &*lin;
}

const UserProfile* RepoSnapshot::find_user(std::string_view login) const {
  auto it = users.find(std::string(login));
  return it == users.end() ? nullptr : &it->second;
}

Outcome outcome(PrState state) {
  switch (state) {
    case PrState::merged:
      return Outcome::accepted;
    case PrState::closed_unmerged:
      return Outcome::rejected;
    case PrState::open:
      break;
  }
  return Outcome::pending;
}

Outcome outcome(const PullRequest& pr) { return outcome(pr.state); }

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

bool is_documentation_path(std::string_view path) {
  const std::string p = lower(path);
  std::string_view rest = p;
  // Directory segments (every segment but the last).
  while (true) {
    const auto slash = rest.find('/');
    if (slash == std::string_view::npos) break;
    const std::string_view segment = rest.substr(0, slash);
    if (segment == "docs" || segment == "doc") return true;
    rest.remove_prefix(slash + 1);
  }
  constexpr std::array<std::string_view, 4> kDocExtensions = {".md", ".rst", ".txt", ".adoc"};
  return std::any_of(kDocExtensions.begin(), kDocExtensions.end(),
                     [&](std::string_view ext) { return ends_with(rest, ext); });
}

ContributionKind classify_contribution(std::span<const std::string> files) {
  std::size_t docs = 0;
  for (const auto& f : files) docs += is_documentation_path(f) ? 1 : 0;
  if (files.empty() || docs == 0) return ContributionKind::code;
  return docs == files.size() ? ContributionKind::documentation : ContributionKind::mixed;
}

std::string_view to_string(PrState v) {
  switch (v) {
    case PrState::merged: return "merged";
    case PrState::closed_unmerged: return "closed_unmerged";
    case PrState::open: return "open";
  }
  return "?";
}

std::string_view to_string(Outcome v) {
  switch (v) {
    case Outcome::accepted: return "accepted";
    case Outcome::rejected: return "rejected";
    case Outcome::pending: return "pending";
  }
  return "?";
}

std::string_view to_string(ContributionKind v) {
  switch (v) {
    case ContributionKind::code: return "code";
    case ContributionKind::documentation: return "documentation";
    case ContributionKind::mixed: return "mixed";
  }
  return "?";
}

std::string_view to_string(ReviewVerdict v) {
  switch (v) {
    case ReviewVerdict::approved: return "approved";
    case ReviewVerdict::commented: return "commented";
    case ReviewVerdict::changes_requested: return "changes_requested";
    case ReviewVerdict::dismissed: return "dismissed";
  }
  return "?";
}

std::string_view to_string(Permission v) {
  switch (v) {
    case Permission::admin: return "admin";
    case Permission::write: return "write";
    case Permission::read: return "read";
    case Permission::none: return "none";
  }
  return "?";
}

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view s, const std::array<Enum, N>& values, const char* what) {
  for (Enum v : values) {
    if (to_string(v) == s) return v;
  }
  throw ParseError(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

}  // namespace

PrState parse_pr_state(std::string_view s) {
  return parse_enum(s, std::array{PrState::merged, PrState::closed_unmerged, PrState::open},
                    "state");
}

ContributionKind parse_contribution_kind(std::string_view s) {
  return parse_enum(s,
                    std::array{ContributionKind::code, ContributionKind::documentation,
                               ContributionKind::mixed},
                    "contribution_kind");
}

ReviewVerdict parse_review_verdict(std::string_view s) {
  return parse_enum(s,
                    std::array{ReviewVerdict::approved, ReviewVerdict::commented,
                               ReviewVerdict::changes_requested, ReviewVerdict::dismissed},
                    "verdict");
}

Permission parse_permission(std::string_view s) {
  return parse_enum(
      s, std::array{Permission::admin, Permission::write, Permission::read, Permission::none},
      "permission");
}

// ---------------------------------------------------------------------------
// Validation

namespace {

class Validator {
 public:
  explicit Validator(const RepoSnapshot& s) : s_(s) {}

  void run() {
    if (s_.repo_owner.empty()) fail("repo.owner is empty");
    if (s_.repo_name.empty()) fail("repo.name is empty");
    for (const auto& [key, user] : s_.users) check_user(key, user);

    std::optional<std::int64_t> previous;
    for (const auto& pr : s_.pulls) {
      if (pr.number <= 0) fail("pull number must be positive", pr.number);
      if (previous && pr.number <= *previous) {
        fail("pull numbers must be unique and strictly increasing (after " +
                 std::to_string(*previous) + ")",
             pr.number);
      }
      previous = pr.number;
      check_pull(pr);
    }
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::optional<std::int64_t> pr = std::nullopt,
                         const std::string& login = {}) const {
    std::string msg;
    if (pr) msg = "PR " + std::to_string(*pr) + ": ";
    msg += what;
    throw ValidationError(msg, pr, login);
  }

  void check_user(const std::string& key, const UserProfile& u) const {
    if (u.login.empty()) fail("user with empty login");
    if (key != u.login) fail("user map key '" + key + "' differs from login", {}, u.login);
    if (u.closure_history && u.closure_history->accepted_count > u.closure_history->closed_count) {
      fail("user '" + u.login + "': closure_history accepted_count exceeds closed_count", {},
           u.login);
    }
  }

  void resolve(const PullRequest& pr, const std::string& login, const std::string& where) const {
    if (login.empty()) fail(where + " has an empty login", pr.number);
    if (!s_.users.contains(login)) {
      fail("unknown login '" + login + "' referenced by " + where, pr.number, login);
    }
  }

  void in_window(const PullRequest& pr, Timestamp t, const std::string& where) const {
    if (t < pr.created_at) {
      fail(where + " timestamp " + format_timestamp(t) + " precedes created_at", pr.number);
    }
    if (t > s_.fetched_at) {
      fail(where + " timestamp " + format_timestamp(t) + " is after fetched_at", pr.number);
    }
  }

  static bool is_hex(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
      return std::isxdigit(c) != 0;
    });
  }

  void check_pull(const PullRequest& pr) const {
    resolve(pr, pr.author, "author");
    if (pr.created_at > s_.fetched_at) fail("created_at is after fetched_at", pr.number);

    if (pr.state == PrState::open) {
      if (pr.closed_at) fail("open pull request has closed_at", pr.number);
      if (pr.closer) fail("open pull request has a closer", pr.number);
    } else {
      if (!pr.closed_at) fail("closed pull request lacks closed_at", pr.number);
      if (!pr.closer) fail("closed pull request lacks closer", pr.number);
      if (*pr.closed_at < pr.created_at) fail("closed_at precedes created_at", pr.number);
      if (*pr.closed_at > s_.fetched_at) fail("closed_at is after fetched_at", pr.number);
      resolve(pr, *pr.closer, "closer");
    }

    std::unordered_set<std::int64_t> comment_ids;
    auto check_comments = [&](const std::vector<Comment>& list, const char* kind) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        const Comment& c = list[i];
        const std::string where = std::string(kind) + "[" + std::to_string(i) + "]";
        resolve(pr, c.author, where + ".author");
        in_window(pr, c.created_at, where);
        if (!comment_ids.insert(c.id).second) {
          fail("duplicate comment id " + std::to_string(c.id) + " at " + where, pr.number);
        }
      }
    };
    check_comments(pr.issue_comments, "issue_comments");
    check_comments(pr.review_comments, "review_comments");

    std::unordered_set<std::int64_t> review_ids;
    for (std::size_t i = 0; i < pr.reviews.size(); ++i) {
      const Review& r = pr.reviews[i];
      const std::string where = "reviews[" + std::to_string(i) + "]";
      resolve(pr, r.author, where + ".author");
      in_window(pr, r.submitted_at, where);
      if (!review_ids.insert(r.id).second) {
        fail("duplicate review id " + std::to_string(r.id), pr.number);
      }
    }

    for (std::size_t i = 0; i < pr.review_requests.size(); ++i) {
      const ReviewRequest& rr = pr.review_requests[i];
      const std::string where = "review_requests[" + std::to_string(i) + "]";
      resolve(pr, rr.requestee, where + ".requestee");
      if (rr.requestee == pr.author) {
        fail("review requested from the pull request author", pr.number, rr.requestee);
      }
      in_window(pr, rr.requested_at, where);
    }

    std::unordered_set<std::string> shas;
    for (std::size_t i = 0; i < pr.commits.size(); ++i) {
      const CommitEvent& c = pr.commits[i];
      const std::string where = "commits[" + std::to_string(i) + "]";
      if (!is_hex(c.sha)) fail(where + ".sha is not a hex string", pr.number);
      if (!shas.insert(c.sha).second) fail("duplicate commit sha " + c.sha, pr.number);
      resolve(pr, c.author, where + ".author");
      in_window(pr, c.committed_at, where);
    }
  }

  const RepoSnapshot& s_;
};

}  // namespace

void validate_snapshot(const RepoSnapshot& snapshot) { Validator(snapshot).run(); }

}  // namespace prtrust
