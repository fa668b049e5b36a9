#include "prtrust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "prtrust/errors.hpp"

namespace prtrust {

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::action: return "action";
    case Dimension::commitment: return "commitment";
    case Dimension::competence: return "competence";
    case Dimension::institutional: return "institutional";
    case Dimension::personality: return "personality";
    case Dimension::transferred: return "transferred";
  }
  return "?";
}

Dimension parse_dimension(std::string_view s) {
  for (Dimension d : kDimensions) {
    if (to_string(d) == s) return d;
  }
  throw ParseError("unknown dimension '" + std::string(s) + "'");
}

std::string_view to_string(PropensitySource s) {
  return s == PropensitySource::closure_history ? "closure_history" : "snapshot";
}

std::string_view to_string(CommentSource s) {
  switch (s) {
    case CommentSource::issue_comment: return "issue_comment";
    case CommentSource::review_comment: return "review_comment";
    case CommentSource::review: return "review";
  }
  return "?";
}

bool is_bot(std::string_view login) {
  constexpr std::string_view kSuffix = "[bot]";
  return login.size() >= kSuffix.size() && login.substr(login.size() - kSuffix.size()) == kSuffix;
}

std::optional<double> PriorRecord::acceptance_rate() const {
  if (decided == 0) return std::nullopt;
  return static_cast<double>(accepted) / static_cast<double>(decided);
}

PriorRecord prior_record(std::string_view login, std::int64_t before, const RepoSnapshot& snapshot,
                         std::size_t window) {
  // Pulls are ascending by number, so the window is the tail of the prefix
  // of PRs numbered below `before`.
  const auto end = std::lower_bound(
      snapshot.pulls.begin(), snapshot.pulls.end(), before,
      [](const PullRequest& p, std::int64_t n) { return p.number < n; });
  const auto available = static_cast<std::size_t>(end - snapshot.pulls.begin());
  const auto begin = end - static_cast<std::ptrdiff_t>(std::min(window, available));

  PriorRecord rec;
  for (auto it = begin; it != end; ++it) {
    if (it->author != login) continue;
    ++rec.total;
    const Outcome o = outcome(*it);
    if (o != Outcome::pending) ++rec.decided;
    if (o == Outcome::accepted) ++rec.accepted;
  }
  return rec;
}

namespace {

const UserProfile& require_user(const RepoSnapshot& snapshot, std::string_view login) {
  const UserProfile* u = snapshot.find_user(login);
  if (u == nullptr) throw UnknownLoginError(std::string(login));
  return *u;
}

bool counts(const MetricsConfig& config, const Login& login) {
  return !(config.exclude_bots && is_bot(login));
}

bool has_write_access(const UserProfile& u) {
  return !u.permission_unknown &&
         (u.permission == Permission::write || u.permission == Permission::admin);
}

}  // namespace

DimensionScore action_score(const PullRequest& pr, const RepoSnapshot& snapshot,
                            const MetricsConfig& config) {
  ActionEvidence ev;
  auto feedback = [&](const Login& author, Timestamp at) {
    if (author == pr.author) return;
    if (!ev.first_feedback_at || at < *ev.first_feedback_at) ev.first_feedback_at = at;
  };

  for (const auto* list : {&pr.issue_comments, &pr.review_comments}) {
    for (const Comment& c : *list) {
      if (!counts(config, c.author)) continue;
      ++ev.comment_count;
      if (c.author != pr.author) ++ev.non_author_comment_count;
      feedback(c.author, c.created_at);
    }
  }
  for (const Review& r : pr.reviews) {
    if (!counts(config, r.author)) continue;
    if (!r.body.empty()) {
      ++ev.comment_count;
      if (r.author != pr.author) ++ev.non_author_comment_count;
    }
    feedback(r.author, r.submitted_at);
  }

  const Timestamp end = pr.closed_at.value_or(snapshot.fetched_at);
  const std::int64_t elapsed = std::max<std::int64_t>(0, end - pr.created_at);
  ev.active_days = std::max<std::int64_t>(1, (elapsed + kSecondsPerDay - 1) / kSecondsPerDay);
  ev.frequency = static_cast<double>(ev.comment_count) / static_cast<double>(ev.active_days);

  if (ev.first_feedback_at) {
    ev.revision_commits = static_cast<std::uint64_t>(
        std::count_if(pr.commits.begin(), pr.commits.end(), [&](const CommitEvent& c) {
          return c.committed_at > *ev.first_feedback_at;
        }));
  }

  const double freq_part = std::min(ev.frequency / config.f_cap, 1.0);
  const double revision_part = ev.revision_commits > 0 ? 1.0 : 0.0;
  const double score = 0.5 * freq_part + 0.5 * revision_part;
  return DimensionScore{Dimension::action, score, std::move(ev)};
}

DimensionScore commitment_score(const PullRequest& pr) {
  CommitmentEvidence ev;

  std::map<Login, Timestamp> asked;  // earliest request per requestee
  for (const ReviewRequest& rr : pr.review_requests) {
    auto [it, inserted] = asked.emplace(rr.requestee, rr.requested_at);
    if (!inserted && rr.requested_at < it->second) it->second = rr.requested_at;
  }

  auto replied_after = [&](const Login& who, Timestamp since) {
    auto by = [&](const Comment& c) { return c.author == who && c.created_at >= since; };
    return std::any_of(pr.reviews.begin(), pr.reviews.end(),
                       [&](const Review& r) { return r.author == who && r.submitted_at >= since; }) ||
           std::any_of(pr.issue_comments.begin(), pr.issue_comments.end(), by) ||
           std::any_of(pr.review_comments.begin(), pr.review_comments.end(), by);
  };

  ev.requested = asked.size();
  for (const auto& [who, since] : asked) {
    if (replied_after(who, since)) ev.responders.push_back(who);
  }
  ev.responded = ev.responders.size();
  ev.any_response = ev.responded >= 1;

  for (const Review& r : pr.reviews) {
    if (r.verdict != ReviewVerdict::changes_requested) continue;
    ++ev.changes_requested_reviews;
    const bool followed = std::any_of(pr.commits.begin(), pr.commits.end(), [&](const CommitEvent& c) {
      return c.author == pr.author && c.committed_at > r.submitted_at;
    });
    if (!followed) ev.author_addressed = false;
  }

  std::optional<double> score;
  std::optional<double> ratio;
  if (ev.requested > 0) {
    ratio = static_cast<double>(ev.responded) / static_cast<double>(ev.requested);
  }
  if (ev.changes_requested_reviews > 0) {
    const double addressed = ev.author_addressed ? 1.0 : 0.0;
    score = ratio ? 0.7 * *ratio + 0.3 * addressed : addressed;
  } else {
    score = ratio;
  }
  return DimensionScore{Dimension::commitment, score, std::move(ev)};
}

DimensionScore competence_score(const PullRequest& pr, const RepoSnapshot& snapshot,
                                std::size_t window) {
  const UserProfile& author = require_user(snapshot, pr.author);
  const PriorRecord prior = prior_record(pr.author, pr.number, snapshot, window);

  CompetenceEvidence ev;
  ev.prior_pr_count = prior.total;
  ev.prior_decided = prior.decided;
  ev.prior_accepted = prior.accepted;
  ev.prior_acceptance_rate = prior.acceptance_rate();
  ev.followers = author.followers;
  ev.has_write = has_write_access(author);
  ev.permission_unknown = author.permission_unknown;

  ev.history_component = ev.prior_acceptance_rate;
  // log10 scaling saturating at 999 followers.
  ev.follower_component =
      std::min(std::log10(1.0 + static_cast<double>(author.followers)) / 3.0, 1.0);
  if (!author.permission_unknown) ev.permission_component = ev.has_write ? 1.0 : 0.0;

  double sum = 0.0;
  int present = 0;
  for (const auto& c : {ev.history_component, ev.follower_component, ev.permission_component}) {
    if (c) {
      sum += *c;
      ++present;
    }
  }
  std::optional<double> score;
  if (present > 0) score = sum / present;
  return DimensionScore{Dimension::competence, score, std::move(ev)};
}

DimensionScore institutional_score(const PullRequest& pr, const RepoSnapshot& snapshot,
                                   const MetricsConfig& config) {
  const UserProfile& author = require_user(snapshot, pr.author);

  std::set<Login> parties;
  auto add = [&](const Login& who) {
    if (who != pr.author && counts(config, who)) parties.insert(who);
  };
  for (const Comment& c : pr.issue_comments) add(c.author);
  for (const Comment& c : pr.review_comments) add(c.author);
  for (const Review& r : pr.reviews) add(r.author);
  if (pr.closer) add(*pr.closer);

  InstitutionalEvidence ev;
  ev.counterparties = parties.size();
  ev.author_has_orgs = !author.orgs.empty();
  for (const Login& who : parties) {
    const UserProfile& u = require_user(snapshot, who);
    const bool overlap = std::any_of(u.orgs.begin(), u.orgs.end(),
                                     [&](const std::string& org) { return author.orgs.contains(org); });
    if (overlap) ev.shared_logins.push_back(who);
  }
  ev.shared = ev.shared_logins.size();

  std::optional<double> score;
  if (ev.counterparties > 0 && ev.author_has_orgs) {
    score = static_cast<double>(ev.shared) / static_cast<double>(ev.counterparties);
  }
  return DimensionScore{Dimension::institutional, score, std::move(ev)};
}

std::optional<Propensity> closure_propensity(std::string_view login, const RepoSnapshot& snapshot) {
  const UserProfile& user = require_user(snapshot, login);
  Propensity p;
  p.login = user.login;
  if (user.closure_history) {
    p.source = PropensitySource::closure_history;
    p.closed = user.closure_history->closed_count;
    p.accepted = user.closure_history->accepted_count;
  } else {
    p.source = PropensitySource::snapshot;
    for (const PullRequest& pr : snapshot.pulls) {
      if (pr.state == PrState::open || !pr.closer || *pr.closer != login) continue;
      ++p.closed;
      if (pr.state == PrState::merged) ++p.accepted;
    }
  }
  if (p.closed == 0) return std::nullopt;
  p.value = static_cast<double>(p.accepted) / static_cast<double>(p.closed);
  return p;
}

std::optional<double> personality_propensity(std::string_view login, const RepoSnapshot& snapshot) {
  if (auto p = closure_propensity(login, snapshot)) return p->value;
  return std::nullopt;
}

DimensionScore personality_score(const PullRequest& pr, const RepoSnapshot& snapshot) {
  PersonalityEvidence ev;
  if (pr.closer) ev.closer = closure_propensity(*pr.closer, snapshot);

  std::set<Login> reviewers;
  for (const Review& r : pr.reviews) {
    if (r.author != pr.author) reviewers.insert(r.author);
  }
  for (const Login& who : reviewers) {
    if (auto p = closure_propensity(who, snapshot)) ev.reviewers.push_back(std::move(*p));
  }

  std::optional<double> score;
  if (ev.closer) {
    score = ev.closer->value;
  } else if (!ev.reviewers.empty()) {
    score = std::max_element(ev.reviewers.begin(), ev.reviewers.end(),
                             [](const Propensity& a, const Propensity& b) { return a.value < b.value; })
                ->value;
  }
  return DimensionScore{Dimension::personality, score, std::move(ev)};
}

namespace {

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

// Whole-word third-person possessive inside an already-lowercased span.
bool has_possessive(std::string_view span) {
  static constexpr std::string_view kWords[] = {"his", "her", "hers", "their", "theirs"};
  std::size_t i = 0;
  while (i < span.size()) {
    while (i < span.size() && !is_word_char(span[i])) ++i;
    const std::size_t start = i;
    while (i < span.size() && is_word_char(span[i])) ++i;
    const std::string_view word = span.substr(start, i - start);
    for (std::string_view w : kWords) {
      if (word == w) return true;
    }
  }
  return false;
}

}  // namespace

DimensionScore transferred_detect(const PullRequest& pr, const RepoSnapshot& snapshot,
                                  const VouchLexicon& lexicon, const MetricsConfig& config) {
  const std::string author_lower = ascii_lower(pr.author);
  std::map<Login, bool> established;
  auto is_established = [&](const Login& who) {
    auto it = established.find(who);
    if (it != established.end()) return it->second;
    const UserProfile& u = require_user(snapshot, who);
    bool ok = has_write_access(u);
    if (!ok) {
      const PriorRecord prior = prior_record(who, pr.number, snapshot, config.competence_window);
      ok = prior.total >= 5 && prior.acceptance_rate().value_or(0.0) >= 0.5;
    }
    established.emplace(who, ok);
    return ok;
  };

  TransferredEvidence ev;
  auto inspect = [&](std::int64_t id, CommentSource source, const Login& who,
                     const std::string& body) {
    if (who == pr.author || !counts(config, who) || body.empty()) return;
    const auto hits = lexicon.match_all(body);
    if (hits.empty()) return;
    const std::string lowered = ascii_lower(body);
    const bool names_author = lowered.find(author_lower) != std::string::npos;
    const LexiconHit* chosen = nullptr;
    for (const LexiconHit& h : hits) {
      const std::string_view span(lowered.data() + h.span.begin, h.span.end - h.span.begin);
      if (names_author || has_possessive(span)) {
        chosen = &h;
        break;
      }
    }
    if (chosen == nullptr || !is_established(who)) return;
    ev.vouches.push_back(Vouch{id, source, lexicon.patterns()[chosen->pattern_index].source(), who});
  };

  for (const Comment& c : pr.issue_comments) inspect(c.id, CommentSource::issue_comment, c.author, c.body);
  for (const Comment& c : pr.review_comments) inspect(c.id, CommentSource::review_comment, c.author, c.body);
  for (const Review& r : pr.reviews) inspect(r.id, CommentSource::review, r.author, r.body);

  const double score = ev.vouches.empty() ? 0.0 : 1.0;
  return DimensionScore{Dimension::transferred, score, std::move(ev)};
}

}  // namespace prtrust
