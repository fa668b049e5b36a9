#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "prtrust/corpus.hpp"
#include "prtrust/lexicon.hpp"

namespace prtrust {

enum class Dimension { action, commitment, competence, institutional, personality, transferred };

inline constexpr std::array<Dimension, 6> kDimensions = {
    Dimension::action,        Dimension::commitment,  Dimension::competence,
    Dimension::institutional, Dimension::personality, Dimension::transferred};

constexpr std::size_t index_of(Dimension d) { return static_cast<std::size_t>(d); }
std::string_view to_string(Dimension d);
Dimension parse_dimension(std::string_view s);

struct MetricsConfig {
  /// Comments per day at which the frequency half of the action score saturates.
  double f_cap = 4.0;
  /// How many of the most recent earlier repo PRs count as an author's history.
  std::size_t competence_window = 1000;
  VouchLexicon lexicon = VouchLexicon::defaults();
  /// Drop logins ending in "[bot]" from comment and counterparty counts.
  bool exclude_bots = true;

  bool operator==(const MetricsConfig&) const = default;
};

bool is_bot(std::string_view login);

// ---- evidence records -------------------------------------------------------

struct ActionEvidence {
  std::uint64_t comment_count = 0;
  std::uint64_t non_author_comment_count = 0;
  std::int64_t active_days = 1;
  double frequency = 0.0;
  std::uint64_t revision_commits = 0;
  std::optional<Timestamp> first_feedback_at;

  bool operator==(const ActionEvidence&) const = default;
};

struct CommitmentEvidence {
  std::uint64_t requested = 0;
  std::uint64_t responded = 0;
  bool any_response = false;
  std::uint64_t changes_requested_reviews = 0;
  bool author_addressed = true;
  std::vector<Login> responders;

  bool operator==(const CommitmentEvidence&) const = default;
};

struct CompetenceEvidence {
  std::uint64_t prior_pr_count = 0;
  std::uint64_t prior_decided = 0;
  std::uint64_t prior_accepted = 0;
  std::optional<double> prior_acceptance_rate;
  std::uint64_t followers = 0;
  bool has_write = false;
  bool permission_unknown = false;
  std::optional<double> history_component;
  std::optional<double> follower_component;
  std::optional<double> permission_component;

  bool operator==(const CompetenceEvidence&) const = default;
};

struct InstitutionalEvidence {
  std::uint64_t counterparties = 0;
  std::uint64_t shared = 0;
  std::vector<Login> shared_logins;
  bool author_has_orgs = false;

  bool operator==(const InstitutionalEvidence&) const = default;
};

enum class PropensitySource { closure_history, snapshot };
std::string_view to_string(PropensitySource s);

/// A user's record of closing pull requests and the accepted fraction.
struct Propensity {
  Login login;
  std::uint64_t closed = 0;
  std::uint64_t accepted = 0;
  double value = 0.0;
  PropensitySource source = PropensitySource::snapshot;

  bool operator==(const Propensity&) const = default;
};

struct PersonalityEvidence {
  std::optional<Propensity> closer;
  /// Reviewers with a defined propensity, ordered by login.
  std::vector<Propensity> reviewers;

  bool operator==(const PersonalityEvidence&) const = default;
};

enum class CommentSource { issue_comment, review_comment, review };
std::string_view to_string(CommentSource s);

struct Vouch {
  std::int64_t comment_id = 0;
  CommentSource source = CommentSource::issue_comment;
  std::string pattern;
  Login voucher;

  bool operator==(const Vouch&) const = default;
};

struct TransferredEvidence {
  std::vector<Vouch> vouches;
  /// Lexicon detection is heuristic; always set.
  bool low_confidence = true;

  bool operator==(const TransferredEvidence&) const = default;
};

using Evidence = std::variant<ActionEvidence, CommitmentEvidence, CompetenceEvidence,
                              InstitutionalEvidence, PersonalityEvidence, TransferredEvidence>;

/// One dimension's result for one pull request. `score` is empty exactly when
/// the dimension is not available; when present it lies in [0, 1].
struct DimensionScore {
  Dimension dimension = Dimension::action;
  std::optional<double> score;
  Evidence evidence;

  bool available() const noexcept { return score.has_value(); }
  bool operator==(const DimensionScore&) const = default;
};

// ---- metric operations ------------------------------------------------------

DimensionScore action_score(const PullRequest& pr, const RepoSnapshot& snapshot,
                            const MetricsConfig& config = {});

DimensionScore commitment_score(const PullRequest& pr);

DimensionScore competence_score(const PullRequest& pr, const RepoSnapshot& snapshot,
                                std::size_t window = 1000);

DimensionScore institutional_score(const PullRequest& pr, const RepoSnapshot& snapshot,
                                   const MetricsConfig& config = {});

/// Closure record for `login`: the profile's closure_history when present,
/// otherwise counts over snapshot PRs the user closed. Empty when the user
/// closed nothing. Throws UnknownLoginError.
std::optional<Propensity> closure_propensity(std::string_view login, const RepoSnapshot& snapshot);

/// accepted_closed / total_closed, or empty when nothing was closed.
std::optional<double> personality_propensity(std::string_view login, const RepoSnapshot& snapshot);

DimensionScore personality_score(const PullRequest& pr, const RepoSnapshot& snapshot);

DimensionScore transferred_detect(const PullRequest& pr, const RepoSnapshot& snapshot,
                                  const VouchLexicon& lexicon, const MetricsConfig& config = {});

/// History of `login`'s PRs numbered below `before`, among the `window` most
/// recent such repo PRs.
struct PriorRecord {
  std::uint64_t total = 0;
  std::uint64_t decided = 0;
  std::uint64_t accepted = 0;
  std::optional<double> acceptance_rate() const;
};
PriorRecord prior_record(std::string_view login, std::int64_t before, const RepoSnapshot& snapshot,
                         std::size_t window);

}  // namespace prtrust
