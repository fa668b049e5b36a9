#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prtrust/corpus.hpp"
#include "prtrust/metrics.hpp"

namespace prtrust {

/// Per-dimension weights for the overall score. Every weight must be finite
/// and strictly positive; the combiner renormalizes over available dimensions.
struct Weights {
  std::array<double, 6> values = {1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6};

  double operator[](Dimension d) const { return values[index_of(d)]; }
  double& operator[](Dimension d) { return values[index_of(d)]; }
  bool operator==(const Weights&) const = default;

  /// Throws ConfigError.
  void validate() const;
};

struct SamplePlan {
  std::uint64_t per_repo_n = 25;
  double accept_ratio = 0.75;
  std::uint64_t seed = 0;

  /// round-half-up(accept_ratio * per_repo_n)
  std::uint64_t accepted_count() const;
  std::uint64_t rejected_count() const { return per_repo_n - accepted_count(); }
  /// Throws ConfigError.
  void validate() const;

  bool operator==(const SamplePlan&) const = default;
};

struct TrustProfile {
  std::int64_t pr_number = 0;
  Outcome outcome = Outcome::pending;
  std::array<DimensionScore, 6> scores;
  std::optional<double> overall;
  int coverage = 0;

  const DimensionScore& operator[](Dimension d) const { return scores[index_of(d)]; }
  bool operator==(const TrustProfile&) const = default;
};

/// Weighted mean of the available scores with weights renormalized over the
/// available dimensions; empty when nothing is available.
std::optional<double> combine(const std::array<DimensionScore, 6>& scores, const Weights& weights);

TrustProfile build_profile(const PullRequest& pr, const RepoSnapshot& snapshot,
                           const MetricsConfig& metrics, const Weights& weights = {});

/// Seeded stratified draw of PR numbers (ascending). Each outcome stratum is
/// sorted by PR number, shuffled with Fisher-Yates driven by std::mt19937_64
/// seeded with `plan.seed` (accepted stratum first, then rejected, same
/// engine), and the required prefix is taken. Indices are drawn with
/// rejection sampling on the raw 64-bit engine output, so results are
/// identical on every platform. Open PRs are never sampled.
/// Throws InsufficientStratumError.
std::vector<std::int64_t> stratified_sample(const RepoSnapshot& snapshot, const SamplePlan& plan);

/// Snapshot containing only the listed PRs. Users keep their profiles; a user
/// without closure_history who closed PRs in the full snapshot gets those
/// counts as closure_history, so closer propensities survive the restriction.
RepoSnapshot restrict_snapshot(const RepoSnapshot& snapshot, std::span<const std::int64_t> numbers);

/// Statistics over one outcome stratum. Means are over available values only
/// and are empty when nothing contributed.
struct StratumSummary {
  std::uint64_t size = 0;
  std::optional<double> mean_comment_frequency;
  std::uint64_t with_post_feedback_commits = 0;
  std::uint64_t with_review_response = 0;
  /// Authors with no accepted PR before this one.
  std::uint64_t no_prior_accepted = 0;
  /// Authors making their first PR in the repository.
  std::uint64_t first_pr = 0;
  std::uint64_t with_shared_org = 0;
  std::uint64_t closer_full_propensity = 0;
  std::uint64_t closer_or_reviewer_full_propensity = 0;
  std::uint64_t with_transferred_trust = 0;
  std::optional<double> mean_overall;
  std::array<std::optional<double>, 6> mean_scores;

  bool operator==(const StratumSummary&) const = default;
};

struct RepoSummary {
  StratumSummary accepted;
  StratumSummary rejected;
  /// accepted + rejected; open PRs are excluded from every stratum.
  StratumSummary total;
  std::uint64_t pending_excluded = 0;

  bool operator==(const RepoSummary&) const = default;
};

/// Throws EmptyInputError when `profiles` is empty.
RepoSummary summarize(std::span<const TrustProfile> profiles, const RepoSnapshot& snapshot);

}  // namespace prtrust
