#include "prtrust/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "prtrust/errors.hpp"

namespace prtrust {

void Weights::validate() const {
  for (Dimension d : kDimensions) {
    const double w = values[index_of(d)];
    if (!std::isfinite(w) || w <= 0.0) {
      throw ConfigError("weight for " + std::string(to_string(d)) + " must be a positive number");
    }
  }
}

std::uint64_t SamplePlan::accepted_count() const {
  const auto n = static_cast<double>(per_repo_n);
  const auto rounded = static_cast<std::uint64_t>(std::floor(accept_ratio * n + 0.5));
  return std::min(rounded, per_repo_n);
}

void SamplePlan::validate() const {
  if (per_repo_n < 1) throw ConfigError("per_repo_n must be at least 1");
  if (!(accept_ratio >= 0.0 && accept_ratio <= 1.0)) {
    throw ConfigError("accept_ratio must lie in [0, 1]");
  }
}

std::optional<double> combine(const std::array<DimensionScore, 6>& scores, const Weights& weights) {
  double weighted = 0.0;
  double total = 0.0;
  for (const DimensionScore& s : scores) {
    if (!s.score) continue;
    weighted += weights[s.dimension] * *s.score;
    total += weights[s.dimension];
  }
  if (total <= 0.0) return std::nullopt;
  return std::clamp(weighted / total, 0.0, 1.0);
}

TrustProfile build_profile(const PullRequest& pr, const RepoSnapshot& snapshot,
                           const MetricsConfig& metrics, const Weights& weights) {
  TrustProfile p;
  p.pr_number = pr.number;
  p.outcome = outcome(pr);
  p.scores = {action_score(pr, snapshot, metrics),
              commitment_score(pr),
              competence_score(pr, snapshot, metrics.competence_window),
              institutional_score(pr, snapshot, metrics),
              personality_score(pr, snapshot),
              transferred_detect(pr, snapshot, metrics.lexicon, metrics)};
  p.coverage = static_cast<int>(
      std::count_if(p.scores.begin(), p.scores.end(), [](const DimensionScore& s) { return s.available(); }));
  p.overall = combine(p.scores, weights);
  return p;
}

namespace {

std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
  // Reject the low (2^64 mod bound) outputs so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = engine();
    if (r >= threshold) return r % bound;
  }
}

void shuffle(std::vector<std::int64_t>& items, std::mt19937_64& engine) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(engine, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace

std::vector<std::int64_t> stratified_sample(const RepoSnapshot& snapshot, const SamplePlan& plan) {
  plan.validate();
  std::vector<std::int64_t> accepted;
  std::vector<std::int64_t> rejected;
  for (const PullRequest& pr : snapshot.pulls) {
    switch (outcome(pr)) {
      case Outcome::accepted: accepted.push_back(pr.number); break;
      case Outcome::rejected: rejected.push_back(pr.number); break;
      case Outcome::pending: break;
    }
  }
  std::sort(accepted.begin(), accepted.end());
  std::sort(rejected.begin(), rejected.end());

  const std::uint64_t want_accepted = plan.accepted_count();
  const std::uint64_t want_rejected = plan.rejected_count();
  if (accepted.size() < want_accepted) {
    throw InsufficientStratumError("accepted", want_accepted, accepted.size());
  }
  if (rejected.size() < want_rejected) {
    throw InsufficientStratumError("rejected", want_rejected, rejected.size());
  }

  std::mt19937_64 engine(plan.seed);
  shuffle(accepted, engine);
  shuffle(rejected, engine);

  std::vector<std::int64_t> out(accepted.begin(), accepted.begin() + static_cast<std::ptrdiff_t>(want_accepted));
  out.insert(out.end(), rejected.begin(), rejected.begin() + static_cast<std::ptrdiff_t>(want_rejected));
  std::sort(out.begin(), out.end());
  return out;
}

RepoSnapshot restrict_snapshot(const RepoSnapshot& snapshot, std::span<const std::int64_t> numbers) {
  std::vector<std::int64_t> wanted(numbers.begin(), numbers.end());
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

  RepoSnapshot out;
  out.repo_owner = snapshot.repo_owner;
  out.repo_name = snapshot.repo_name;
  out.fetched_at = snapshot.fetched_at;
  out.users = snapshot.users;
  for (std::int64_t n : wanted) {
    const PullRequest* pr = snapshot.find_pull(n);
    if (pr == nullptr) throw ValidationError("PR " + std::to_string(n) + " is not in the snapshot", n);
    out.pulls.push_back(*pr);
  }
  for (auto& [login, user] : out.users) {
    if (user.closure_history) continue;
    if (auto p = closure_propensity(login, snapshot)) {
      user.closure_history = ClosureHistory{p->closed, p->accepted};
    }
  }
  return out;
}

namespace {

class StratumAccumulator {
 public:
  void add(const TrustProfile& p) {
    ++s_.size;
    const auto& action = std::get<ActionEvidence>(p[Dimension::action].evidence);
    frequency_sum_ += action.frequency;
    if (action.revision_commits > 0) ++s_.with_post_feedback_commits;

    if (std::get<CommitmentEvidence>(p[Dimension::commitment].evidence).any_response) {
      ++s_.with_review_response;
    }

    const auto& comp = std::get<CompetenceEvidence>(p[Dimension::competence].evidence);
    if (comp.prior_accepted == 0) ++s_.no_prior_accepted;
    if (comp.prior_pr_count == 0) ++s_.first_pr;

    if (std::get<InstitutionalEvidence>(p[Dimension::institutional].evidence).shared > 0) {
      ++s_.with_shared_org;
    }

    const auto& pers = std::get<PersonalityEvidence>(p[Dimension::personality].evidence);
    auto full = [](const Propensity& x) { return x.accepted == x.closed; };
    const bool closer_full = pers.closer && full(*pers.closer);
    if (closer_full) ++s_.closer_full_propensity;
    if (closer_full || std::any_of(pers.reviewers.begin(), pers.reviewers.end(), full)) {
      ++s_.closer_or_reviewer_full_propensity;
    }

    if (!std::get<TransferredEvidence>(p[Dimension::transferred].evidence).vouches.empty()) {
      ++s_.with_transferred_trust;
    }

    if (p.overall) {
      overall_sum_ += *p.overall;
      ++overall_n_;
    }
    for (const DimensionScore& d : p.scores) {
      if (!d.score) continue;
      score_sum_[index_of(d.dimension)] += *d.score;
      ++score_n_[index_of(d.dimension)];
    }
  }

  StratumSummary finish() const {
    StratumSummary out = s_;
    if (s_.size > 0) out.mean_comment_frequency = frequency_sum_ / static_cast<double>(s_.size);
    if (overall_n_ > 0) out.mean_overall = overall_sum_ / static_cast<double>(overall_n_);
    for (std::size_t i = 0; i < score_sum_.size(); ++i) {
      if (score_n_[i] > 0) out.mean_scores[i] = score_sum_[i] / static_cast<double>(score_n_[i]);
    }
    return out;
  }

 private:
  StratumSummary s_;
  double frequency_sum_ = 0.0;
  double overall_sum_ = 0.0;
  std::uint64_t overall_n_ = 0;
  std::array<double, 6> score_sum_{};
  std::array<std::uint64_t, 6> score_n_{};
};

}  // namespace

RepoSummary summarize(std::span<const TrustProfile> profiles, const RepoSnapshot& snapshot) {
  if (profiles.empty()) throw EmptyInputError("cannot summarize an empty list of profiles");

  // Fold in PR-number order so the floating-point sums do not depend on input order.
  std::vector<const TrustProfile*> ordered;
  ordered.reserve(profiles.size());
  for (const TrustProfile& p : profiles) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(),
            [](const TrustProfile* a, const TrustProfile* b) { return a->pr_number < b->pr_number; });

  StratumAccumulator accepted;
  StratumAccumulator rejected;
  StratumAccumulator total;
  RepoSummary out;
  for (const TrustProfile* p : ordered) {
    const PullRequest* pr = snapshot.find_pull(p->pr_number);
    if (pr == nullptr) {
      throw ValidationError("profile for PR " + std::to_string(p->pr_number) +
                                " does not belong to the snapshot",
                            p->pr_number);
    }
    switch (outcome(*pr)) {
      case Outcome::accepted:
        accepted.add(*p);
        total.add(*p);
        break;
      case Outcome::rejected:
        rejected.add(*p);
        total.add(*p);
        break;
      case Outcome::pending:
        ++out.pending_excluded;
        break;
    }
  }
  out.accepted = accepted.finish();
  out.rejected = rejected.finish();
  out.total = total.finish();
  return out;
}

}  // namespace prtrust
