#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prtrust/corpus.hpp"

namespace prtrust::testing {

/// 2022-01-01T00:00:00Z
inline constexpr Timestamp kT0{1640995200};
inline constexpr std::int64_t kHour = 3600;
inline constexpr std::int64_t kDay = 86400;

UserProfile make_user(const std::string& login, std::uint64_t followers = 0,
                      std::set<std::string> orgs = {}, Permission permission = Permission::none,
                      bool permission_unknown = false);

PullRequest make_pull(std::int64_t number, const std::string& author, PrState state, Timestamp created,
                      std::optional<Timestamp> closed = std::nullopt,
                      std::optional<std::string> closer = std::nullopt);

RepoSnapshot make_snapshot(std::vector<UserProfile> users, std::vector<PullRequest> pulls,
                           Timestamp fetched_at);

/// Deterministic pseudo-random repository with `pull_count` PRs covering every
/// dimension: bots, unknown permissions, closure histories, review requests,
/// changes-requested reviews, vouching comments, open PRs.
RepoSnapshot synthetic_snapshot(std::uint64_t seed, int pull_count);

/// 75 accepted + 25 rejected PRs: accepted average 4 comments/day, rejected
/// 1.25; 66 + 9 carry post-feedback commits; 32 + 3 had a requested reviewer
/// respond.
RepoSnapshot airflow_shaped_snapshot();

/// `accepted` merged and `rejected` closed-unmerged PRs plus two open ones,
/// interleaved by number.
RepoSnapshot stratified_snapshot(int accepted, int rejected);

/// Fifty comments of ordinary review chatter with no vouching language.
const std::vector<std::string>& ordinary_review_chatter();

/// The verbatim vouching comment from the airflow study exemplar.
inline const std::string kVouchExemplar =
    "Syed is a new member of our team, we already reviewed his work :) Thanks for reaching out though";

/// Drops users no PR references.
void prune_users(RepoSnapshot& snapshot);

}  // namespace prtrust::testing
