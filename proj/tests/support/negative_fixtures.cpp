#include "negative_fixtures.hpp"

namespace prtrust::testing {

using nlohmann::json;

const std::vector<Malformed>& malformed_cases() {
  static const std::vector<Malformed> cases = {
      {"ghost commenter", [](json& d) { d["pulls"][1]["issue_comments"][0]["author"] = "ghost"; }, MalformedKind::validation, "PR 2"},
      {"ghost closer", [](json& d) { d["pulls"][0]["closer"] = "ghost"; }, MalformedKind::validation, "PR 1"},
      {"ghost reviewer", [](json& d) { d["pulls"][0]["reviews"][0]["author"] = "ghost"; }, MalformedKind::validation, "PR 1"},
      {"ghost commit author", [](json& d) { d["pulls"][0]["commits"][0]["author"] = "ghost"; }, MalformedKind::validation, "PR 1"},
      {"ghost requestee", [](json& d) { d["pulls"][1]["review_requests"][0]["requestee"] = "ghost"; }, MalformedKind::validation, "PR 2"},
      {"ghost author", [](json& d) { d["pulls"][2]["author"] = "ghost"; }, MalformedKind::validation, "PR 3"},
      {"duplicate number", [](json& d) { d["pulls"][1]["number"] = 1; }, MalformedKind::validation, "PR 1"},
      {"descending numbers", [](json& d) { d["pulls"][0]["number"] = 9; }, MalformedKind::validation, "PR 2"},
      {"zero number", [](json& d) { d["pulls"][0]["number"] = 0; }, MalformedKind::validation, "PR 0"},
      {"closed without closed_at", [](json& d) { d["pulls"][0].erase("closed_at"); }, MalformedKind::validation, "PR 1"},
      {"closed without closer", [](json& d) { d["pulls"][1].erase("closer"); }, MalformedKind::validation, "PR 2"},
      {"closed before created", [](json& d) { d["pulls"][0]["closed_at"] = "2021-12-31T00:00:00Z"; }, MalformedKind::validation, "PR 1"},
      {"open with closer", [](json& d) { d["pulls"][2]["closer"] = "ash"; }, MalformedKind::validation, "PR 3"},
      {"open with closed_at", [](json& d) { d["pulls"][2]["closed_at"] = "2022-02-02T00:00:00Z"; }, MalformedKind::validation, "PR 3"},
      {"comment before PR", [](json& d) { d["pulls"][0]["issue_comments"][0]["created_at"] = "2021-12-31T23:00:00Z"; }, MalformedKind::validation, "PR 1"},
      {"review after fetch", [](json& d) { d["pulls"][0]["reviews"][0]["submitted_at"] = "2022-03-02T00:00:00Z"; }, MalformedKind::validation, "PR 1"},
      {"PR after fetch", [](json& d) { d["pulls"][2]["created_at"] = "2022-04-01T00:00:00Z"; }, MalformedKind::validation, "PR 3"},
      {"commit before PR", [](json& d) { d["pulls"][1]["commits"][0]["committed_at"] = "2022-01-04T00:00:00Z"; }, MalformedKind::validation, "PR 2"},
      {"duplicate comment id", [](json& d) { d["pulls"][0]["issue_comments"][1]["id"] = 101; }, MalformedKind::validation, "PR 1"},
      {"duplicate review id", [](json& d) { d["pulls"][0]["reviews"].push_back(d["pulls"][0]["reviews"][0]); }, MalformedKind::validation, "PR 1"},
      {"duplicate sha", [](json& d) { d["pulls"][0]["commits"][1]["sha"] = "0a0a0a01"; }, MalformedKind::validation, "PR 1"},
      {"non-hex sha", [](json& d) { d["pulls"][0]["commits"][1]["sha"] = "not-a-sha"; }, MalformedKind::validation, "PR 1"},
      {"self review request", [](json& d) { d["pulls"][1]["review_requests"][0]["requestee"] = "syedahsn"; }, MalformedKind::validation, "PR 2"},
      {"request before PR", [](json& d) { d["pulls"][1]["review_requests"][0]["requested_at"] = "2022-01-04T00:00:00Z"; }, MalformedKind::validation, "PR 2"},
      {"accepted exceeds closed", [](json& d) { d["users"][0]["closure_history"]["accepted_count"] = 300; }, MalformedKind::validation, "ash"},
      {"duplicate user", [](json& d) { d["users"].push_back(d["users"][0]); }, MalformedKind::validation, "ash"},
      {"empty owner", [](json& d) { d["repo"]["owner"] = ""; }, MalformedKind::validation, "owner"},
      {"unknown verdict", [](json& d) { d["pulls"][0]["reviews"][0]["verdict"] = "lgtm"; }, MalformedKind::parse, "pulls[0].reviews[0].verdict"},
      {"unknown state", [](json& d) { d["pulls"][0]["state"] = "draft"; }, MalformedKind::parse, "pulls[0].state"},
      {"unknown permission", [](json& d) { d["users"][0]["permission"] = "maintain"; }, MalformedKind::parse, "users[0].permission"},
      {"unknown contribution kind", [](json& d) { d["pulls"][0]["contribution_kind"] = "tests"; }, MalformedKind::parse, "pulls[0].contribution_kind"},
      {"bad timestamp", [](json& d) { d["pulls"][0]["created_at"] = "2022-13-01T00:00:00Z"; }, MalformedKind::parse, "pulls[0].created_at"},
      {"bad fetched_at", [](json& d) { d["repo"]["fetched_at"] = "soon"; }, MalformedKind::parse, "repo.fetched_at"},
      {"missing files", [](json& d) { d["pulls"][0].erase("files"); }, MalformedKind::parse, "pulls[0]"},
      {"missing repo", [](json& d) { d.erase("repo"); }, MalformedKind::parse, "repo"},
      {"missing comment body", [](json& d) { d["pulls"][0]["issue_comments"][0].erase("body"); }, MalformedKind::parse, "pulls[0].issue_comments[0]"},
      {"string number", [](json& d) { d["pulls"][0]["number"] = "1"; }, MalformedKind::parse, "pulls[0].number"},
      {"negative followers", [](json& d) { d["users"][1]["followers"] = -1; }, MalformedKind::parse, "users[1].followers"},
      {"orgs not array", [](json& d) { d["users"][1]["orgs"] = "apache"; }, MalformedKind::parse, "users[1].orgs"},
      {"pulls not array", [](json& d) { d["pulls"] = json::object(); }, MalformedKind::parse, "pulls"},
      {"closure history negative", [](json& d) { d["users"][0]["closure_history"]["closed_count"] = -5; }, MalformedKind::parse, "users[0].closure_history"},
      {"root is array", [](json& d) { d = json::array(); }, MalformedKind::parse, ""},
  };
  return cases;
}


}  // namespace prtrust::testing
