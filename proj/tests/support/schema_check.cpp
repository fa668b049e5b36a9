#include "schema_check.hpp"

#include <cctype>
#include <ctime>
#include <map>
#include <optional>
#include <set>

namespace prtrust::testing {

using nlohmann::json;

namespace {

std::optional<long long> when(const json& v) {
  if (!v.is_string()) return std::nullopt;
  const std::string s = v;
  std::tm tm{};
  const char* rest = strptime(s.c_str(), "%Y-%m-%dT%H:%M:%S", &tm);
  if (rest == nullptr || std::string(rest) != "Z" || s.size() != 20) return std::nullopt;
  return static_cast<long long>(timegm(&tm));
}

bool one_of(const json& v, std::initializer_list<const char*> allowed) {
  if (!v.is_string()) return false;
  for (const char* a : allowed) {
    if (v == a) return true;
  }
  return false;
}

struct Walker {
  std::vector<std::string> out;
  std::set<std::string> logins;
  long long fetched = 0;

  void fail(const std::string& where, const std::string& what) { out.push_back(where + ": " + what); }

  // Optional fields: null reads as absent.
  static bool present(const json& obj, const char* key) { return obj.contains(key) && !obj[key].is_null(); }

  bool has(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
      fail(where, std::string("missing ") + key);
      return false;
    }
    return true;
  }

  void login_ref(const json& v, const std::string& where) {
    if (!v.is_string()) return fail(where, "login not a string");
    if (!logins.count(v.get<std::string>())) fail(where, "unknown login " + v.get<std::string>());
  }

  void in_window(const json& v, long long lo, const std::string& where) {
    auto t = when(v);
    if (!t) return fail(where, "bad timestamp");
    if (*t < lo || *t > fetched) fail(where, "timestamp outside PR window");
  }

  void users(const json& arr) {
    if (!arr.is_array()) return fail("users", "not an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const json& u = arr[i];
      const std::string w = "users[" + std::to_string(i) + "]";
      if (!has(u, "login", w) || !u["login"].is_string() || u["login"].get<std::string>().empty()) {
        fail(w, "bad login");
        continue;
      }
      if (!logins.insert(u["login"].get<std::string>()).second) fail(w, "duplicate login");
      if (!has(u, "followers", w) || !u["followers"].is_number_unsigned()) fail(w, "bad followers");
      if (!has(u, "orgs", w) || !u["orgs"].is_array()) {
        fail(w, "bad orgs");
      } else {
        for (const json& o : u["orgs"]) {
          if (!o.is_string()) fail(w, "org not a string");
        }
      }
      if (!has(u, "permission", w) || !one_of(u["permission"], {"admin", "write", "read", "none"})) {
        fail(w, "bad permission");
      }
      if (present(u, "permission_unknown") && !u["permission_unknown"].is_boolean()) fail(w, "bad permission_unknown");
      if (present(u, "closure_history")) {
        const json& h = u["closure_history"];
        if (!h.is_object() || !h.contains("closed_count") || !h.contains("accepted_count") ||
            !h["closed_count"].is_number_unsigned() || !h["accepted_count"].is_number_unsigned()) {
          fail(w, "bad closure_history");
        } else if (h["accepted_count"].get<unsigned long long>() > h["closed_count"].get<unsigned long long>()) {
          fail(w, "accepted_count exceeds closed_count");
        }
      }
    }
  }

  void pull(const json& p, const std::string& w) {
    for (const char* key : {"number", "author", "state", "created_at", "labels", "contribution_kind", "files",
                            "commits", "issue_comments", "review_comments", "reviews", "review_requests"}) {
      if (!has(p, key, w)) return;
    }
    if (!p["number"].is_number_integer() || p["number"].get<long long>() <= 0) fail(w, "bad number");
    login_ref(p["author"], w + ".author");
    if (!one_of(p["state"], {"merged", "closed_unmerged", "open"})) fail(w, "bad state");
    if (!one_of(p["contribution_kind"], {"code", "documentation", "mixed"})) fail(w, "bad contribution_kind");
    auto created = when(p["created_at"]);
    if (!created) return fail(w, "bad created_at");
    if (*created > fetched) fail(w, "created after fetch");
    const bool open = p["state"] == "open";
    if (open && (present(p, "closed_at") || present(p, "closer"))) fail(w, "open PR has closure fields");
    if (!open) {
      if (!present(p, "closed_at") || !present(p, "closer")) {
        fail(w, "closed PR lacks closed_at/closer");
      } else {
        in_window(p["closed_at"], *created, w + ".closed_at");
        login_ref(p["closer"], w + ".closer");
      }
    }
    for (const char* key : {"labels", "files"}) {
      if (!p[key].is_array()) fail(w, std::string(key) + " not an array");
      for (const json& s : p[key]) {
        if (!s.is_string()) fail(w, std::string(key) + " entry not a string");
      }
    }
    for (const char* key : {"commits", "issue_comments", "review_comments", "reviews", "review_requests"}) {
      if (!p[key].is_array()) return fail(w, std::string(key) + " not an array");
      for (const json& e : p[key]) {
        if (!e.is_object()) return fail(w, std::string(key) + " entry not an object");
      }
    }
    std::set<long long> comment_ids;
    for (const char* key : {"issue_comments", "review_comments"}) {
      for (std::size_t i = 0; i < p[key].size(); ++i) {
        const json& c = p[key][i];
        const std::string cw = w + "." + key + "[" + std::to_string(i) + "]";
        if (!has(c, "id", cw) || !has(c, "author", cw) || !has(c, "created_at", cw) || !has(c, "body", cw)) continue;
        if (!c["id"].is_number_integer() || !comment_ids.insert(c["id"].get<long long>()).second) fail(cw, "bad or duplicate id");
        login_ref(c["author"], cw);
        in_window(c["created_at"], *created, cw);
        if (!c["body"].is_string()) fail(cw, "body not a string");
      }
    }
    std::set<long long> review_ids;
    for (std::size_t i = 0; i < p["reviews"].size(); ++i) {
      const json& r = p["reviews"][i];
      const std::string rw = w + ".reviews[" + std::to_string(i) + "]";
      if (!has(r, "id", rw) || !has(r, "author", rw) || !has(r, "submitted_at", rw) || !has(r, "verdict", rw) ||
          !has(r, "body", rw)) {
        continue;
      }
      if (!r["id"].is_number_integer() || !review_ids.insert(r["id"].get<long long>()).second) fail(rw, "bad or duplicate id");
      login_ref(r["author"], rw);
      in_window(r["submitted_at"], *created, rw);
      if (!one_of(r["verdict"], {"approved", "commented", "changes_requested", "dismissed"})) fail(rw, "bad verdict");
      if (!r["body"].is_string()) fail(rw, "body not a string");
    }
    for (std::size_t i = 0; i < p["review_requests"].size(); ++i) {
      const json& r = p["review_requests"][i];
      const std::string rw = w + ".review_requests[" + std::to_string(i) + "]";
      if (!has(r, "requestee", rw) || !has(r, "requested_at", rw)) continue;
      login_ref(r["requestee"], rw);
      if (r["requestee"] == p["author"]) fail(rw, "author requested to review own PR");
      in_window(r["requested_at"], *created, rw);
    }
    std::set<std::string> shas;
    for (std::size_t i = 0; i < p["commits"].size(); ++i) {
      const json& c = p["commits"][i];
      const std::string cw = w + ".commits[" + std::to_string(i) + "]";
      if (!has(c, "sha", cw) || !has(c, "author", cw) || !has(c, "committed_at", cw)) continue;
      bool hex = c["sha"].is_string() && !c["sha"].get<std::string>().empty();
      if (hex) {
        for (char ch : c["sha"].get<std::string>()) hex = hex && std::isxdigit(static_cast<unsigned char>(ch));
      }
      if (!hex) fail(cw, "sha not hex");
      else if (!shas.insert(c["sha"].get<std::string>()).second) fail(cw, "duplicate sha");
      login_ref(c["author"], cw);
      in_window(c["committed_at"], *created, cw);
    }
  }

  void run(const json& doc) {
    if (!doc.is_object()) return fail("$", "not an object");
    for (const char* key : {"repo", "users", "pulls"}) {
      if (!has(doc, key, "$")) return;
    }
    const json& repo = doc["repo"];
    for (const char* key : {"owner", "name", "fetched_at"}) {
      if (!has(repo, key, "repo")) return;
    }
    if (!repo["owner"].is_string() || repo["owner"].get<std::string>().empty()) fail("repo", "bad owner");
    if (!repo["name"].is_string() || repo["name"].get<std::string>().empty()) fail("repo", "bad name");
    auto f = when(repo["fetched_at"]);
    if (!f) return fail("repo", "bad fetched_at");
    fetched = *f;
    users(doc["users"]);
    if (!doc["pulls"].is_array()) return fail("pulls", "not an array");
    long long last = 0;
    for (std::size_t i = 0; i < doc["pulls"].size(); ++i) {
      const json& p = doc["pulls"][i];
      const std::string w = "pulls[" + std::to_string(i) + "]";
      if (p.is_object() && p.contains("number") && p["number"].is_number_integer()) {
        if (p["number"].get<long long>() <= last) fail(w, "numbers not strictly increasing");
        last = p["number"];
      }
      pull(p, w);
    }
  }
};

}  // namespace

std::vector<std::string> schema_violations(const json& doc) {
  Walker w;
  w.run(doc);
  return w.out;
}

}  // namespace prtrust::testing
