#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcn/core/model.hpp"
#include "pcn/core/validate.hpp"

namespace pcn::hardness {

struct Page {
  std::string id;
  double size = 0.0;
};

// Paging with page sizes: serve `requests` from a cache of size W with at
// most F faults. The NP-complete source problem of the step-cost reduction.
struct CachingInstance {
  double W = 0.0;
  std::vector<Page> pages;
  std::vector<std::string> requests;
  int F = 0;
};

// Cache changes per request time (1-based): d[t] dropped, then b[t] brought.
struct CachingPolicy {
  std::map<int, std::set<std::string>> bring;
  std::map<int, std::set<std::string>> drop;
};

// Total number of cache changes (brings + drops, compulsory loads included).
int policy_cost(const CachingPolicy& p);

// Replays the policy: drops apply before brings at each request time; the
// cache must stay within W and must hold the requested page when it is
// requested. Pages must exist; a page cannot be dropped unless cached.
core::ValidationReport validate_policy(const CachingInstance& ci, const CachingPolicy& p);

core::ValidationReport validate_caching_instance(const CachingInstance& ci);

// The scheduling instance a caching instance maps to: two nodes v1 (capital
// W) and v2, one zero-capacity channel per page ("e1", "e2", ... in page
// order), non-consuming mode, and transaction i = size(page requested at i)
// routed over that page's channel. Optimal step cost of this instance equals
// the optimal number of cache changes of the caching instance.
struct ReducedInstance {
  core::Network net;
  core::TransactionSet txns;
  int budget = 0;  // the fault budget F, now a modification budget
};

ReducedInstance reduce_caching(const CachingInstance& ci);

// Maps a feasible schedule of the reduced instance back to a caching policy
// of equal-or-lower cost: a page counts as cached at time t iff its
// channel's capacity covers its size, and brings/drops are the membership
// changes of that set. Throws std::invalid_argument when the schedule does
// not route every request violation-free.
CachingPolicy lift_schedule(const CachingInstance& ci, const core::Schedule& sched);

// JSON form: {"F":3,"W":4.0,"pages":[{"id":"p1","size":2.0}],"requests":["p1"]}.
nlohmann::json caching_to_json(const CachingInstance& ci);
CachingInstance caching_from_json(const nlohmann::json& j);
CachingInstance load_caching_instance(const std::string& path);
void save_caching_instance(const CachingInstance& ci, const std::string& path);

nlohmann::json policy_to_json(const CachingPolicy& p);

}  // namespace pcn::hardness
