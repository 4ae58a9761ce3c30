#include "pcn/hardness/caching.hpp"

#include <stdexcept>

#include "pcn/core/io.hpp"
#include "pcn/core/simulate.hpp"

namespace pcn::hardness {

using nlohmann::json;

int policy_cost(const CachingPolicy& p) {
  int cost = 0;
  for (const auto& [t, pages] : p.bring) {
    (void)t;
    cost += static_cast<int>(pages.size());
  }
  for (const auto& [t, pages] : p.drop) {
    (void)t;
    cost += static_cast<int>(pages.size());
  }
  return cost;
}

core::ValidationReport validate_caching_instance(const CachingInstance& ci) {
  core::ValidationReport rep;
  if (ci.W < 0.0) rep.problems.push_back("negative cache size");
  if (ci.F < 0) rep.problems.push_back("negative fault budget");
  std::set<std::string> ids;
  for (const Page& p : ci.pages) {
    if (p.id.empty()) rep.problems.push_back("page with empty id");
    if (!ids.insert(p.id).second) rep.problems.push_back("duplicate page id: " + p.id);
    if (p.size <= 0.0) rep.problems.push_back("non-positive size for page " + p.id);
    if (p.size > ci.W + core::kTol) {
      rep.problems.push_back("page " + p.id + " larger than the cache");
    }
  }
  for (const std::string& r : ci.requests) {
    if (!ids.count(r)) rep.problems.push_back("request for unknown page " + r);
  }
  return rep;
}

core::ValidationReport validate_policy(const CachingInstance& ci, const CachingPolicy& p) {
  core::ValidationReport rep = validate_caching_instance(ci);
  if (!rep.ok()) return rep;
  std::map<std::string, double> size_of;
  for (const Page& pg : ci.pages) size_of[pg.id] = pg.size;
  const int n = static_cast<int>(ci.requests.size());

  std::set<std::string> cache;
  double weight = 0.0;
  for (int t = 1; t <= n; ++t) {
    if (auto it = p.drop.find(t); it != p.drop.end()) {
      for (const std::string& pg : it->second) {
        if (!cache.erase(pg)) {
          rep.problems.push_back("drop of non-cached page " + pg + " at time " +
                                 std::to_string(t));
        } else {
          weight -= size_of.at(pg);
        }
      }
    }
    if (auto it = p.bring.find(t); it != p.bring.end()) {
      for (const std::string& pg : it->second) {
        if (!size_of.count(pg)) {
          rep.problems.push_back("bring of unknown page " + pg);
          continue;
        }
        if (!cache.insert(pg).second) {
          rep.problems.push_back("bring of already-cached page " + pg + " at time " +
                                 std::to_string(t));
        } else {
          weight += size_of.at(pg);
        }
      }
    }
    if (weight > ci.W + core::kTol) {
      rep.problems.push_back("cache over size at time " + std::to_string(t));
    }
    if (!cache.count(ci.requests[static_cast<std::size_t>(t - 1)])) {
      rep.problems.push_back("request " + std::to_string(t) + " (" +
                             ci.requests[static_cast<std::size_t>(t - 1)] + ") not cached");
    }
  }
  for (const auto& [t, pages] : p.bring) {
    (void)pages;
    if (t < 1 || t > n) rep.problems.push_back("bring at time outside 1..n");
  }
  for (const auto& [t, pages] : p.drop) {
    (void)pages;
    if (t < 1 || t > n) rep.problems.push_back("drop at time outside 1..n");
  }
  return rep;
}

ReducedInstance reduce_caching(const CachingInstance& ci) {
  {
    const core::ValidationReport rep = validate_caching_instance(ci);
    if (!rep.ok()) {
      throw std::invalid_argument("reduce_caching: invalid instance: " + rep.problems.front());
    }
  }
  ReducedInstance out;
  out.net.mode = core::Mode::NonConsuming;
  out.net.nodes.push_back({"v1", ci.W});
  out.net.nodes.push_back({"v2", 0.0});
  std::map<std::string, std::string> channel_of;  // page id -> channel id
  std::map<std::string, double> size_of;
  for (std::size_t i = 0; i < ci.pages.size(); ++i) {
    const std::string cid = "e" + std::to_string(i + 1);
    channel_of[ci.pages[i].id] = cid;
    size_of[ci.pages[i].id] = ci.pages[i].size;
    out.net.channels.push_back({cid, "v1", "v2", 0.0});
  }
  for (std::size_t i = 0; i < ci.requests.size(); ++i) {
    const std::string& pg = ci.requests[i];
    core::Transaction tx;
    tx.time = static_cast<int>(i) + 1;
    tx.source = "v1";
    tx.dest = "v2";
    tx.path.push_back({channel_of.at(pg), true});
    tx.value = size_of.at(pg);
    out.txns.push_back(std::move(tx));
  }
  out.budget = ci.F;
  return out;
}

CachingPolicy lift_schedule(const CachingInstance& ci, const core::Schedule& sched) {
  const ReducedInstance red = reduce_caching(ci);
  const core::Trace tr = core::simulate(red.net, red.txns, sched);
  if (!tr.skipped.empty() || !tr.violations.empty()) {
    throw std::invalid_argument("lift_schedule: schedule does not serve every request");
  }
  const int n = static_cast<int>(ci.requests.size());

  CachingPolicy policy;
  std::set<std::string> prev;  // cached set at t-1; starts empty (capacities start 0)
  for (int t = 1; t <= n; ++t) {
    std::set<std::string> cur;
    for (std::size_t i = 0; i < ci.pages.size(); ++i) {
      const double cap = tr.capacity[i][static_cast<std::size_t>(t)];
      if (cap >= ci.pages[i].size - core::kTol) cur.insert(ci.pages[i].id);
    }
    for (const std::string& pg : cur) {
      if (!prev.count(pg)) policy.bring[t].insert(pg);
    }
    for (const std::string& pg : prev) {
      if (!cur.count(pg)) policy.drop[t].insert(pg);
    }
    prev = std::move(cur);
  }
  return policy;
}

json caching_to_json(const CachingInstance& ci) {
  json pages = json::array();
  for (const Page& p : ci.pages) pages.push_back({{"id", p.id}, {"size", p.size}});
  json requests = json::array();
  for (const std::string& r : ci.requests) requests.push_back(r);
  return json{{"W", ci.W}, {"pages", pages}, {"requests", requests}, {"F", ci.F}};
}

CachingInstance caching_from_json(const json& j) {
  CachingInstance ci;
  if (!j.is_object() || !j.contains("W") || !j.contains("pages") || !j.contains("requests")) {
    throw std::runtime_error("caching instance needs W, pages, requests");
  }
  ci.W = j.at("W").get<double>();
  ci.F = j.value("F", 0);
  for (const json& p : j.at("pages")) {
    ci.pages.push_back({p.at("id").get<std::string>(), p.at("size").get<double>()});
  }
  for (const json& r : j.at("requests")) ci.requests.push_back(r.get<std::string>());
  return ci;
}

CachingInstance load_caching_instance(const std::string& path) {
  json j;
  try {
    j = json::parse(core::read_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return caching_from_json(j);
}

void save_caching_instance(const CachingInstance& ci, const std::string& path) {
  core::write_file_atomic(path, core::canonical_dump(caching_to_json(ci)));
}

json policy_to_json(const CachingPolicy& p) {
  json bring = json::object();
  for (const auto& [t, pages] : p.bring) {
    json list = json::array();
    for (const std::string& pg : pages) list.push_back(pg);
    bring[std::to_string(t)] = list;
  }
  json drop = json::object();
  for (const auto& [t, pages] : p.drop) {
    json list = json::array();
    for (const std::string& pg : pages) list.push_back(pg);
    drop[std::to_string(t)] = list;
  }
  return json{{"bring", bring}, {"drop", drop}};
}

}  // namespace pcn::hardness
