#include "pcn/core/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pcn::core {

using nlohmann::json;

namespace {

json require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::runtime_error(std::string("missing key \"") + key + "\" in " + j.dump());
  }
  return j.at(key);
}

double money(const json& j, const char* key) {
  const json v = require(j, key);
  if (!v.is_number()) throw std::runtime_error(std::string("key \"") + key + "\" is not a number");
  return v.get<double>();
}

std::string str(const json& j, const char* key) {
  const json v = require(j, key);
  if (!v.is_string()) throw std::runtime_error(std::string("key \"") + key + "\" is not a string");
  return v.get<std::string>();
}

int step(const json& j, const char* key) {
  const json v = require(j, key);
  if (!v.is_number_integer()) {
    throw std::runtime_error(std::string("key \"") + key + "\" is not an integer");
  }
  return v.get<int>();
}

}  // namespace

json network_to_json(const Network& net) {
  json nodes = json::array();
  for (const Node& nd : net.nodes) nodes.push_back({{"id", nd.id}, {"capital", nd.capital0}});
  json channels = json::array();
  for (const Channel& ch : net.channels) {
    channels.push_back(
        {{"id", ch.id}, {"source", ch.source}, {"target", ch.target}, {"capacity", ch.capacity0}});
  }
  return json{{"mode", net.mode == Mode::Consuming ? "consuming" : "non-consuming"},
              {"nodes", nodes},
              {"channels", channels}};
}

Network network_from_json(const json& j) {
  Network net;
  const std::string mode = str(j, "mode");
  if (mode == "consuming") {
    net.mode = Mode::Consuming;
  } else if (mode == "non-consuming") {
    net.mode = Mode::NonConsuming;
  } else {
    throw std::runtime_error("unknown mode: " + mode);
  }
  for (const json& nd : require(j, "nodes")) {
    net.nodes.push_back({str(nd, "id"), money(nd, "capital")});
  }
  for (const json& ch : require(j, "channels")) {
    net.channels.push_back(
        {str(ch, "id"), str(ch, "source"), str(ch, "target"), money(ch, "capacity")});
  }
  return net;
}

json transaction_to_json(const Transaction& t) {
  json path = json::array();
  for (const Hop& h : t.path) {
    path.push_back({{"channel", h.channel}, {"dir", h.forward ? "fwd" : "rev"}});
  }
  return json{{"time", t.time},
              {"source", t.source},
              {"dest", t.dest},
              {"path", path},
              {"value", t.value}};
}

Transaction transaction_from_json(const json& j) {
  Transaction t;
  t.time = step(j, "time");
  t.source = str(j, "source");
  t.dest = str(j, "dest");
  t.value = money(j, "value");
  for (const json& h : require(j, "path")) {
    const std::string dir = str(h, "dir");
    if (dir != "fwd" && dir != "rev") throw std::runtime_error("hop dir must be fwd or rev");
    t.path.push_back({str(h, "channel"), dir == "fwd"});
  }
  return t;
}

json schedule_to_json(const Schedule& s) {
  json j = json::object();
  for (const auto& [channel, entries] : s) {
    json list = json::array();
    for (const ModEntry& m : entries) list.push_back({{"time", m.time}, {"value", m.value}});
    j[channel] = list;
  }
  return j;
}

Schedule schedule_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("schedule file must be a JSON object");
  Schedule s;
  for (const auto& [channel, list] : j.items()) {
    std::vector<ModEntry>& entries = s[channel];
    for (const json& m : list) entries.push_back({step(m, "time"), money(m, "value")});
  }
  return s;
}

std::string transactions_to_jsonl(const TransactionSet& txns) {
  std::string out;
  for (const Transaction& t : txns) {
    out += transaction_to_json(t).dump();
    out += '\n';
  }
  return out;
}

TransactionSet transactions_from_jsonl(const std::string& text) {
  TransactionSet txns;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error("transactions line " + std::to_string(lineno) + ": " + e.what());
    }
    txns.push_back(transaction_from_json(j));
  }
  return txns;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::string canonical_dump(const json& j) { return j.dump() + "\n"; }

std::string double_str(double v) { return json(v).dump(); }

Network load_network(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return network_from_json(j);
}

TransactionSet load_transactions(const std::string& path) {
  return transactions_from_jsonl(read_file(path));
}

Schedule load_schedule(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return schedule_from_json(j);
}

void save_network(const Network& net, const std::string& path) {
  write_file_atomic(path, canonical_dump(network_to_json(net)));
}

void save_transactions(const TransactionSet& txns, const std::string& path) {
  write_file_atomic(path, transactions_to_jsonl(txns));
}

void save_schedule(const Schedule& s, const std::string& path) {
  write_file_atomic(path, canonical_dump(schedule_to_json(s)));
}

}  // namespace pcn::core
