#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "pcn/core/model.hpp"

namespace pcn::core {

// JSON (de)serialization for the on-disk formats. Writers are canonical:
// object keys sorted, floats printed with the shortest round-trip form, one
// trailing newline — so save/load round trips are byte-identical.
//
// Network file (single JSON object):
//   {"channels":[{"capacity":5.0,"id":"e1","source":"A","target":"B"}],
//    "mode":"consuming","nodes":[{"capital":10.0,"id":"A"}]}
// Transactions file (JSON lines, times ascending):
//   {"dest":"B","path":[{"channel":"e1","dir":"fwd"}],"source":"A","time":1,"value":3.0}
// Schedule file (single JSON object):
//   {"e1":[{"time":2,"value":4.0}]}
//
// Readers throw std::runtime_error with a description on malformed input.

nlohmann::json network_to_json(const Network& net);
Network network_from_json(const nlohmann::json& j);

nlohmann::json transaction_to_json(const Transaction& t);
Transaction transaction_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& j);

std::string transactions_to_jsonl(const TransactionSet& txns);
TransactionSet transactions_from_jsonl(const std::string& text);

Network load_network(const std::string& path);
TransactionSet load_transactions(const std::string& path);
Schedule load_schedule(const std::string& path);

void save_network(const Network& net, const std::string& path);
void save_transactions(const TransactionSet& txns, const std::string& path);
void save_schedule(const Schedule& s, const std::string& path);

// Generic helpers shared by every writer: read whole file / write whole file
// via a temp file in the same directory followed by an atomic rename.
std::string read_file(const std::string& path);
void write_file_atomic(const std::string& path, const std::string& content);

// Canonical dump of any json value: sorted keys, no spaces, one '\n'.
std::string canonical_dump(const nlohmann::json& j);

// Shortest round-trip decimal form of a double ("4" stays "4.0"); used
// everywhere a float lands in a text artifact so outputs are byte-stable.
std::string double_str(double v);

}  // namespace pcn::core
