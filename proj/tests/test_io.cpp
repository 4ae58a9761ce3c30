#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "pcn/core/io.hpp"
#include "support.hpp"

using namespace pcn;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per binary run; cases use distinct file names.
fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "pcn_io_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("network save/load round trips byte-identically") {
  const core::Network net = testsupport::tiny_net();
  const fs::path p = scratch_dir() / "net.json";
  core::save_network(net, p.string());
  const std::string first = slurp(p);
  CHECK(first.back() == '\n');

  const core::Network back = core::load_network(p.string());
  CHECK(back.mode == net.mode);
  REQUIRE(back.nodes.size() == net.nodes.size());
  CHECK(back.nodes[0].id == "A");
  CHECK(back.channels[0].capacity0 == doctest::Approx(5.0));

  core::save_network(back, p.string());
  CHECK(slurp(p) == first);
}

TEST_CASE("transactions jsonl round trips and keeps hop directions") {
  core::TransactionSet txns = testsupport::tiny_txns();
  txns.push_back({3, "B", "A", {{"e1", false}}, 1.5});
  const std::string text = core::transactions_to_jsonl(txns);
  // one line per transaction
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  const core::TransactionSet back = core::transactions_from_jsonl(text);
  REQUIRE(back.size() == 3);
  CHECK(back[2].path[0].forward == false);
  CHECK(back[2].value == doctest::Approx(1.5));
  CHECK(core::transactions_to_jsonl(back) == text);
}

TEST_CASE("jsonl reader reports the offending line") {
  const std::string text =
      core::transactions_to_jsonl(testsupport::tiny_txns()) + "{not json\n";
  try {
    core::transactions_from_jsonl(text);
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
}

TEST_CASE("schedule json round trip") {
  const core::Schedule sched{{"e1", {{1, 0.5}, {4, 2.0}}}, {"e2", {{2, 0.0}}}};
  const nlohmann::json j = core::schedule_to_json(sched);
  const auto dump = [](const core::Schedule& s) {
    return core::canonical_dump(core::schedule_to_json(s));
  };
  CHECK(dump(core::schedule_from_json(j)) == dump(sched));
  const fs::path p = scratch_dir() / "sched.json";
  core::save_schedule(sched, p.string());
  CHECK(dump(core::load_schedule(p.string())) == dump(sched));
  CHECK(slurp(p) == dump(sched));
}

TEST_CASE("malformed documents throw runtime_error with context") {
  CHECK_THROWS_AS(core::network_from_json(nlohmann::json::array()), std::runtime_error);
  CHECK_THROWS_AS(core::network_from_json({{"mode", "magic"},
                                           {"nodes", nlohmann::json::array()},
                                           {"channels", nlohmann::json::array()}}),
                  std::runtime_error);
  CHECK_THROWS_AS(core::transaction_from_json({{"time", 1}}), std::runtime_error);
  CHECK_THROWS_AS(
      core::schedule_from_json({{"e1", {{{"time", 1}}}}}),  // entry missing "value"
      std::runtime_error);
  CHECK_THROWS_AS(core::load_network((scratch_dir() / "absent.json").string()),
                  std::runtime_error);
}

TEST_CASE("atomic writes create parent directories and leave no temp files") {
  const fs::path p = scratch_dir() / "deep" / "nested" / "out.txt";
  core::write_file_atomic(p.string(), "payload");
  CHECK(slurp(p) == "payload");
  int entries = 0;
  for (const auto& ent : fs::directory_iterator(p.parent_path())) {
    (void)ent;
    ++entries;
  }
  CHECK(entries == 1);
  CHECK(core::read_file(p.string()) == "payload");
}

TEST_CASE("canonical dump sorts keys and ends with a newline") {
  nlohmann::json j;
  j["zeta"] = 1;
  j["alpha"] = 2.5;
  CHECK(core::canonical_dump(j) == "{\"alpha\":2.5,\"zeta\":1}\n");
}

TEST_CASE("double_str keeps floats round-trippable") {
  CHECK(core::double_str(4.0) == "4.0");
  CHECK(core::double_str(0.1) == "0.1");
  CHECK(core::double_str(-2.5) == "-2.5");
  CHECK(std::stod(core::double_str(1.0 / 3.0)) == 1.0 / 3.0);
}
