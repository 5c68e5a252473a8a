#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"
#include "uhtp/error.hpp"
#include "uhtp/json_io.hpp"
#include "uhtp/reduction.hpp"

using namespace uhtp;

namespace {

const CorpusEntry& entry_named(const std::vector<CorpusEntry>& corpus, const std::string& name) {
  for (const auto& e : corpus) {
    if (e.name == name) return e;
  }
  throw std::runtime_error("no corpus entry " + name);
}

std::filesystem::path scratch_manifest(const std::string& body) {
  const auto dir = std::filesystem::temp_directory_path() / "uhtp_reduction_test";
  std::filesystem::create_directories(dir);
  std::filesystem::copy_file(oracle::kCorpusDir + "/bb2.tm", dir / "bb2.tm",
                             std::filesystem::copy_options::overwrite_existing);
  std::ofstream(dir / "manifest.json") << body;
  return dir / "manifest.json";
}

}  // namespace

TEST_CASE("shipped corpus shape and ground truth") {
  const auto corpus = oracle::corpus();
  int halters = 0;
  int loopers = 0;
  for (const auto& entry : corpus) {
    CAPTURE(entry.name);
    CHECK_NOTHROW(check_ground_truth(entry));
    const oracle::Classical ref(to_text(entry.machine));
    if (const auto* h = std::get_if<Halts>(&entry.truth)) {
      ++halters;
      CHECK(h->steps <= 200);
      CHECK(ref.halting_step(10000) == h->steps);
    } else {
      ++loopers;
      const auto& l = std::get<LoopsForever>(entry.truth);
      const auto trace = ref.trace(l.second);
      REQUIRE(trace.size() == l.second + 1);
      CHECK(trace[l.first] == trace[l.second]);
      CHECK_FALSE(ref.halting_step(10000).has_value());
    }
  }
  CHECK(halters >= 10);
  CHECK(loopers >= 5);
}

TEST_CASE("mislabelled corpus entries are corpus bugs") {
  const auto corpus = oracle::corpus();
  CorpusEntry wrong = entry_named(corpus, "bb2");
  wrong.truth = Halts{5};
  CHECK_THROWS_AS(check_ground_truth(wrong), CorpusError);
  std::vector<CorpusEntry> bad{entry_named(corpus, "spin"), wrong};
  CHECK_THROWS_AS(verify_corpus(bad), CorpusError);

  CorpusEntry fake_loop = entry_named(corpus, "bb2");
  fake_loop.truth = LoopsForever{1, 3, ""};
  CHECK_THROWS_AS(check_ground_truth(fake_loop), CorpusError);

  CorpusEntry bad_cert = entry_named(corpus, "prelude-loop");
  bad_cert.truth = LoopsForever{1, 3, ""};
  CHECK_THROWS_AS(check_ground_truth(bad_cert), CorpusError);
  bad_cert.truth = LoopsForever{2, 5, ""};
  CHECK_THROWS_AS(check_ground_truth(bad_cert), CorpusError);
  bad_cert.truth = LoopsForever{2, 6, ""};
  CHECK_NOTHROW(check_ground_truth(bad_cert));
}

TEST_CASE("encode is deterministic") {
  const auto corpus = oracle::corpus();
  const auto& m = entry_named(corpus, "move-right-3").machine;
  const auto a = encode(m, Rational(1, 4), Rational(1, 2), ClockMode::unbounded(),
                        BeaconSubspace{}, 100);
  const auto b = encode(m, Rational(1, 4), Rational(1, 2), ClockMode::unbounded(),
                        BeaconSubspace{}, 100);
  CHECK(instance_json(a) == instance_json(b));
  CHECK(instance_json(a).find("\"epsilon\":\"1/4\"") != std::string::npos);
  CHECK(uhit_semidecide(a).is_hit());
  const auto loop = encode(entry_named(corpus, "spin").machine, Rational(1, 4), Rational(1, 2),
                           ClockMode::unbounded(), BeaconSubspace{}, 10000);
  CHECK_FALSE(uhit_semidecide(loop).is_hit());
}

TEST_CASE("verify the shipped corpus") {
  const auto corpus = oracle::corpus();
  const auto reports = verify_corpus(corpus);
  REQUIRE(reports.size() == corpus.size());
  for (const auto& r : reports) {
    CAPTURE(r.entry);
    CHECK(r.agrees());
  }
  ReductionParams exact;
  exact.target = ExactLabel{};
  CHECK_THROWS_AS(verify_corpus(corpus, exact), RangeError);
}

TEST_CASE("judge") {
  const auto corpus = oracle::corpus();
  const auto inst = encode(entry_named(corpus, "bb2").machine, Rational(1, 4), Rational(1, 2),
                           ClockMode::unbounded(), BeaconSubspace{}, 100);
  const HitReport good{Hit{Rational(13, 2), 1.0, {6, Rational(13, 2)}}};
  CHECK(std::holds_alternative<Agree>(judge(Halts{6}, good, inst)));
  const HitReport late{Hit{Rational(17, 2), 1.0, {8, Rational(17, 2)}}};
  CHECK(std::holds_alternative<Disagree>(judge(Halts{6}, late, inst)));
  const HitReport none{Exhausted{100, 0.0}};
  CHECK(std::holds_alternative<Disagree>(judge(Halts{6}, none, inst)));
  CHECK(std::holds_alternative<Disagree>(judge(Halts{100}, good, inst)));
  CHECK(std::holds_alternative<Agree>(judge(LoopsForever{0, 1, ""}, none, inst)));
  CHECK(std::holds_alternative<Disagree>(judge(LoopsForever{0, 1, ""}, good, inst)));
  const HitReport leaky{Exhausted{100, 0.5}};
  CHECK(std::holds_alternative<Disagree>(judge(LoopsForever{0, 1, ""}, leaky, inst)));
}

TEST_CASE("counter family") {
  std::uint64_t prev = 0;
  for (std::uint64_t n = 1; n <= 20; ++n) {
    const MachineSpec m = counter_family(n);
    const oracle::Classical ref(to_text(m));
    const auto k = ref.halting_step(100000);
    REQUIRE(k);
    CHECK(*k > prev);
    CHECK(std::get<Halted>(classical_run(m, 100000)).steps == *k);
    prev = *k;
    if (n <= 5) {
      const std::vector<CorpusEntry> single{{"counter", m, Halts{*k}}};
      CHECK(verify_corpus(single).front().agrees());
    }
  }
  CHECK(std::get<Halted>(classical_run(counter_family(1), 100)).steps == 6);
  CHECK_THROWS_AS(counter_family(0), RangeError);
}

TEST_CASE("finite-size recovery") {
  const auto corpus = oracle::corpus();
  ReductionParams cyc;
  cyc.mode = ClockMode::cyclic(16384);
  const auto a = verify_corpus(corpus);
  const auto b = verify_corpus(corpus, cyc);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CAPTURE(a[i].entry);
    CHECK(a[i].agrees());
    CHECK(b[i].agrees());
    CHECK(a[i].observed.is_hit() == b[i].observed.is_hit());
  }
}

TEST_CASE("manifest loading errors") {
  CHECK_THROWS_AS(load_corpus("/nonexistent/manifest.json"), CorpusError);
  CHECK_THROWS_AS(load_corpus(scratch_manifest("{not json")), CorpusError);
  CHECK_THROWS_AS(load_corpus(scratch_manifest("{}")), CorpusError);
  CHECK_THROWS_AS(load_corpus(scratch_manifest(
                      R"([{"name":"x","machine_file":"bb2.tm","ground_truth":{"kind":"maybe"}}])")),
                  CorpusError);
  CHECK_THROWS_AS(load_corpus(scratch_manifest(
                      R"([{"name":"x","machine_file":"bb2.tm","ground_truth":{"kind":"loops","revisit":[1]}}])")),
                  CorpusError);
  const auto ok = load_corpus(scratch_manifest(
      R"([{"name":"x","machine_file":"bb2.tm","ground_truth":{"kind":"halts","K":6}}])"));
  REQUIRE(ok.size() == 1);
  CHECK(std::get<Halts>(ok[0].truth).steps == 6);
}

TEST_CASE("report json") {
  const auto corpus = oracle::corpus();
  const std::vector<CorpusEntry> two{entry_named(corpus, "bb2"), entry_named(corpus, "spin")};
  const auto reports = verify_corpus(two);
  CHECK(reduction_report_json(reports[0]) ==
        R"({"entry":"bb2","expected":{"K":6,"kind":"halts"},"observed":{"fidelity":1.0,"outcome":"hit","t":"13/2","window":["6","13/2"]},"verdict":"agree"})");
  CHECK(reduction_report_json(reports[1]) ==
        R"({"entry":"spin","expected":{"kind":"loops","revisit":[0,1]},"observed":{"horizon":10000,"max_fidelity":0.0,"outcome":"exhausted"},"verdict":"agree"})");
}
