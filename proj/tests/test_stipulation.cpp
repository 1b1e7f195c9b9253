#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stipsim/harness.hpp"
#include "stipsim/stipulation.hpp"
#include "stipsim/table_builder.hpp"
#include "toy_machines.hpp"

using namespace stipsim;

TEST_CASE("schedule validation enforces the postulates") {
  CHECK_NOTHROW(StipulationSchedule::create(Tick(3), {"01", "10"}));
  CHECK_NOTHROW(StipulationSchedule::create(Tick::infinity(), {"01"}));
  // equal lengths (postulate IV)
  CHECK_THROWS_AS(StipulationSchedule::create(Tick(3), {"01", "011"}), ConfigError);
  // no identical consecutive entries (postulate V), including the wrap pair
  CHECK_THROWS_AS(StipulationSchedule::create(Tick(3), {"01", "01"}), ConfigError);
  CHECK_THROWS_AS(StipulationSchedule::create(Tick(3), {"01", "10", "10"}), ConfigError);
  CHECK_THROWS_AS(StipulationSchedule::create(Tick::infinity(), {"01", "10", "01"}),
                  ConfigError);  // wrap: last == first
  // a single entry can never vary
  CHECK_THROWS_AS(StipulationSchedule::create(Tick(3), {"01"}), ConfigError);
  // the interval is at least one tick
  CHECK_THROWS_AS(StipulationSchedule::create(Tick(0), {"01", "10"}), ConfigError);
  // an empty input region overlaps nothing
  CHECK_THROWS_AS(StipulationSchedule::create(Tick::infinity(), {""}), ConfigError);
}

TEST_CASE("next_input cycles through the stream") {
  auto s = StipulationSchedule::create(Tick(1), {"ab", "cd"});
  auto [first, p1] = next_input(s, 0);
  CHECK(first == "ab");
  CHECK(p1 == 1);
  auto [second, p2] = next_input(s, 1);
  CHECK(second == "cd");
  CHECK(p2 == 0);
}

TEST_CASE("infinite interval reproduces the bare run exactly") {
  for (const std::string& input : {"110", "0101", "11111"}) {
    Machine m(toys::last_pass_machine());
    auto sched = StipulationSchedule::create(Tick::infinity(), {input});
    StipulatedRunRecord rec = stip_run(m, sched, 100000);
    CHECK(rec.rewrite_count == 0);
    CHECK(rec.trace_digest == bare_trace_digest(m, input, 100000));
    auto [bare, engine] = bare_run(m, input, 100000);
    CHECK(rec.outcome.kind == bare.kind);
    CHECK(rec.outcome.steps == bare.steps);
  }
}

TEST_CASE("halting before the first rewrite keeps the bare verdict") {
  Machine m(toys::last_pass_machine());
  const std::string input = "101";
  auto [bare, engine] = bare_run(m, input, 100000);
  REQUIRE(bare.halted());
  const std::uint64_t n = bare.steps;

  SUBCASE("T = N + 1: no rewrite happens") {
    auto sched = StipulationSchedule::create(Tick(n + 1), {input, "010"});
    StipulatedRunRecord rec = stip_run(m, sched, 100000);
    REQUIRE(rec.outcome.halted());
    CHECK(*rec.outcome.verdict == *bare.verdict);
    CHECK(rec.outcome.steps == n);
    CHECK(rec.rewrite_count == 0);
  }
  SUBCASE("T = N: the tie goes to the rewrite") {
    auto sched = StipulationSchedule::create(Tick(n), {input, "010"});
    StipulatedRunRecord rec = stip_run(m, sched, 100000);
    CHECK(rec.rewrite_count >= 1);
    REQUIRE(!rec.rewrite_ticks.empty());
    CHECK(rec.rewrite_ticks.front() == n);
  }
}

TEST_CASE("rewrites land exactly on multiples of T before the halt") {
  Machine m(toys::last_pass_machine());
  auto sched = StipulationSchedule::create(Tick(3), {"111111", "101010"});
  StipulatedRunRecord rec = stip_run(m, sched, 2000);
  for (std::size_t i = 0; i < rec.rewrite_ticks.size(); ++i)
    CHECK(rec.rewrite_ticks[i] == 3 * (i + 1));
  if (rec.outcome.halted()) {
    for (auto t : rec.rewrite_ticks) CHECK(t <= rec.outcome.steps);
    // every multiple of T up to the halt tick is present
    CHECK(rec.rewrite_count == rec.outcome.steps / 3);
  }
}

TEST_CASE("detect_cycle certifies the two-state loop") {
  Machine m(toys::two_state_loop());
  auto sched = StipulationSchedule::create(Tick::infinity(), {"1"});
  StipulatedRunRecord rec = stip_run(m, sched, 100000);
  REQUIRE(rec.outcome.kind == RunOutcome::Kind::ProvenDiverging);
  REQUIRE(rec.certificate);
  CHECK(rec.certificate->period() == 2);
  CHECK(verify_certificate(m, sched, *rec.certificate));
  // a corrupted certificate fails verification
  CycleCertificate bad = *rec.certificate;
  bad.second_occurrence_tick += 1;
  CHECK(!verify_certificate(m, sched, bad));
}

TEST_CASE("halting runs produce no certificate") {
  Machine m(toys::scan_right_accept());
  auto sched = StipulationSchedule::create(Tick::infinity(), {"111"});
  StipulatedRunRecord rec = stip_run(m, sched, 1000);
  CHECK(rec.outcome.halted());
  CHECK(!rec.certificate);
}

TEST_CASE("perturbed loops under finite T are certified and replayable") {
  // Loop forever; the schedule's phase and stream index join the cycle key.
  Machine m(toys::two_state_loop());
  auto sched = StipulationSchedule::create(Tick(5), {"10", "01"});
  StipulatedRunRecord rec = stip_run(m, sched, 100000);
  REQUIRE(rec.outcome.kind == RunOutcome::Kind::ProvenDiverging);
  REQUIRE(rec.certificate);
  CHECK(rec.certificate->period() % 2 == 0);
  CHECK(verify_certificate(m, sched, *rec.certificate));
}

TEST_CASE("identical schedules give identical records") {
  Machine m(toys::last_pass_machine());
  auto sched = StipulationSchedule::create(Tick(2), {"1111", "1001"});
  StipulatedRunRecord a = stip_run(m, sched, 5000);
  StipulatedRunRecord b = stip_run(m, sched, 5000);
  CHECK(a.outcome.kind == b.outcome.kind);
  CHECK(a.outcome.steps == b.outcome.steps);
  CHECK(a.trace_digest == b.trace_digest);
  CHECK(a.rewrite_ticks == b.rewrite_ticks);
  CHECK(a.stream_position_at_end == b.stream_position_at_end);
}

TEST_CASE("the input region can sit anywhere on the tape") {
  Machine m(toys::last_pass_machine());
  for (long start : {-7L, 0L, 13L}) {
    auto sched = StipulationSchedule::create(Tick::infinity(), {"101"}, start);
    StipulatedRunRecord rec = stip_run(m, sched, 1000);
    REQUIRE(rec.outcome.halted());
    CHECK(*rec.outcome.verdict == Verdict::Accept);
    CHECK(rec.final_tape.window(start, 3) == "101");
  }
}

TEST_CASE("stream entries outside the input alphabet are rejected up front") {
  Machine m(toys::scan_right_accept());
  auto sched = StipulationSchedule::create(Tick(2), {"12", "10"});
  CHECK_THROWS_AS(stip_run(m, sched, 100), EncodingError);
}

TEST_CASE("the parity machine under an infinite interval equals its bare run") {
  Machine m(pr_machine_spec());
  auto sched = StipulationSchedule::create(Tick::infinity(), {"110+101010"});
  StipulatedRunRecord rec = stip_run(m, sched, 1000000);
  REQUIRE(rec.outcome.halted());
  CHECK(*rec.outcome.verdict == Verdict::Accept);
  CHECK(rec.rewrite_count == 0);
  CHECK(rec.trace_digest == bare_trace_digest(m, "110+101010", 1000000));
}

TEST_CASE("the parity machine under T=1 with two alternating inputs never halts") {
  Machine m(pr_machine_spec());
  auto sched = StipulationSchedule::create(Tick(1), {"110+101010", "1100+10110"});
  StipulatedRunRecord rec = stip_run(m, sched, 30000);
  CHECK(!rec.outcome.halted());
  if (rec.certificate) CHECK(verify_certificate(m, sched, *rec.certificate));
}

TEST_CASE("written inputs come from the stream in order") {
  // T=1 rewrites every tick; after k rewrites the next stream position must
  // be (1 + k) mod len.
  Machine m(toys::two_state_loop());
  auto sched = StipulationSchedule::create(Tick(1), {"10", "01", "11"});
  StipulatedRunRecord rec = stip_run(m, sched, 1000);
  CHECK(rec.stream_position_at_end == (1 + rec.rewrite_count) % 3);
}
