#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stipsim/engine.hpp"
#include "stipsim/ticks.hpp"

namespace stipsim {

// The Stipulation machine's side of the contract: a fixed variation interval
// T, a finite cyclic list of recurring inputs, and the designated input
// region. T = infinity means the input is written once and never rewritten.
struct StipulationSchedule {
  Tick variation_interval;
  std::vector<std::string> input_stream;
  long region_start = 0;

  // Validates the postulates that are checkable without a machine:
  //   - interval >= 1 tick or infinite,
  //   - all stream entries nonempty and of equal length,
  //   - no two cyclically-consecutive entries identical; a single-entry
  //     stream is only legal with an infinite interval.
  static StipulationSchedule create(Tick variation_interval,
                                    std::vector<std::string> input_stream,
                                    long region_start = 0);

  std::size_t region_length() const { return input_stream.front().size(); }
};

// Returns the stream entry at `position` and the cyclically advanced position.
std::pair<const std::string&, std::size_t> next_input(const StipulationSchedule& schedule,
                                                      std::size_t position);

// Everything the future of a stipulated run depends on: the instantaneous
// configuration, the tick phase within the variation interval, and which
// stream entry comes next.
struct TraceKey {
  std::uint64_t config_digest = 0;
  std::uint64_t phase = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const TraceKey&, const TraceKey&) = default;
  std::uint64_t hash() const;
};

// Proof that a run is periodic and therefore never halts: the same key was
// observed at two ticks, and replaying one period from the first occurrence
// reproduces the full machine state exactly.
struct CycleCertificate {
  std::uint64_t first_occurrence_tick = 0;
  std::uint64_t second_occurrence_tick = 0;
  TraceKey witness;

  std::uint64_t period() const { return second_occurrence_tick - first_occurrence_tick; }
};

// First-repeat detector over a stream of trace keys. Keys are matched by
// their 64-bit composite hash; a returned certificate is therefore a
// candidate, and stip_run confirms it by replay before reporting divergence.
class CycleDetector {
 public:
  // Feeds the key observed at `tick`; returns a certificate candidate on the
  // first repeated key.
  std::optional<CycleCertificate> push(const TraceKey& key, std::uint64_t tick);

 private:
  std::unordered_map<std::uint64_t, std::uint64_t> first_tick_;
};

struct StipulatedRunRecord {
  RunOutcome outcome;
  std::optional<CycleCertificate> certificate;  // ProvenDiverging only
  std::uint64_t rewrite_count = 0;
  std::vector<std::uint64_t> rewrite_ticks;
  std::uint64_t trace_digest = 0;  // hash chain over per-tick configurations
  std::size_t stream_position_at_end = 0;

  // Final machine state, for output decoding and postulate checks.
  Tape final_tape;
  long final_head = 0;
  std::string final_control;
  std::uint64_t final_steps = 0;
};

// Runs the co-simulation: tick 0 writes the first stream entry into the
// region and places the machine at its start state with the head at
// region_start; each subsequent tick the machine takes one transition; at
// every tick k*T (k >= 1) the next stream entry overwrites the input region
// BEFORE that tick's transition, preserving control state and head position.
// Halting stops rewrites permanently. The outcome is halted, proven-diverging
// (replay-verified cycle), or budget-exhausted.
StipulatedRunRecord stip_run(const Machine& machine, const StipulationSchedule& schedule,
                             std::uint64_t budget);

// Trace digest of a bare (unstipulated) run, chained the same way stip_run
// chains its per-tick digests. Runs at origin 0 like tm_run.
std::uint64_t bare_trace_digest(const Machine& machine, std::string_view input,
                                std::uint64_t budget);

// Replays `cert.period()` ticks from the certificate's first occurrence and
// checks that the full machine state recurs. Used by stip_run before it
// claims divergence, and exposed so tests can audit certificates.
bool verify_certificate(const Machine& machine, const StipulationSchedule& schedule,
                        const CycleCertificate& cert);

}  // namespace stipsim
