#include "stipsim/stipulation.hpp"

#include "stipsim/hashing.hpp"

namespace stipsim {

StipulationSchedule StipulationSchedule::create(Tick variation_interval,
                                                std::vector<std::string> input_stream,
                                                long region_start) {
  if (!variation_interval.is_infinite() && variation_interval.count() < 1)
    throw ConfigError("variation interval must be >= 1 tick or inf");
  if (input_stream.empty()) throw ConfigError("input stream is empty");
  const std::size_t len = input_stream.front().size();
  if (len == 0) throw ConfigError("empty input: the input region would overlap nothing");
  for (const std::string& s : input_stream)
    if (s.size() != len)
      throw ConfigError("recurring inputs must all have the length of the first input");
  if (input_stream.size() == 1) {
    if (!variation_interval.is_infinite())
      throw ConfigError(
          "a single-entry stream cannot satisfy the distinct-consecutive-inputs "
          "postulate under a finite interval");
  } else {
    for (std::size_t i = 0; i < input_stream.size(); ++i) {
      const std::string& a = input_stream[i];
      const std::string& b = input_stream[(i + 1) % input_stream.size()];
      if (a == b)
        throw ConfigError("consecutive stream entries " + std::to_string(i) + " and " +
                          std::to_string((i + 1) % input_stream.size()) + " are identical");
    }
  }
  StipulationSchedule s;
  s.variation_interval = variation_interval;
  s.input_stream = std::move(input_stream);
  s.region_start = region_start;
  return s;
}

std::pair<const std::string&, std::size_t> next_input(const StipulationSchedule& schedule,
                                                      std::size_t position) {
  const std::size_t n = schedule.input_stream.size();
  return {schedule.input_stream[position % n], (position + 1) % n};
}

std::uint64_t TraceKey::hash() const {
  return hash_mix(hash_mix(config_digest, phase), stream_index);
}

std::optional<CycleCertificate> CycleDetector::push(const TraceKey& key, std::uint64_t tick) {
  auto [it, inserted] = first_tick_.try_emplace(key.hash(), tick);
  if (inserted) return std::nullopt;
  return CycleCertificate{it->second, tick, key};
}

namespace {

// Deterministic co-simulation stepper: one tick per advance(), applying the
// scheduled rewrite before the transition when the tick is a multiple of T.
class CosimCursor {
 public:
  CosimCursor(const Machine& machine, const StipulationSchedule& schedule)
      : schedule_(schedule), engine_(machine.start(schedule.input_stream.front(),
                                                   schedule.region_start)) {
    pos_ = 1 % schedule_.input_stream.size();
  }

  bool halted() const { return engine_->halted(); }
  std::uint64_t tick() const { return tick_; }
  std::size_t stream_position() const { return pos_; }
  RunEngine& engine() { return *engine_; }
  const RunEngine& engine() const { return *engine_; }

  // Advances one tick. Reports whether a rewrite happened at this tick.
  bool advance() {
    const std::uint64_t t = tick_ + 1;
    bool rewrote = false;
    const Tick T = schedule_.variation_interval;
    if (!T.is_infinite() && t % T.count() == 0) {
      auto [entry, next_pos] = next_input(schedule_, pos_);
      engine_->tape().write_string(schedule_.region_start, entry);
      pos_ = next_pos;
      rewrote = true;
    }
    engine_->step();
    tick_ = t;
    return rewrote;
  }

  TraceKey key() const {
    const Tick T = schedule_.variation_interval;
    TraceKey k;
    k.config_digest = configuration_digest(*engine_);
    if (!T.is_infinite()) {
      k.phase = tick_ % T.count();
      k.stream_index = pos_;
    }
    return k;
  }

  // Full state for exact comparison; collisions in the digest cannot fool it.
  std::string snapshot() const {
    std::string s = engine_->control_key();
    s += '\x1f';
    s += std::to_string(engine_->head());
    s += '\x1f';
    s += engine_->tape().canonical();
    s += '\x1f';
    s += std::to_string(pos_);
    const Tick T = schedule_.variation_interval;
    s += '\x1f';
    s += std::to_string(T.is_infinite() ? 0 : tick_ % T.count());
    return s;
  }

 private:
  const StipulationSchedule& schedule_;
  std::unique_ptr<RunEngine> engine_;
  std::size_t pos_ = 0;
  std::uint64_t tick_ = 0;
};

}  // namespace

bool verify_certificate(const Machine& machine, const StipulationSchedule& schedule,
                        const CycleCertificate& cert) {
  if (cert.second_occurrence_tick <= cert.first_occurrence_tick) return false;
  CosimCursor cursor(machine, schedule);
  for (std::uint64_t t = 0; t < cert.first_occurrence_tick; ++t) {
    if (cursor.halted()) return false;
    cursor.advance();
  }
  if (cursor.halted()) return false;
  const std::string first = cursor.snapshot();
  if (!(cursor.key() == cert.witness)) return false;
  for (std::uint64_t t = 0; t < cert.period(); ++t) {
    if (cursor.halted()) return false;
    cursor.advance();
  }
  if (cursor.halted()) return false;
  return cursor.snapshot() == first;
}

StipulatedRunRecord stip_run(const Machine& machine, const StipulationSchedule& schedule,
                             std::uint64_t budget) {
  if (budget < 1) throw ConfigError("budget must be >= 1");
  for (const std::string& entry : schedule.input_stream)
    if (!machine.accepts_input(entry))
      throw EncodingError("stream entry '" + entry + "' is not a valid input");

  StipulatedRunRecord rec;
  CosimCursor cursor(machine, schedule);
  CycleDetector detector;
  std::uint64_t trace = kFnvOffset;

  auto note_tick = [&] {
    trace = hash_mix(trace, configuration_digest(cursor.engine()));
  };
  note_tick();
  detector.push(cursor.key(), 0);

  while (true) {
    if (cursor.halted()) {
      rec.outcome.kind = RunOutcome::Kind::Halted;
      rec.outcome.verdict = cursor.engine().verdict();
      break;
    }
    if (cursor.tick() >= budget) {
      rec.outcome.kind = RunOutcome::Kind::BudgetExhausted;
      rec.outcome.budget = budget;
      break;
    }
    bool rewrote = cursor.advance();
    if (rewrote) {
      ++rec.rewrite_count;
      rec.rewrite_ticks.push_back(cursor.tick());
    }
    note_tick();
    if (!cursor.halted()) {
      if (auto cand = detector.push(cursor.key(), cursor.tick())) {
        // A repeated digest is only a candidate; replay one period and compare
        // full states before claiming divergence.
        if (verify_certificate(machine, schedule, *cand)) {
          rec.outcome.kind = RunOutcome::Kind::ProvenDiverging;
          rec.certificate = *cand;
          break;
        }
      }
    }
  }

  rec.outcome.steps = cursor.engine().steps();
  rec.outcome.ticks = run_time(rec.outcome.steps);
  rec.trace_digest = trace;
  rec.stream_position_at_end = cursor.stream_position();
  rec.final_tape = cursor.engine().tape();
  rec.final_head = cursor.engine().head();
  rec.final_control = cursor.engine().control_key();
  rec.final_steps = cursor.engine().steps();
  return rec;
}

std::uint64_t bare_trace_digest(const Machine& machine, std::string_view input,
                                std::uint64_t budget) {
  auto engine = machine.start(input, 0);
  std::uint64_t trace = kFnvOffset;
  trace = hash_mix(trace, configuration_digest(*engine));
  while (!engine->halted() && engine->steps() < budget) {
    engine->step();
    trace = hash_mix(trace, configuration_digest(*engine));
  }
  return trace;
}

}  // namespace stipsim
