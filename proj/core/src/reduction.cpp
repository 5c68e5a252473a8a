#include "uhtp/reduction.hpp"

#include "uhtp/error.hpp"

namespace uhtp {

namespace {

std::string describe(const Configuration& c, const MachineSpec& spec) {
  return "state " + spec.state_name(c.state) + ", head " + std::to_string(c.head) +
         ", " + std::to_string(c.tape.size()) + " non-blank cells";
}

}  // namespace

void check_ground_truth(const CorpusEntry& entry) {
  const auto& spec = entry.machine;
  if (const auto* halts = std::get_if<Halts>(&entry.truth)) {
    const RunResult run = classical_run(spec, halts->steps);
    const auto* halted = std::get_if<Halted>(&run);
    if (!halted || halted->steps != halts->steps) {
      const std::string observed =
          halted ? "halts at K = " + std::to_string(halted->steps)
                 : "still running after " + std::to_string(halts->steps) + " steps";
      throw CorpusError("corpus entry '" + entry.name + "' is labelled Halts{K = " +
                        std::to_string(halts->steps) + "} but the machine " + observed);
    }
    return;
  }
  const auto& loops = std::get<LoopsForever>(entry.truth);
  if (loops.first >= loops.second) {
    throw CorpusError("corpus entry '" + entry.name + "': revisit needs r < r'");
  }
  Configuration c = initial_configuration(spec);
  Configuration at_first;
  while (c.step_count < loops.second) {
    if (c.step_count == loops.first) at_first = c;
    auto next = classical_step(spec, c);
    if (std::holds_alternative<HaltedMarker>(next)) {
      throw CorpusError("corpus entry '" + entry.name + "' is labelled LoopsForever but "
                        "halts at step " + std::to_string(c.step_count));
    }
    c = std::move(std::get<Configuration>(next));
  }
  if (!same_machine_state(at_first, c)) {
    throw CorpusError("corpus entry '" + entry.name + "': configurations at steps " +
                      std::to_string(loops.first) + " (" + describe(at_first, spec) +
                      ") and " + std::to_string(loops.second) + " (" +
                      describe(c, spec) + ") differ");
  }
}

std::int64_t default_grid(const Rational& epsilon, const ClockMode& mode) {
  return mode.is_cyclic() ? grid_for(epsilon) : 1;
}

InstanceDescriptor encode(const MachineSpec& machine, const Rational& epsilon,
                          const Rational& delta, const ClockMode& mode,
                          const TargetMode& target, std::int64_t horizon,
                          std::int64_t grid) {
  if (grid < 0) throw RangeError("grid must be at least 1");
  InstanceDescriptor inst{machine, epsilon, PulseSchedule(delta, mode),
                          target,  horizon, grid == 0 ? 1 : grid};
  inst.validate();
  if (grid == 0) inst.grid = default_grid(epsilon, mode);
  target_predicate(machine, target);
  return inst;
}

Verdict judge(const GroundTruth& truth, const HitReport& observed,
              const InstanceDescriptor& inst) {
  const Rational& delta = inst.schedule.delta();
  if (const auto* halts = std::get_if<Halts>(&truth)) {
    const auto k = static_cast<std::int64_t>(halts->steps);
    if (k > inst.horizon - 1) {
      return Disagree{"halting step K = " + std::to_string(k) + " lies beyond horizon - 1"};
    }
    if (!observed.is_hit()) {
      return Disagree{"machine halts at K = " + std::to_string(k) +
                      " but the semi-decider exhausted the horizon"};
    }
    const Hit& hit = observed.hit();
    const Rational kr(k);
    const bool overlaps = hit.window.first <= kr + delta && kr <= hit.window.second;
    if (!overlaps || hit.t_hit < kr || hit.t_hit > kr + 1) {
      return Disagree{"hit at t = " + format_rational(hit.t_hit) + " outside the window [" +
                      std::to_string(k) + ", " + format_rational(kr + delta) + "]"};
    }
    return Agree{};
  }
  if (observed.is_hit()) {
    return Disagree{"certified looper reported a hit at t = " +
                    format_rational(observed.hit().t_hit)};
  }
  if (from_double(observed.exhausted().max_fidelity_seen) > inst.epsilon) {
    return Disagree{"looper fidelity exceeded epsilon"};
  }
  return Agree{};
}

std::vector<ReductionReport> verify_corpus(std::span<const CorpusEntry> corpus,
                                           const ReductionParams& params) {
  if (!std::holds_alternative<BeaconSubspace>(params.target)) {
    throw RangeError("corpus verification needs the beacon target");
  }
  for (const auto& entry : corpus) check_ground_truth(entry);

  std::vector<ReductionReport> reports;
  reports.reserve(corpus.size());
  for (const auto& entry : corpus) {
    const InstanceDescriptor inst =
        encode(entry.machine, params.epsilon, params.delta, params.mode, params.target,
               params.horizon, params.grid);
    HitReport observed = uhit_semidecide(inst);
    Verdict verdict = judge(entry.truth, observed, inst);
    reports.push_back({entry.name, entry.truth, std::move(observed), std::move(verdict)});
  }
  return reports;
}

MachineSpec counter_family(std::uint64_t n) {
  if (n < 1) throw RangeError("counter family index must be at least 1");
  // Sweep right to the end of the block, erase the last 1, walk back to the
  // left end, repeat; halt when the block is empty.
  const std::vector<RuleText> rules = {
      {"seek", "1", "seek", "1", Move::Right},
      {"seek", "_", "erase", "_", Move::Left},
      {"erase", "1", "back", "_", Move::Left},
      {"erase", "_", "halt", "_", Move::Stay},
      {"back", "1", "back", "1", Move::Left},
      {"back", "_", "seek", "_", Move::Right},
  };
  return MachineSpec::create({"seek", "erase", "back", "halt"}, {"_", "1"}, "seek", "halt",
                             rules, std::vector<std::string>(n, "1"));
}

}  // namespace uhtp
