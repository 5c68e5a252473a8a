#include "uhtp/protocol.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "uhtp/error.hpp"

namespace uhtp {

namespace {

// Pulses begun by time t: pulse k starts at k, so ceil(t) of them.
std::uint64_t pulses_by(const Rational& t) {
  const std::int64_t f = floor_to_int(t);
  return static_cast<std::uint64_t>(Rational(f) == t ? f : f + 1);
}

}  // namespace

void ProtocolBudget::validate() const {
  if (!(tau_max > 0)) throw RangeError("tau_max must be positive");
  if (e_max < 1) throw RangeError("e_max must be at least 1");
  if (failure_prob < 0 || failure_prob >= Rational(1, 2)) {
    throw RangeError("failure probability must lie in [0, 1/2)");
  }
}

ProtocolOutcome run_bounded_protocol(const InstanceDescriptor& inst,
                                     const ProtocolBudget& budget) {
  inst.validate();
  budget.validate();

  // prep
  const BeaconStep step = inst.step();
  OrbitFidelity meter(step, inst.schedule, step.initial(),
                      target_predicate(inst.machine, inst.target));
  const Rational threshold = inst.threshold();

  ProtocolOutcome outcome{ReportedUnreachable{false}, {}, std::nullopt};
  for_each_grid_time(inst, [&](const Rational& t) {
    // evol: refuse to cross either bound
    const std::uint64_t work = pulses_by(t);
    if (t > budget.tau_max || work > budget.e_max) {
      outcome.verdict = ReportedUnreachable{true};
      return false;
    }
    outcome.resources = Resources{t, work};
    // meas + post
    if (meets_threshold(meter.at(t), threshold)) {
      outcome.verdict = ReachableAt{t};
      return false;
    }
    return true;
  });

  if (outcome.resources.time_used > budget.tau_max ||
      outcome.resources.work_used > budget.e_max) {
    throw Error("internal: protocol exceeded its budget");
  }
  return outcome;
}

void grade(ProtocolOutcome& outcome, const GroundTruth& truth) {
  const bool halts = std::holds_alternative<Halts>(truth);
  outcome.correct = outcome.reports_reachable() == halts;
}

std::string counter_family_name(std::uint64_t n) {
  return "counter_family(" + std::to_string(n) + ")";
}

std::vector<SweepWitness> adversarial_sweep(std::span<const ProtocolBudget> budgets,
                                            const SweepOptions& options) {
  if (budgets.empty()) throw RangeError("sweep needs at least one budget");
  std::vector<SweepWitness> witnesses;
  for (const auto& budget : budgets) {
    budget.validate();
    if (Rational(options.horizon) <= budget.tau_max) {
      throw RangeError("sweep horizon must exceed every tau_max");
    }
    bool found = false;
    for (std::uint64_t n = 1; n <= options.family_cap && !found; ++n) {
      const MachineSpec machine = counter_family(n);
      const auto run = classical_run(machine, std::numeric_limits<std::uint64_t>::max());
      const std::uint64_t k = std::get<Halted>(run).steps;
      if (Rational(BigInt(k)) <= budget.tau_max) continue;

      const InstanceDescriptor inst =
          encode(machine, options.epsilon, options.delta, ClockMode::unbounded(),
                 BeaconSubspace{}, options.horizon);
      ProtocolOutcome outcome = run_bounded_protocol(inst, budget);
      grade(outcome, Halts{k});
      if (!*outcome.correct) {
        witnesses.push_back({budget, counter_family_name(n), n, k, std::move(outcome)});
        found = true;
      }
    }
    if (!found) {
      throw SearchRangeExhausted("no misclassified counter_family member up to n = " +
                                 std::to_string(options.family_cap) + " for tau_max = " +
                                 format_rational(budget.tau_max));
    }
  }
  return witnesses;
}

HitReport classify_with_noise(const InstanceDescriptor& inst, const NoiseModel& noise) {
  inst.validate();
  const Rational& eps = inst.epsilon;
  if (noise.gamma < 0) throw MarginViolation("gamma must be nonnegative");
  // Noise must not bridge the gap: a zero fidelity pushed up by gamma has to
  // stay below the relaxed threshold, and gamma must sit below 1 - 2 eps.
  if (noise.gamma >= 1 - 2 * eps || 2 * noise.gamma >= 1 - eps) {
    throw MarginViolation("gamma = " + format_rational(noise.gamma) +
                          " is too large for epsilon = " + format_rational(eps));
  }
  const Rational relaxed = 1 - eps - noise.gamma;
  const double gamma = to_double(noise.gamma);
  std::mt19937_64 rng(noise.seed);

  std::optional<Hit> hit;
  double max_seen = 0.0;
  scan_grid(inst, [&](const Rational& t, double f) {
    const double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    const double perturbed = std::clamp(f + gamma * (2.0 * draw - 1.0), 0.0, 1.0);
    max_seen = std::max(max_seen, perturbed);
    if (meets_threshold(perturbed, relaxed)) {
      hit = Hit{t, perturbed, enclosing_window(t, inst.schedule.delta())};
      return false;
    }
    return true;
  });
  if (hit) return HitReport{*hit};
  return HitReport{Exhausted{inst.horizon, max_seen}};
}

}  // namespace uhtp
