#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "uhtp/hitting.hpp"
#include "uhtp/rational.hpp"
#include "uhtp/reduction.hpp"

namespace uhtp {

// Resource bounds of a physical decision protocol. Time is logical
// evolution time consumed; work is the number of pulses applied (idle
// segments are free).
struct ProtocolBudget {
  Rational tau_max;
  std::uint64_t e_max = 1;
  Rational failure_prob{0};  // carried for interface completeness; the desk protocol is deterministic

  // Throws RangeError unless tau_max > 0, e_max >= 1, 0 <= failure_prob < 1/2.
  void validate() const;
};

struct ReachableAt {
  Rational t;
};

// The protocol's forced total answer when it finds no hit: either the
// instance horizon or the budget ran out.
struct ReportedUnreachable {
  bool budget_exhausted;
};

using ProtocolVerdict = std::variant<ReachableAt, ReportedUnreachable>;

struct Resources {
  Rational time_used{0};
  std::uint64_t work_used = 0;
};

struct ProtocolOutcome {
  ProtocolVerdict verdict;
  Resources resources;
  std::optional<bool> correct;  // set by grade()

  bool reports_reachable() const { return std::holds_alternative<ReachableAt>(verdict); }
};

// prep: initial label; evol: grid walk charging time t and ceil(t) pulses;
// meas: fidelity at each grid point; post: first point at or above
// 1 - epsilon, else ReportedUnreachable. Resources never exceed the budget.
ProtocolOutcome run_bounded_protocol(const InstanceDescriptor& inst,
                                     const ProtocolBudget& budget);

// Reachable is correct iff the machine halts; unreachable iff it loops.
void grade(ProtocolOutcome& outcome, const GroundTruth& truth);

struct SweepWitness {
  ProtocolBudget budget;
  std::string name;
  std::uint64_t n;
  std::uint64_t K;
  ProtocolOutcome outcome;
};

struct SweepOptions {
  Rational epsilon{1, 4};
  Rational delta{1, 2};
  std::uint64_t family_cap = 10000;
  // Instance horizon; must exceed every tau_max for the witness to be a
  // budget failure rather than a horizon one.
  std::int64_t horizon = 1000000;
};

// For each budget, the smallest counter_family member with K(n) > tau_max
// that the bounded protocol misclassifies. Throws SearchRangeExhausted if
// none exists up to family_cap.
std::vector<SweepWitness> adversarial_sweep(std::span<const ProtocolBudget> budgets,
                                            const SweepOptions& options = {});

std::string counter_family_name(std::uint64_t n);

struct NoiseModel {
  Rational gamma{0};
  std::uint64_t seed = 0;
};

// Each sampled fidelity is shifted by a reproducible draw from
// [-gamma, gamma], clamped to [0, 1], and compared with 1 - epsilon - gamma.
// Throws MarginViolation unless gamma < 1 - 2 epsilon and 2 gamma < 1 - epsilon.
HitReport classify_with_noise(const InstanceDescriptor& inst, const NoiseModel& noise);

}  // namespace uhtp
