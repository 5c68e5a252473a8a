#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "uhtp/dynamics.hpp"
#include "uhtp/machine.hpp"
#include "uhtp/rational.hpp"
#include "uhtp/reversible.hpp"

namespace uhtp {

// A hitting-time instance: the machine fixes psi = |w0, 0, 0, 0>, the
// schedule fixes U(t), and the target mode fixes phi.
struct InstanceDescriptor {
  MachineSpec machine;
  Rational epsilon;
  PulseSchedule schedule;
  TargetMode target;
  std::int64_t horizon;  // grid covers [0, horizon]
  std::int64_t grid;     // G: samples n + j delta / G, 0 <= j <= G

  // Throws RangeError unless 0 < epsilon < 1/2, horizon >= 1, grid >= 1.
  void validate() const;

  BeaconStep step() const { return BeaconStep(machine, schedule.clock_mode()); }
  Rational threshold() const { return Rational(1) - epsilon; }
};

// G = max(2, ceil(2 delta / (delta - (2 delta / pi) asin(sqrt(1 - eps))))):
// enough samples per pulse that one lands past the point where a
// two-level pulse crosses 1 - eps. Independent of delta.
std::int64_t grid_for(const Rational& epsilon);

// Exact comparison of a double against a rational threshold.
bool meets_threshold(double fidelity, const Rational& threshold);

struct Hit {
  Rational t_hit;
  double fidelity;
  std::pair<Rational, Rational> window;  // enclosing pulse [n, n + delta]
};

struct Exhausted {
  std::int64_t horizon;
  double max_fidelity_seen;
};

struct HitReport {
  std::variant<Hit, Exhausted> outcome;

  bool is_hit() const { return std::holds_alternative<Hit>(outcome); }
  const Hit& hit() const { return std::get<Hit>(outcome); }
  const Exhausted& exhausted() const { return std::get<Exhausted>(outcome); }
};

// Pulse window enclosing grid time t.
std::pair<Rational, Rational> enclosing_window(const Rational& t, const Rational& delta);

// Visits grid times in increasing order until the visitor returns false.
void for_each_grid_time(const InstanceDescriptor& inst,
                        const std::function<bool(const Rational& t)>& visit);

// Visits grid points in increasing order until the visitor returns false.
// Grid: {n + j delta / G : 0 <= n < horizon, 0 <= j <= G} followed by t =
// horizon.
void scan_grid(const InstanceDescriptor& inst,
               const std::function<bool(const Rational& t, double fidelity)>& visit);

// Sequential semi-decision: the first grid time whose fidelity reaches
// 1 - epsilon, or Exhausted with the largest fidelity seen. Never reports
// a hit that is not there; hits between grid points can be missed.
HitReport uhit_semidecide(const InstanceDescriptor& inst);

struct UnreachableWithinHorizon {
  std::int64_t horizon;
};

// Delta t for forwarding psi onto the target. Not a certificate of
// unreachability when the horizon is exhausted.
std::variant<Rational, UnreachableWithinHorizon> delta_t_select(
    const InstanceDescriptor& inst);

std::vector<std::pair<Rational, double>> fidelity_trace(const InstanceDescriptor& inst);

}  // namespace uhtp
