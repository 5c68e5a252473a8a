#include "uhtp/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "uhtp/error.hpp"

namespace uhtp {

void InstanceDescriptor::validate() const {
  if (!(epsilon > 0 && epsilon < Rational(1, 2))) {
    throw RangeError("epsilon must satisfy 0 < epsilon < 1/2, got " +
                     format_rational(epsilon));
  }
  if (horizon < 1) throw RangeError("horizon must be positive");
  if (grid < 1) throw RangeError("grid must be at least 1");
}

std::int64_t grid_for(const Rational& epsilon) {
  if (!(epsilon > 0 && epsilon < Rational(1, 2))) {
    throw RangeError("epsilon must satisfy 0 < epsilon < 1/2");
  }
  // The delta factors cancel: 2 delta / (delta (1 - (2/pi) asin sqrt(1-eps))).
  const double edge = (2.0 / std::numbers::pi) * std::asin(std::sqrt(1.0 - to_double(epsilon)));
  const double samples = 2.0 / (1.0 - edge);
  return std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(samples - 1e-9)));
}

bool meets_threshold(double fidelity, const Rational& threshold) {
  return from_double(fidelity) >= threshold;
}

std::pair<Rational, Rational> enclosing_window(const Rational& t, const Rational& delta) {
  const std::int64_t n = floor_to_int(t);
  if (Rational(n) != t) return {Rational(n), Rational(n) + delta};
  if (n == 0) return {Rational(0), Rational(0)};
  return {Rational(n - 1), Rational(n - 1) + delta};
}

void for_each_grid_time(const InstanceDescriptor& inst,
                        const std::function<bool(const Rational&)>& visit) {
  inst.validate();
  const Rational spacing = inst.schedule.delta() / Rational(inst.grid);
  for (std::int64_t n = 0; n < inst.horizon; ++n) {
    for (std::int64_t j = 0; j <= inst.grid; ++j) {
      if (!visit(Rational(n) + spacing * Rational(j))) return;
    }
  }
  visit(Rational(inst.horizon));
}

void scan_grid(const InstanceDescriptor& inst,
               const std::function<bool(const Rational&, double)>& visit) {
  inst.validate();
  const BeaconStep step = inst.step();
  OrbitFidelity probe(step, inst.schedule, step.initial(),
                      target_predicate(inst.machine, inst.target));
  for_each_grid_time(inst, [&](const Rational& t) { return visit(t, probe.at(t)); });
}

HitReport uhit_semidecide(const InstanceDescriptor& inst) {
  const Rational threshold = inst.threshold();
  std::optional<Hit> hit;
  double max_seen = 0.0;
  scan_grid(inst, [&](const Rational& t, double f) {
    max_seen = std::max(max_seen, f);
    if (meets_threshold(f, threshold)) {
      hit = Hit{t, f, enclosing_window(t, inst.schedule.delta())};
      return false;
    }
    return true;
  });
  if (hit) return HitReport{*hit};
  return HitReport{Exhausted{inst.horizon, max_seen}};
}

std::variant<Rational, UnreachableWithinHorizon> delta_t_select(
    const InstanceDescriptor& inst) {
  const HitReport report = uhit_semidecide(inst);
  if (report.is_hit()) return report.hit().t_hit;
  return UnreachableWithinHorizon{inst.horizon};
}

std::vector<std::pair<Rational, double>> fidelity_trace(const InstanceDescriptor& inst) {
  std::vector<std::pair<Rational, double>> out;
  scan_grid(inst, [&](const Rational& t, double f) {
    out.emplace_back(t, f);
    return true;
  });
  return out;
}

}  // namespace uhtp
