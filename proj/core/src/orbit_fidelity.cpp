#include <algorithm>

#include "uhtp/dynamics.hpp"
#include "uhtp/error.hpp"

namespace uhtp {

OrbitFidelity::OrbitFidelity(BeaconStep step, PulseSchedule schedule,
                             ExtendedBasisState seed, LabelPredicate target,
                             DynamicsOptions options)
    : step_(std::move(step)),
      schedule_(std::move(schedule)),
      seed_(std::move(seed)),
      target_(std::move(target)),
      options_(options),
      cursor_(seed_) {
  if (!(step_.mode() == schedule_.clock_mode())) {
    throw RangeError("pulse schedule and step disagree on the clock mode");
  }
}

void OrbitFidelity::build_cycle() {
  // Streams once around the cycle, keeping only the predicate marks.
  ExtendedBasisState cursor = seed_;
  std::int64_t k = 0;
  do {
    if (static_cast<std::size_t>(k) >= options_.cycle_cap) {
      throw OrbitNotClosed("orbit longer than cycle cap " +
                           std::to_string(options_.cycle_cap));
    }
    const bool hit = target_(cursor);
    marks_.push_back(hit ? 1 : 0);
    if (hit) marked_positions_.push_back(k);
    step_.advance(cursor);
    ++k;
  } while (!(cursor == seed_));
  cycle_length_ = k;
  cycle_built_ = true;
}

double OrbitFidelity::at_index(std::int64_t index) {
  if (step_.mode().is_cyclic()) {
    if (!cycle_built_) build_cycle();
    return marks_[static_cast<std::size_t>(index % cycle_length_)] ? 1.0 : 0.0;
  }
  if (index < cursor_index_) {
    cursor_ = seed_;
    cursor_index_ = 0;
  }
  while (cursor_index_ < index) {
    step_.advance(cursor_);
    ++cursor_index_;
  }
  return target_(cursor_) ? 1.0 : 0.0;
}

double OrbitFidelity::at(const Rational& t) {
  if (t < 0) throw RangeError("time must be nonnegative");
  const std::int64_t whole = floor_to_int(t);
  const Rational frac = t - Rational(whole);
  if (frac == 0) return at_index(whole);
  if (frac >= schedule_.delta()) return at_index(whole + 1);

  if (!step_.mode().is_cyclic()) {
    throw OrbitNotClosed(
        "unbounded clock: mid-pulse times need a finite cycle (use a cyclic clock)");
  }
  if (!cycle_built_) build_cycle();
  const double sigma = to_double(frac / schedule_.delta());
  const std::int64_t here = whole % cycle_length_;
  double sum = 0.0;
  for (const std::int64_t p : marked_positions_) {
    sum += cycle_probability(cycle_length_, sigma, p - here);
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace uhtp
