#include "uhtp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numbers>
#include <unordered_map>

#include "uhtp/error.hpp"

namespace uhtp {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;
// Absolute error of one cycle_amplitude evaluation.
constexpr double kKernelError = 64 * kUnitRoundoff;

// Ceiling for rationals.
std::int64_t ceil_to_int(const Rational& value) {
  const std::int64_t f = floor_to_int(value);
  return Rational(f) == value ? f : f + 1;
}

void require_same_clock(const BeaconStep& step, const PulseSchedule& schedule) {
  if (!(step.mode() == schedule.clock_mode())) {
    throw RangeError("pulse schedule clock (" + schedule.clock_mode().to_string() +
                     ") differs from the step's clock (" + step.mode().to_string() + ")");
  }
}

std::int64_t reduce_signed(std::int64_t k, std::int64_t length) {
  k %= length;
  if (k < 0) k += length;
  if (2 * k > length) k -= length;
  return k;
}

struct CycleInfo {
  std::vector<ExtendedBasisState> labels;
  std::vector<std::string> keys;
};

// Cycles found so far, indexed by member key.
class CycleCache {
 public:
  CycleCache(const BeaconStep& step, std::size_t cap) : step_(step), cap_(cap) {}

  std::pair<const CycleInfo*, std::size_t> locate(const std::string& key,
                                                  const ExtendedBasisState& label) {
    if (const auto it = where_.find(key); it != where_.end()) {
      return {&cycles_[it->second.first], it->second.second};
    }
    CycleInfo info;
    info.labels = orbit_cycle(step_, label, cap_);
    info.keys.reserve(info.labels.size());
    for (const auto& l : info.labels) info.keys.push_back(serialize(l));
    cycles_.push_back(std::move(info));
    const std::size_t id = cycles_.size() - 1;
    for (std::size_t p = 0; p < cycles_[id].keys.size(); ++p) {
      where_.emplace(cycles_[id].keys[p], std::pair{id, p});
    }
    return {&cycles_[id], 0};
  }

 private:
  const BeaconStep& step_;
  std::size_t cap_;
  std::deque<CycleInfo> cycles_;
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> where_;
};

}  // namespace

PulseSchedule::PulseSchedule(Rational delta, ClockMode mode)
    : delta_(std::move(delta)), mode_(mode) {
  if (!(delta_ > 0 && delta_ < 1)) {
    throw RangeError("pulse width must satisfy 0 < delta < 1, got " +
                     format_rational(delta_));
  }
}

std::complex<double> cycle_amplitude(std::int64_t length, double sigma,
                                     std::int64_t k) {
  // c_k = (1/L) sum_j exp(i theta_j (sigma - k)) over the principal
  // angles theta_j in (-pi, pi]; periodic in k with period L.
  const std::int64_t kr = reduce_signed(k, length);
  const double x = sigma - static_cast<double>(kr);
  const double y = std::numbers::pi * x / static_cast<double>(length);
  const double denom = static_cast<double>(length) * std::sin(y);
  if (denom == 0.0) return {1.0, 0.0};  // sigma == 0, k == 0
  const double sign = (kr % 2 == 0) ? 1.0 : -1.0;
  const double magnitude = sign * std::sin(std::numbers::pi * sigma) / denom;
  if (length % 2 == 1) return {magnitude, 0.0};
  return std::polar(magnitude, y);
}

double cycle_probability(std::int64_t length, double sigma, std::int64_t k) {
  const std::int64_t kr = reduce_signed(k, length);
  const double y = std::numbers::pi * (sigma - static_cast<double>(kr)) /
                   static_cast<double>(length);
  const double denom = static_cast<double>(length) * std::sin(y);
  if (denom == 0.0) return 1.0;
  const double num = std::sin(std::numbers::pi * sigma);
  return (num * num) / (denom * denom);
}

SparseState evolve_integer(const BeaconStep& step, const SparseState& psi,
                           std::uint64_t n) {
  if (psi.mid_pulse()) {
    throw TimeTagError("evolve_integer needs a state outside a pulse window (time tag " +
                       format_rational(psi.time_tag()) + ")");
  }
  SparseStateBuilder out;
  for (const auto& [key, entry] : psi.support()) {
    ExtendedBasisState label = entry.label;
    for (std::uint64_t i = 0; i < n; ++i) step.advance(label);
    out.add(label, entry.amplitude);
  }
  return std::move(out).build(psi.time_tag() + Rational(BigInt(n)), false);
}

std::vector<ExtendedBasisState> orbit_cycle(const BeaconStep& step,
                                            const ExtendedBasisState& seed,
                                            std::size_t cap) {
  if (!step.mode().is_cyclic()) {
    throw OrbitNotClosed(
        "unbounded clock: the clock strictly increases along every orbit, so no "
        "orbit closes and V^sigma is not basis-local");
  }
  std::vector<ExtendedBasisState> cycle;
  ExtendedBasisState cursor = seed;
  do {
    if (cycle.size() >= cap) {
      throw OrbitNotClosed("orbit longer than cycle cap " + std::to_string(cap));
    }
    cycle.push_back(cursor);
    step.advance(cursor);
  } while (!(cursor == seed));
  return cycle;
}

std::vector<ExtendedBasisState> enumerate_reachable(const BeaconStep& step,
                                                    const ExtendedBasisState& seed,
                                                    std::uint64_t horizon) {
  std::vector<ExtendedBasisState> out{seed};
  ExtendedBasisState cursor = seed;
  for (std::uint64_t k = 1; k <= horizon; ++k) {
    step.advance(cursor);
    // forward is injective, so the first repeat is the seed itself.
    if (step.mode().is_cyclic() && cursor == seed) break;
    out.push_back(cursor);
  }
  return out;
}

SparseState evolve_to(const BeaconStep& step, const PulseSchedule& schedule,
                      const SparseState& psi, const Rational& t,
                      const DynamicsOptions& options) {
  require_same_clock(step, schedule);
  if (psi.mid_pulse()) {
    throw TimeTagError("evolve_to needs a state outside a pulse window");
  }
  if (t < psi.time_tag()) {
    throw RangeError("cannot evolve backwards from " + format_rational(psi.time_tag()) +
                     " to " + format_rational(t));
  }
  // A state tagged inside an idle segment already carries the next pulse.
  const std::int64_t base = ceil_to_int(psi.time_tag());
  const std::int64_t whole = floor_to_int(t);
  const Rational frac = t - Rational(whole);

  if (frac == 0 || frac >= schedule.delta()) {
    const std::int64_t target = frac == 0 ? whole : whole + 1;
    SparseState settled =
        evolve_integer(step, psi, static_cast<std::uint64_t>(target - base));
    SparseStateBuilder out;
    for (const auto& [key, e] : settled.support()) out.add(key, e.label, e.amplitude);
    return std::move(out).build(t, false);
  }

  const SparseState start =
      evolve_integer(step, psi, static_cast<std::uint64_t>(whole - base));
  const double sigma = to_double(frac / schedule.delta());

  struct Accum {
    const ExtendedBasisState* label;
    std::complex<double> value;
    double error;
    std::size_t terms;
  };
  std::map<std::string, Accum> acc;
  CycleCache cycles(step, options.cycle_cap);

  for (const auto& [key, entry] : start.support()) {
    const auto [cycle, pos] = cycles.locate(key, entry.label);
    const auto length = static_cast<std::int64_t>(cycle->labels.size());
    const std::complex<double> a = entry.amplitude.value();
    const double a_abs = std::abs(a);
    const double a_err = entry.amplitude.error_bound();
    for (std::int64_t k = 0; k < length; ++k) {
      const std::complex<double> c = cycle_amplitude(length, sigma, k);
      const std::size_t dest = (pos + static_cast<std::size_t>(k)) % cycle->labels.size();
      auto [it, fresh] = acc.try_emplace(cycle->keys[dest],
                                         Accum{&cycle->labels[dest], {}, 0.0, 0});
      it->second.value += a * c;
      it->second.error += a_abs * kKernelError + a_err * std::abs(c);
      it->second.terms += 1;
    }
  }

  const double budget = std::ldexp(1.0, -options.precision_bits);
  SparseStateBuilder out;
  for (auto& [key, e] : acc) {
    const double err = e.error + static_cast<double>(e.terms) * 4 * kUnitRoundoff *
                                     (std::abs(e.value) + kKernelError);
    if (err > budget) {
      throw PrecisionExceeded("mid-pulse amplitude error bound " + std::to_string(err) +
                              " exceeds 2^-" + std::to_string(options.precision_bits));
    }
    out.add(key, *e.label, Amplitude::approximate(e.value, err));
  }
  return std::move(out).build(t, true);
}

double fidelity(const SparseState& alpha, const SparseState& beta) {
  const auto& small = alpha.size() <= beta.size() ? alpha : beta;
  const auto& large = alpha.size() <= beta.size() ? beta : alpha;
  if (alpha.is_exact() && beta.is_exact()) {
    GaussianRational overlap{0, 0};
    for (const auto& [key, e] : small.support()) {
      const auto it = large.support().find(key);
      if (it == large.support().end()) continue;
      overlap = overlap + e.amplitude.exact_value()->conj() *
                              *it->second.amplitude.exact_value();
    }
    return to_double(overlap.norm());
  }
  std::complex<double> overlap;
  for (const auto& [key, e] : small.support()) {
    const auto it = large.support().find(key);
    if (it == large.support().end()) continue;
    overlap += std::conj(e.amplitude.value()) * it->second.amplitude.value();
  }
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

double subspace_fidelity(const SparseState& alpha, const LabelPredicate& target) {
  if (alpha.is_exact()) {
    Rational sum = 0;
    for (const auto& [key, e] : alpha.support()) {
      if (target(e.label)) sum += e.amplitude.exact_value()->norm();
    }
    return to_double(sum);
  }
  double sum = 0.0;
  for (const auto& [key, e] : alpha.support()) {
    if (target(e.label)) sum += std::norm(e.amplitude.value());
  }
  return std::clamp(sum, 0.0, 1.0);
}

ApproxUnitary approx_unitary(const BeaconStep& step, const PulseSchedule& schedule,
                             std::span<const ExtendedBasisState> basis,
                             const Rational& t, int m, const DynamicsOptions& options) {
  require_same_clock(step, schedule);
  if (t < 0) throw RangeError("time must be nonnegative");
  const auto dim = static_cast<Eigen::Index>(basis.size());

  std::unordered_map<std::string, Eigen::Index> index;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (!index.emplace(serialize(basis[static_cast<std::size_t>(i)]), i).second) {
      throw RangeError("basis lists a label twice");
    }
  }
  const auto row_of = [&](const std::string& key) {
    const auto it = index.find(key);
    if (it == index.end()) {
      throw BasisNotClosed("basis is not closed under the evolution to t = " +
                           format_rational(t));
    }
    return it->second;
  };

  ApproxUnitary result{Eigen::MatrixXcd::Zero(dim, dim), 0.0};
  const std::int64_t whole = floor_to_int(t);
  const Rational frac = t - Rational(whole);

  if (frac == 0 || frac >= schedule.delta()) {
    const std::int64_t steps = frac == 0 ? whole : whole + 1;
    for (Eigen::Index j = 0; j < dim; ++j) {
      ExtendedBasisState image = basis[static_cast<std::size_t>(j)];
      for (std::int64_t k = 0; k < steps; ++k) step.advance(image);
      result.matrix(row_of(serialize(image)), j) = 1.0;
    }
    return result;
  }

  const double sigma = to_double(frac / schedule.delta());
  double max_entry_error = 0.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    const auto cycle =
        orbit_cycle(step, basis[static_cast<std::size_t>(j)], options.cycle_cap);
    const auto length = static_cast<std::int64_t>(cycle.size());

    // Principal eigen-angles 2 pi q / L with q in (-L/2, L/2].
    const std::int64_t q_lo = -((length - 1) / 2);
    const std::int64_t q_hi = length / 2;
    std::vector<std::complex<double>> fractional;
    fractional.reserve(static_cast<std::size_t>(length));
    for (std::int64_t q = q_lo; q <= q_hi; ++q) {
      const double theta = 2 * std::numbers::pi * static_cast<double>(q) /
                           static_cast<double>(length);
      fractional.push_back(std::polar(1.0, theta * sigma));
    }

    for (std::int64_t k = 0; k < length; ++k) {
      // Entry <x_k| V^(whole + sigma) |x_0> = (1/L) sum_q lambda_q^sigma
      // exp(2 pi i q (whole - k) / L).
      const std::int64_t r = ((whole - k) % length + length) % length;
      std::complex<double> sum;
      for (std::int64_t q = q_lo; q <= q_hi; ++q) {
        const std::int64_t phase = ((q * r) % length + length) % length;
        const double angle = 2 * std::numbers::pi * static_cast<double>(phase) /
                             static_cast<double>(length);
        sum += fractional[static_cast<std::size_t>(q - q_lo)] * std::polar(1.0, angle);
      }
      const auto row = row_of(serialize(cycle[static_cast<std::size_t>(k)]));
      result.matrix(row, j) = sum / static_cast<double>(length);
    }
    max_entry_error =
        std::max(max_entry_error, (16.0 + 2.0 * static_cast<double>(length)) * kUnitRoundoff);
  }
  // Operator norm <= Frobenius norm <= dim * max entry error.
  result.error_bound = static_cast<double>(dim) * max_entry_error;
  if (result.error_bound > std::ldexp(1.0, -m)) {
    throw PrecisionExceeded("approximation bound " + std::to_string(result.error_bound) +
                            " exceeds 2^-" + std::to_string(m));
  }
  return result;
}

}  // namespace uhtp
