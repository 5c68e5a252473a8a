#include "uhtp/sparse_state.hpp"

#include <algorithm>
#include <cmath>

#include "uhtp/error.hpp"

namespace uhtp {

namespace {

void check_normalized(const SparseState& s) {
  if (const auto exact = s.exact_norm_squared()) {
    if (*exact != 1) {
      throw RangeError("exact state is not normalized (norm^2 = " +
                       format_rational(*exact) + ")");
    }
    return;
  }
  double slack = 0.0;
  for (const auto& [key, e] : s.support()) {
    slack += 2 * std::abs(e.amplitude.value()) * e.amplitude.error_bound() +
             e.amplitude.error_bound() * e.amplitude.error_bound();
  }
  const double drift = std::abs(s.norm_squared() - 1.0);
  if (drift > kNormTolerance + slack) {
    throw RangeError("state is not normalized (|norm^2 - 1| = " +
                     std::to_string(drift) + ")");
  }
}

}  // namespace

void SparseStateBuilder::add(const std::string& key,
                             const ExtendedBasisState& label,
                             const Amplitude& amplitude) {
  const auto it = support_.find(key);
  if (it == support_.end()) {
    support_.emplace(key, SparseState::Entry{label, amplitude});
  } else {
    it->second.amplitude = it->second.amplitude + amplitude;
  }
}

void SparseStateBuilder::add(const ExtendedBasisState& label,
                             const Amplitude& amplitude) {
  add(serialize(label), label, amplitude);
}

SparseState SparseStateBuilder::build(Rational time_tag, bool mid_pulse) && {
  SparseState s;
  for (auto it = support_.begin(); it != support_.end();) {
    it = it->second.amplitude.is_zero() ? support_.erase(it) : std::next(it);
  }
  s.support_ = std::move(support_);
  s.time_tag_ = std::move(time_tag);
  s.mid_pulse_ = mid_pulse;
  return s;
}

SparseState::SparseState(std::vector<std::pair<ExtendedBasisState, Amplitude>> terms,
                         Rational time_tag, bool mid_pulse) {
  if (time_tag < 0) throw RangeError("time tag must be nonnegative");
  SparseStateBuilder b;
  for (auto& [label, amp] : terms) b.add(label, amp);
  *this = std::move(b).build(std::move(time_tag), mid_pulse);
  check_normalized(*this);
}

SparseState SparseState::basis(ExtendedBasisState label, Rational time_tag) {
  std::vector<std::pair<ExtendedBasisState, Amplitude>> terms;
  terms.emplace_back(std::move(label), Amplitude::exact(1));
  return SparseState(std::move(terms), std::move(time_tag));
}

bool SparseState::is_exact() const {
  return std::all_of(support_.begin(), support_.end(),
                     [](const auto& kv) { return kv.second.amplitude.is_exact(); });
}

double SparseState::norm_squared() const {
  if (const auto exact = exact_norm_squared()) return to_double(*exact);
  double sum = 0.0;
  for (const auto& [key, e] : support_) sum += std::norm(e.amplitude.value());
  return sum;
}

std::optional<Rational> SparseState::exact_norm_squared() const {
  if (!is_exact()) return std::nullopt;
  Rational sum = 0;
  for (const auto& [key, e] : support_) sum += e.amplitude.exact_value()->norm();
  return sum;
}

double SparseState::max_error_bound() const {
  double m = 0.0;
  for (const auto& [key, e] : support_) m = std::max(m, e.amplitude.error_bound());
  return m;
}

std::optional<Amplitude> SparseState::amplitude_of(const ExtendedBasisState& label) const {
  const auto it = support_.find(serialize(label));
  if (it == support_.end()) return std::nullopt;
  return it->second.amplitude;
}

}  // namespace uhtp
