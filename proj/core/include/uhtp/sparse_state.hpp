#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uhtp/amplitude.hpp"
#include "uhtp/rational.hpp"
#include "uhtp/reversible.hpp"

namespace uhtp {

inline constexpr double kNormTolerance = 1e-12;

// Finitely supported state over basis labels, keyed by canonical
// serialization. Represents U(t)|psi> for t = time_tag.
class SparseState {
 public:
  struct Entry {
    ExtendedBasisState label;
    Amplitude amplitude;
  };
  using Support = std::map<std::string, Entry>;

  // Repeated labels are summed and zero amplitudes dropped. Throws
  // RangeError unless the squared norm is 1 (exactly, for exact states;
  // within kNormTolerance plus the tracked error otherwise).
  // `mid_pulse` marks states strictly inside a pulse window.
  SparseState(std::vector<std::pair<ExtendedBasisState, Amplitude>> terms,
              Rational time_tag = 0, bool mid_pulse = false);

  static SparseState basis(ExtendedBasisState label, Rational time_tag = 0);

  const Support& support() const { return support_; }
  std::size_t size() const { return support_.size(); }
  const Rational& time_tag() const { return time_tag_; }
  bool mid_pulse() const { return mid_pulse_; }

  bool is_exact() const;
  double norm_squared() const;
  std::optional<Rational> exact_norm_squared() const;
  // Largest per-amplitude error bound.
  double max_error_bound() const;

  std::optional<Amplitude> amplitude_of(const ExtendedBasisState& label) const;

 private:
  SparseState() = default;
  friend class SparseStateBuilder;

  Support support_;
  Rational time_tag_;
  bool mid_pulse_ = false;
};

// Accumulates terms without normalization checks; used by the evolution
// routines, which check the result once at the end.
class SparseStateBuilder {
 public:
  void add(const std::string& key, const ExtendedBasisState& label,
           const Amplitude& amplitude);
  void add(const ExtendedBasisState& label, const Amplitude& amplitude);
  SparseState build(Rational time_tag, bool mid_pulse) &&;

 private:
  SparseState::Support support_;
};

}  // namespace uhtp
