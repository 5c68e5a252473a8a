#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uhtp/machine.hpp"

namespace uhtp {

// Tape, head and control state of the simulated machine plus the Bennett
// history: the ids of every rule applied so far, oldest first.
struct WorkRegister {
  Tape tape;
  std::int64_t head = 0;
  StateId state = 0;
  std::vector<RuleId> history;

  friend bool operator==(const WorkRegister&, const WorkRegister&) = default;
};

// Basis label |w, tau, h, b>.
struct ExtendedBasisState {
  WorkRegister work;
  std::int64_t clock = 0;  // tau
  bool halted = false;     // h
  bool beacon = false;     // b

  friend bool operator==(const ExtendedBasisState&,
                         const ExtendedBasisState&) = default;
};

// Canonical byte layout (all integers big-endian):
//
//   0x01                                 format version
//   0x10 len:u32 state:u32               control state
//   0x11 len:u32 head:i64                head cell
//   0x12 len:u32 (cell:i64 symbol:u32)*  non-blank cells, ascending cell
//   0x13 len:u32 rule:u32*               history, oldest first
//   0x20 len:u32 clock:i64               tau
//   0x21 len:u32 h:u8
//   0x22 len:u32 b:u8
//
// Labels are equal iff their encodings are byte-equal; the byte order of
// encodings is the ordering used for SparseState keys.
std::string serialize(const ExtendedBasisState& label);
ExtendedBasisState deserialize(std::string_view bytes);

std::string to_hex(std::string_view bytes);
std::string from_hex(std::string_view hex);

// Clock register domain: the integers (with idle pre-history at tau < 0)
// or Z/L with an uncomputing wrap from tau = L - 1 back to tau = 0.
class ClockMode {
 public:
  static ClockMode unbounded() { return ClockMode(0); }
  // Throws RangeError when length < 2.
  static ClockMode cyclic(std::int64_t length);
  // "unbounded" or "cyclic:L".
  static ClockMode parse(std::string_view text);

  bool is_cyclic() const { return length_ != 0; }
  // Cycle length L; 0 for the unbounded clock.
  std::int64_t length() const { return length_; }
  std::string to_string() const;

  friend bool operator==(const ClockMode&, const ClockMode&) = default;

 private:
  explicit ClockMode(std::int64_t length) : length_(length) {}
  std::int64_t length_;
};

// The beacon-augmented one-step permutation.
//
// On the reachable part of the label space a step either runs one machine
// rule (recording it in the history), raises the halt flag, or (once the
// flag is up) leaves the work register alone and toggles the beacon. The
// clock advances by one on every step. The first toggle happens on the
// step leaving tau = K, so b = 1 first holds at tau = K + 1.
class BeaconStep {
 public:
  BeaconStep(MachineSpec spec, ClockMode mode);

  const MachineSpec& spec() const { return spec_; }
  const ClockMode& mode() const { return mode_; }

  ExtendedBasisState initial() const;

  // Throws IllFormedMachine if a non-halt state has no rule.
  ExtendedBasisState forward(const ExtendedBasisState& label) const;
  void advance(ExtendedBasisState& label) const;

  // nullopt for labels outside the image (including ill-formed labels).
  std::optional<ExtendedBasisState> backward(
      const ExtendedBasisState& label) const;

  // Structural checks, clock/history/beacon consistency, and a replay of
  // the history back to an empty-history configuration.
  bool well_formed(const ExtendedBasisState& label) const;

 private:
  // Undoes the last history entry; false when inconsistent.
  bool undo_last(WorkRegister& work) const;
  void uncompute(WorkRegister& work) const;

  MachineSpec spec_;
  ClockMode mode_;
};

ExtendedBasisState initial_state(const MachineSpec& spec, const ClockMode& mode);

struct BeaconSubspace {};
struct ExactLabel {
  ExtendedBasisState phi;
};
using TargetMode = std::variant<BeaconSubspace, ExactLabel>;

using LabelPredicate = std::function<bool(const ExtendedBasisState&)>;

// Throws RangeError when an ExactLabel target references states, symbols
// or rules the machine does not have.
LabelPredicate target_predicate(const MachineSpec& spec, const TargetMode& mode);

}  // namespace uhtp
