#include "uhtp/reversible.hpp"

#include <charconv>

#include "uhtp/error.hpp"

namespace uhtp {

ClockMode ClockMode::cyclic(std::int64_t length) {
  if (length < 2) {
    throw RangeError("cyclic clock needs L >= 2, got " + std::to_string(length));
  }
  return ClockMode(length);
}

ClockMode ClockMode::parse(std::string_view text) {
  if (text == "unbounded") return unbounded();
  constexpr std::string_view prefix = "cyclic:";
  if (text.substr(0, prefix.size()) == prefix) {
    const auto digits = text.substr(prefix.size());
    std::int64_t length = 0;
    const auto [end, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), length);
    if (ec == std::errc() && end == digits.data() + digits.size()) {
      return cyclic(length);
    }
  }
  throw RangeError("clock must be 'unbounded' or 'cyclic:L', got '" +
                   std::string(text) + "'");
}

std::string ClockMode::to_string() const {
  return is_cyclic() ? "cyclic:" + std::to_string(length_) : "unbounded";
}

BeaconStep::BeaconStep(MachineSpec spec, ClockMode mode)
    : spec_(std::move(spec)), mode_(mode) {}

ExtendedBasisState BeaconStep::initial() const {
  const Configuration c = initial_configuration(spec_);
  ExtendedBasisState label;
  label.work.tape = c.tape;
  label.work.head = c.head;
  label.work.state = c.state;
  return label;
}

ExtendedBasisState initial_state(const MachineSpec& spec, const ClockMode& mode) {
  return BeaconStep(spec, mode).initial();
}

void BeaconStep::advance(ExtendedBasisState& s) const {
  if (mode_.is_cyclic() && s.clock == mode_.length() - 1) {
    // Wrap: the clock returns to 0 and the work register is uncomputed back
    // to its empty-history configuration, closing every orbit into an
    // L-cycle.
    uncompute(s.work);
    s.clock = 0;
    s.halted = false;
    s.beacon = false;
    return;
  }
  if (s.clock < 0) {
    s.clock += 1;  // idle pre-history
    return;
  }
  if (s.halted) {
    s.beacon = !s.beacon;
    s.clock += 1;
    return;
  }
  if (s.work.state == spec_.halt()) {
    // Started in the halt state (K = 0): raise and toggle in one step.
    s.halted = true;
    s.beacon = !s.beacon;
    s.clock += 1;
    return;
  }
  const SymbolId symbol = read_cell(s.work.tape, s.work.head);
  const auto rule = spec_.find_rule(s.work.state, symbol);
  if (!rule) {
    throw IllFormedMachine("no rule for (" + spec_.state_name(s.work.state) +
                           "," + spec_.symbol_name(symbol) + ")");
  }
  apply_rule(spec_.rules()[*rule], s.work.tape, s.work.head, s.work.state);
  s.work.history.push_back(*rule);
  s.clock += 1;
  s.halted = s.work.state == spec_.halt();
}

ExtendedBasisState BeaconStep::forward(const ExtendedBasisState& label) const {
  ExtendedBasisState next = label;
  advance(next);
  return next;
}

bool BeaconStep::undo_last(WorkRegister& work) const {
  if (work.history.empty()) return false;
  const RuleId id = work.history.back();
  if (id >= spec_.rules().size()) return false;
  const Rule& rule = spec_.rules()[id];
  if (work.state != rule.next) return false;
  const std::int64_t prev_head = work.head - static_cast<std::int64_t>(rule.move);
  if (read_cell(work.tape, prev_head) != rule.write) return false;
  write_cell(work.tape, prev_head, rule.read);
  work.head = prev_head;
  work.state = rule.state;
  work.history.pop_back();
  return true;
}

void BeaconStep::uncompute(WorkRegister& work) const {
  while (!work.history.empty()) {
    if (!undo_last(work)) {
      throw IllFormedMachine("history does not replay against the machine rules");
    }
  }
}

bool BeaconStep::well_formed(const ExtendedBasisState& s) const {
  const auto& w = s.work;
  if (w.state >= spec_.state_count()) return false;
  for (const auto& [cell, sym] : w.tape) {
    if (sym == MachineSpec::blank() || sym >= spec_.symbol_count()) return false;
  }
  if (s.beacon && !s.halted) return false;
  if (s.halted && w.state != spec_.halt()) return false;

  const auto n = static_cast<std::int64_t>(w.history.size());
  if (mode_.is_cyclic() && (s.clock < 0 || s.clock >= mode_.length())) return false;

  if (s.clock < 0) {
    if (s.halted || n != 0) return false;
  } else if (!s.halted) {
    if (n != s.clock) return false;
    // A rule landing in the halt state raises the flag on that step.
    if (w.state == spec_.halt() && n != 0) return false;
  } else {
    const std::int64_t idle = s.clock - n;  // post-halt steps taken
    if (n >= 1 ? idle < 0 : idle < 1) return false;
    if (s.beacon != (idle % 2 == 1)) return false;
  }

  WorkRegister replay = w;
  while (!replay.history.empty()) {
    if (!undo_last(replay)) return false;
    if (replay.state == spec_.halt()) return false;
  }
  return true;
}

std::optional<ExtendedBasisState> BeaconStep::backward(
    const ExtendedBasisState& s) const {
  if (!well_formed(s)) return std::nullopt;
  ExtendedBasisState prev = s;
  const auto n = static_cast<std::int64_t>(s.work.history.size());

  if (mode_.is_cyclic() && s.clock == 0) {
    // Predecessor is the end of this configuration's L-cycle.
    ExtendedBasisState cursor = s;
    for (std::int64_t k = 0; k + 1 < mode_.length(); ++k) advance(cursor);
    return cursor;
  }
  if (s.clock <= 0) {
    prev.clock -= 1;
    return prev;
  }
  if (!s.halted) {
    if (!undo_last(prev.work)) return std::nullopt;
    prev.clock -= 1;
    return prev;
  }
  const std::int64_t idle = s.clock - n;
  if (n >= 1 && idle == 0) {
    // Predecessor ran the rule that entered the halt state.
    if (!undo_last(prev.work)) return std::nullopt;
    prev.clock -= 1;
    prev.halted = false;
    prev.beacon = false;
    return prev;
  }
  if (n == 0 && idle == 1) {
    prev.clock = 0;
    prev.halted = false;
    prev.beacon = false;
    return prev;
  }
  prev.clock -= 1;
  prev.beacon = !prev.beacon;
  return prev;
}

namespace {

bool structurally_valid(const MachineSpec& spec, const ExtendedBasisState& s) {
  if (s.work.state >= spec.state_count()) return false;
  for (const auto& [cell, sym] : s.work.tape) {
    if (sym == MachineSpec::blank() || sym >= spec.symbol_count()) return false;
  }
  for (const RuleId r : s.work.history) {
    if (r >= spec.rules().size()) return false;
  }
  if (s.beacon && !s.halted) return false;
  if (s.halted && s.work.state != spec.halt()) return false;
  return true;
}

}  // namespace

LabelPredicate target_predicate(const MachineSpec& spec, const TargetMode& mode) {
  if (std::holds_alternative<BeaconSubspace>(mode)) {
    return [](const ExtendedBasisState& s) { return s.beacon; };
  }
  const auto& phi = std::get<ExactLabel>(mode).phi;
  if (!structurally_valid(spec, phi)) {
    throw RangeError("exact target label is malformed for this machine");
  }
  return [key = serialize(phi)](const ExtendedBasisState& s) {
    return serialize(s) == key;
  };
}

}  // namespace uhtp
