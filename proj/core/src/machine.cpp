#include "uhtp/machine.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "uhtp/error.hpp"

namespace uhtp {

char move_letter(Move move) {
  switch (move) {
    case Move::Left:
      return 'L';
    case Move::Right:
      return 'R';
    case Move::Stay:
      return 'S';
  }
  return '?';
}

namespace {

template <typename Id>
std::optional<Id> index_of(const std::vector<std::string>& names,
                           std::string_view name) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<Id>(it - names.begin());
}

void require_unique(const std::vector<std::string>& names, const char* what) {
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) {
      throw SemanticError(std::string("duplicate ") + what + " '" + n + "'");
    }
  }
}

std::string rule_label(const RuleText& r) {
  return "(" + r.state + "," + r.read + ")";
}

}  // namespace

MachineSpec MachineSpec::create(std::vector<std::string> states,
                                std::vector<std::string> alphabet,
                                const std::string& start,
                                const std::string& halt,
                                const std::vector<RuleText>& rules,
                                const std::vector<std::string>& input) {
  if (states.empty()) throw SemanticError("no states declared");
  if (alphabet.empty()) throw SemanticError("no symbols declared");
  require_unique(states, "state");
  require_unique(alphabet, "symbol");

  MachineSpec spec;
  spec.states_ = std::move(states);
  spec.alphabet_ = std::move(alphabet);

  const auto start_id = index_of<StateId>(spec.states_, start);
  if (!start_id) throw SemanticError("start state '" + start + "' is undeclared");
  const auto halt_id = index_of<StateId>(spec.states_, halt);
  if (!halt_id) throw SemanticError("halt state '" + halt + "' is undeclared");
  spec.start_ = *start_id;
  spec.halt_ = *halt_id;

  for (const auto& r : rules) {
    const auto q = index_of<StateId>(spec.states_, r.state);
    const auto s = index_of<SymbolId>(spec.alphabet_, r.read);
    const auto q2 = index_of<StateId>(spec.states_, r.next);
    const auto s2 = index_of<SymbolId>(spec.alphabet_, r.write);
    if (!q) throw SemanticError("rule " + rule_label(r) + ": undeclared state '" + r.state + "'");
    if (!s) throw SemanticError("rule " + rule_label(r) + ": undeclared symbol '" + r.read + "'");
    if (!q2) throw SemanticError("rule " + rule_label(r) + ": undeclared state '" + r.next + "'");
    if (!s2) throw SemanticError("rule " + rule_label(r) + ": undeclared symbol '" + r.write + "'");
    if (*q == spec.halt_) {
      throw SemanticError("rule " + rule_label(r) + " leaves the halt state");
    }
    const auto id = static_cast<RuleId>(spec.rules_.size());
    if (!spec.lookup_.emplace(std::pair{*q, *s}, id).second) {
      throw SemanticError("nondeterministic machine: duplicate rule for " +
                          rule_label(r));
    }
    spec.rules_.push_back(Rule{*q, *s, *q2, *s2, r.move});
  }

  for (const auto& sym : input) {
    const auto id = index_of<SymbolId>(spec.alphabet_, sym);
    if (!id) throw SemanticError("input uses undeclared symbol '" + sym + "'");
    if (*id == blank()) throw SemanticError("input contains the blank symbol");
    spec.input_.push_back(*id);
  }
  return spec;
}

std::optional<RuleId> MachineSpec::find_rule(StateId state,
                                             SymbolId symbol) const {
  const auto it = lookup_.find({state, symbol});
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<StateId> MachineSpec::state_id(std::string_view name) const {
  return index_of<StateId>(states_, name);
}

std::optional<SymbolId> MachineSpec::symbol_id(std::string_view name) const {
  return index_of<SymbolId>(alphabet_, name);
}

bool operator==(const MachineSpec& a, const MachineSpec& b) {
  return a.states_ == b.states_ && a.alphabet_ == b.alphabet_ &&
         a.start_ == b.start_ && a.halt_ == b.halt_ && a.rules_ == b.rules_ &&
         a.input_ == b.input_;
}

SymbolId read_cell(const Tape& tape, std::int64_t cell) {
  const auto it = tape.find(cell);
  return it == tape.end() ? MachineSpec::blank() : it->second;
}

void write_cell(Tape& tape, std::int64_t cell, SymbolId symbol) {
  if (symbol == MachineSpec::blank()) {
    tape.erase(cell);
  } else {
    tape[cell] = symbol;
  }
}

bool same_machine_state(const Configuration& a, const Configuration& b) {
  return a.state == b.state && a.head == b.head && a.tape == b.tape;
}

Configuration initial_configuration(const MachineSpec& spec) {
  Configuration c;
  c.state = spec.start();
  std::int64_t cell = 0;
  for (const SymbolId s : spec.input()) write_cell(c.tape, cell++, s);
  return c;
}

void apply_rule(const Rule& rule, Tape& tape, std::int64_t& head,
                StateId& state) {
  write_cell(tape, head, rule.write);
  head += static_cast<std::int64_t>(rule.move);
  state = rule.next;
}

StepResult classical_step(const MachineSpec& spec, const Configuration& c) {
  if (c.state == spec.halt()) return HaltedMarker{c};
  const SymbolId symbol = read_cell(c.tape, c.head);
  const auto rule = spec.find_rule(c.state, symbol);
  if (!rule) {
    throw IllFormedMachine("no rule for (" + spec.state_name(c.state) + "," +
                           spec.symbol_name(symbol) + ")");
  }
  Configuration next = c;
  apply_rule(spec.rules()[*rule], next.tape, next.head, next.state);
  next.step_count += 1;
  return next;
}

RunResult classical_run(const MachineSpec& spec, std::uint64_t max_steps) {
  Configuration c = initial_configuration(spec);
  while (true) {
    if (c.state == spec.halt()) return Halted{c.step_count, std::move(c)};
    if (c.step_count >= max_steps) return StillRunning{std::move(c)};
    const SymbolId symbol = read_cell(c.tape, c.head);
    const auto rule = spec.find_rule(c.state, symbol);
    if (!rule) {
      throw IllFormedMachine("no rule for (" + spec.state_name(c.state) + "," +
                             spec.symbol_name(symbol) + ")");
    }
    apply_rule(spec.rules()[*rule], c.tape, c.head, c.state);
    c.step_count += 1;
  }
}

MachineSpec load_machine(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open machine file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_machine(buffer.str());
}

}  // namespace uhtp
