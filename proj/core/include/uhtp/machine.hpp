#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace uhtp {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;
using RuleId = std::uint32_t;

enum class Move : std::int8_t { Left = -1, Stay = 0, Right = 1 };

char move_letter(Move move);

struct Rule {
  StateId state;
  SymbolId read;
  StateId next;
  SymbolId write;
  Move move;

  friend bool operator==(const Rule&, const Rule&) = default;
};

// A rule as written in a description, before names are resolved.
struct RuleText {
  std::string state;
  std::string read;
  std::string next;
  std::string write;
  Move move;
};

// Deterministic single-tape machine together with its input word.
//
// Symbol 0 is the blank. Rules keep their declaration order; a rule's
// index is its RuleId and is what the reversible history records.
class MachineSpec {
 public:
  // Validates and resolves names. Throws SemanticError on duplicate
  // (state, symbol) pairs, undeclared names, rules out of the halt state,
  // or blanks in the input word.
  static MachineSpec create(std::vector<std::string> states,
                            std::vector<std::string> alphabet,
                            const std::string& start, const std::string& halt,
                            const std::vector<RuleText>& rules,
                            const std::vector<std::string>& input);

  const std::vector<std::string>& state_names() const { return states_; }
  const std::vector<std::string>& symbol_names() const { return alphabet_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<SymbolId>& input() const { return input_; }

  StateId start() const { return start_; }
  StateId halt() const { return halt_; }
  static constexpr SymbolId blank() { return 0; }

  std::size_t state_count() const { return states_.size(); }
  std::size_t symbol_count() const { return alphabet_.size(); }

  std::optional<RuleId> find_rule(StateId state, SymbolId symbol) const;
  std::optional<StateId> state_id(std::string_view name) const;
  std::optional<SymbolId> symbol_id(std::string_view name) const;

  const std::string& state_name(StateId id) const { return states_.at(id); }
  const std::string& symbol_name(SymbolId id) const { return alphabet_.at(id); }

  friend bool operator==(const MachineSpec& a, const MachineSpec& b);

 private:
  MachineSpec() = default;

  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  StateId start_ = 0;
  StateId halt_ = 0;
  std::vector<Rule> rules_;
  std::vector<SymbolId> input_;
  std::map<std::pair<StateId, SymbolId>, RuleId> lookup_;
};

// Sparse two-way infinite tape. Blank cells are never stored.
using Tape = std::map<std::int64_t, SymbolId>;

SymbolId read_cell(const Tape& tape, std::int64_t cell);
void write_cell(Tape& tape, std::int64_t cell, SymbolId symbol);

struct Configuration {
  Tape tape;
  std::int64_t head = 0;
  StateId state = 0;
  std::uint64_t step_count = 0;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

// Tape, head and state agree; step counts are ignored.
bool same_machine_state(const Configuration& a, const Configuration& b);

Configuration initial_configuration(const MachineSpec& spec);

// Applies `rule` to (tape, head, state) in place.
void apply_rule(const Rule& rule, Tape& tape, std::int64_t& head,
                StateId& state);

struct HaltedMarker {
  Configuration at;
};

using StepResult = std::variant<Configuration, HaltedMarker>;

// Throws IllFormedMachine when a non-halt configuration has no rule.
StepResult classical_step(const MachineSpec& spec, const Configuration& c);

struct Halted {
  std::uint64_t steps;  // K
  Configuration final;
};

struct StillRunning {
  Configuration at;
};

using RunResult = std::variant<Halted, StillRunning>;

RunResult classical_run(const MachineSpec& spec, std::uint64_t max_steps);

// Text format:
//   states: q0 q1 qH
//   alphabet: _ 0 1        (first symbol is the blank)
//   start: q0
//   halt: qH
//   input: 101
//   rule: q0 0 -> q1 1 R
MachineSpec parse_machine(std::string_view text);
std::string to_text(const MachineSpec& spec);
MachineSpec load_machine(const std::filesystem::path& path);

}  // namespace uhtp
