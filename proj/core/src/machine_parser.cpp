#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "uhtp/error.hpp"
#include "uhtp/machine.hpp"

namespace uhtp {

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
            message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<Token> split(std::string_view line, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t begin = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > begin) out.push_back({line.substr(begin, i - begin), offset + begin + 1});
  }
  return out;
}

struct Header {
  std::optional<std::vector<Token>> value;
  std::size_t line = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  MachineSpec run() {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      const auto nl = text_.find('\n', pos);
      const auto end = nl == std::string_view::npos ? text_.size() : nl;
      ++line_no;
      handle_line(text_.substr(pos, end - pos), line_no);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    last_line_ = line_no;
    return build();
  }

 private:
  void handle_line(std::string_view line, std::size_t line_no) {
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t i = 0;
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size()) return;

    const auto colon = line.find(':', i);
    if (colon == std::string_view::npos) {
      throw ParseError("expected 'key:'", line_no, i + 1);
    }
    const std::string_view key = line.substr(i, colon - i);
    const auto tokens = split(line.substr(colon + 1), colon + 1);

    if (key == "rule") {
      parse_rule(tokens, line_no, i + 1);
      return;
    }
    Header* header = nullptr;
    if (key == "states") header = &states_;
    else if (key == "alphabet") header = &alphabet_;
    else if (key == "start") header = &start_;
    else if (key == "halt") header = &halt_;
    else if (key == "input") header = &input_;
    else throw ParseError("unknown key '" + std::string(key) + "'", line_no, i + 1);

    if (header->value) {
      throw ParseError("duplicate '" + std::string(key) + ":' line (first on line " +
                           std::to_string(header->line) + ")",
                       line_no, i + 1);
    }
    const bool single = key == "start" || key == "halt";
    if (single && tokens.size() != 1) {
      const std::size_t col = tokens.empty() ? colon + 2 : tokens[1].column;
      throw ParseError("'" + std::string(key) + ":' takes exactly one name",
                       line_no, col);
    }
    if ((key == "states" || key == "alphabet") && tokens.empty()) {
      throw ParseError("'" + std::string(key) + ":' needs at least one name",
                       line_no, colon + 2);
    }
    header->value = tokens;
    header->line = line_no;
  }

  void parse_rule(const std::vector<Token>& tokens, std::size_t line_no,
                  std::size_t key_col) {
    if (tokens.size() != 6) {
      const std::size_t col =
          tokens.size() > 6 ? tokens[6].column
                            : (tokens.empty() ? key_col : tokens.back().column);
      throw ParseError("rule needs the form 'q s -> q2 s2 M'", line_no, col);
    }
    if (tokens[2].text != "->") {
      throw ParseError("expected '->'", line_no, tokens[2].column);
    }
    Move move;
    const auto m = tokens[5].text;
    if (m == "L") move = Move::Left;
    else if (m == "R") move = Move::Right;
    else if (m == "S") move = Move::Stay;
    else throw ParseError("move must be L, R or S", line_no, tokens[5].column);

    rules_.push_back({RuleText{std::string(tokens[0].text), std::string(tokens[1].text),
                               std::string(tokens[3].text), std::string(tokens[4].text),
                               move},
                      line_no, tokens});
  }

  static std::vector<std::string> names(const std::vector<Token>& tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.emplace_back(t.text);
    return out;
  }

  void require(const Header& h, const char* key) const {
    if (!h.value) {
      throw ParseError(std::string("missing '") + key + ":' line", last_line_, 1);
    }
  }

  MachineSpec build() {
    require(states_, "states");
    require(alphabet_, "alphabet");
    require(start_, "start");
    require(halt_, "halt");

    const auto state_names = names(*states_.value);
    const auto symbol_names = names(*alphabet_.value);
    const std::set<std::string_view> states(state_names.begin(), state_names.end());
    const std::set<std::string_view> symbols(symbol_names.begin(), symbol_names.end());
    const std::string halt(halt_.value->front().text);

    // Rule-level semantic checks carry line numbers; MachineSpec::create
    // re-validates everything else.
    std::map<std::pair<std::string, std::string>, std::size_t> seen;
    for (const auto& r : rules_) {
      const auto where = " (line " + std::to_string(r.line) + ")";
      const auto label = "(" + r.rule.state + "," + r.rule.read + ")";
      if (!states.count(r.rule.state)) {
        throw SemanticError("rule " + label + ": undeclared state '" + r.rule.state + "'" + where);
      }
      if (!symbols.count(r.rule.read)) {
        throw SemanticError("rule " + label + ": undeclared symbol '" + r.rule.read + "'" + where);
      }
      if (!states.count(r.rule.next)) {
        throw SemanticError("rule " + label + ": undeclared state '" + r.rule.next + "'" + where);
      }
      if (!symbols.count(r.rule.write)) {
        throw SemanticError("rule " + label + ": undeclared symbol '" + r.rule.write + "'" + where);
      }
      if (r.rule.state == halt) {
        throw SemanticError("rule " + label + " leaves the halt state" + where);
      }
      const auto [it, inserted] = seen.emplace(std::pair{r.rule.state, r.rule.read}, r.line);
      if (!inserted) {
        throw SemanticError("nondeterministic machine: duplicate rule for " + label +
                            " on lines " + std::to_string(it->second) + " and " +
                            std::to_string(r.line));
      }
    }

    std::vector<std::string> input;
    if (input_.value) {
      for (const auto& tok : *input_.value) {
        if (symbols.count(tok.text)) {
          input.emplace_back(tok.text);
          continue;
        }
        for (std::size_t k = 0; k < tok.text.size(); ++k) {
          const std::string one(1, tok.text[k]);
          if (!symbols.count(one)) {
            throw ParseError("input symbol '" + one + "' is undeclared", input_.line,
                             tok.column + k);
          }
          input.push_back(one);
        }
      }
    }

    std::vector<RuleText> rules;
    rules.reserve(rules_.size());
    for (const auto& r : rules_) rules.push_back(r.rule);
    return MachineSpec::create(state_names, symbol_names,
                               std::string(start_.value->front().text), halt, rules,
                               input);
  }

  struct PendingRule {
    RuleText rule;
    std::size_t line;
    std::vector<Token> tokens;
  };

  std::string_view text_;
  std::size_t last_line_ = 0;
  Header states_, alphabet_, start_, halt_, input_;
  std::vector<PendingRule> rules_;
};

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    out += ' ';
    out += n;
  }
  return out;
}

}  // namespace

MachineSpec parse_machine(std::string_view text) { return Parser(text).run(); }

std::string to_text(const MachineSpec& spec) {
  std::string out;
  out += "states:" + join(spec.state_names()) + "\n";
  out += "alphabet:" + join(spec.symbol_names()) + "\n";
  out += "start: " + spec.state_name(spec.start()) + "\n";
  out += "halt: " + spec.state_name(spec.halt()) + "\n";

  bool compact = true;
  for (const auto& s : spec.symbol_names()) compact = compact && s.size() == 1;
  if (!spec.input().empty()) {
    out += "input: ";
    for (std::size_t i = 0; i < spec.input().size(); ++i) {
      if (!compact && i > 0) out += ' ';
      out += spec.symbol_name(spec.input()[i]);
    }
    out += "\n";
  }
  for (const auto& r : spec.rules()) {
    out += "rule: " + spec.state_name(r.state) + " " + spec.symbol_name(r.read) +
           " -> " + spec.state_name(r.next) + " " + spec.symbol_name(r.write) + " " +
           move_letter(r.move) + "\n";
  }
  return out;
}

}  // namespace uhtp
