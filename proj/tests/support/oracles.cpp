#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace oracle {

namespace {

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

Classical::Classical(const std::string& machine_text) {
  std::istringstream in(machine_text);
  std::vector<std::string> alphabet;
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    const std::string key = words(line.substr(0, colon)).at(0);
    const auto rest = words(line.substr(colon + 1));
    if (key == "alphabet") alphabet = rest;
    if (key == "start") start_ = rest.at(0);
    if (key == "halt") halt_ = rest.at(0);
    if (key == "input") {
      for (const auto& w : rest) {
        if (std::find(alphabet.begin(), alphabet.end(), w) != alphabet.end()) {
          input_.push_back(w);
        } else {
          for (char c : w) input_.emplace_back(1, c);
        }
      }
    }
    if (key == "rule") {
      const int move = rest.at(5) == "L" ? -1 : rest.at(5) == "R" ? 1 : 0;
      rules_[{rest.at(0), rest.at(1)}] = Action{rest.at(3), rest.at(4), move};
    }
  }
  blank_ = alphabet.at(0);
}

std::vector<Snapshot> Classical::trace(std::uint64_t max_steps) const {
  Snapshot s{start_, 0, {}};
  for (std::size_t i = 0; i < input_.size(); ++i) {
    if (input_[i] != blank_) s.tape[static_cast<long long>(i)] = input_[i];
  }
  std::vector<Snapshot> out{s};
  for (std::uint64_t step = 0; step < max_steps && s.state != halt_; ++step) {
    const auto cell = s.tape.find(s.head);
    const std::string read = cell == s.tape.end() ? blank_ : cell->second;
    const Action& a = rules_.at({s.state, read});
    if (a.write == blank_) {
      s.tape.erase(s.head);
    } else {
      s.tape[s.head] = a.write;
    }
    s.state = a.next;
    s.head += a.move;
    out.push_back(s);
  }
  return out;
}

std::optional<std::uint64_t> Classical::halting_step(std::uint64_t max_steps) const {
  const auto t = trace(max_steps);
  if (t.back().state != halt_) return std::nullopt;
  return t.size() - 1;
}

Snapshot snapshot_of(const uhtp::MachineSpec& spec, const uhtp::Tape& tape,
                     std::int64_t head, uhtp::StateId state) {
  Snapshot s{spec.state_name(state), head, {}};
  for (const auto& [cell, sym] : tape) s.tape[cell] = spec.symbol_name(sym);
  return s;
}

Eigen::MatrixXcd cyclic_power(int length, double sigma) {
  Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(length, length);
  for (int j = 0; j < length; ++j) shift((j + 1) % length, j) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(shift);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const Eigen::VectorXcd lambda = solver.eigenvalues();
  Eigen::VectorXcd powered(length);
  for (int i = 0; i < length; ++i) {
    double theta = std::arg(lambda(i));
    if (theta <= -std::numbers::pi + 1e-9) theta = std::numbers::pi;  // principal branch
    powered(i) = std::polar(1.0, sigma * theta);
  }
  const Eigen::MatrixXcd& vecs = solver.eigenvectors();
  return vecs * powered.asDiagonal() * vecs.inverse();
}

std::vector<uhtp::CorpusEntry> corpus() {
  return uhtp::load_corpus(kCorpusDir + "/manifest.json");
}

}  // namespace oracle
