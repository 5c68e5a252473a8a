#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "uhtp/hitting.hpp"
#include "uhtp/machine.hpp"

namespace uhtp {

struct Halts {
  std::uint64_t steps;  // K
};

// Non-halting witnessed by a configuration revisit: the configurations after
// `first` and `second` steps coincide (state, tape and head).
struct LoopsForever {
  std::uint64_t first;
  std::uint64_t second;
  std::string certificate;
};

using GroundTruth = std::variant<Halts, LoopsForever>;

struct CorpusEntry {
  std::string name;
  MachineSpec machine;
  GroundTruth truth;
};

// Replays the declared ground truth classically. Throws CorpusError.
void check_ground_truth(const CorpusEntry& entry);

struct Agree {};
struct Disagree {
  std::string detail;
};
using Verdict = std::variant<Agree, Disagree>;

struct ReductionReport {
  std::string entry;
  GroundTruth expected;
  HitReport observed;
  Verdict verdict;

  bool agrees() const { return std::holds_alternative<Agree>(verdict); }
};

struct ReductionParams {
  Rational epsilon{1, 4};
  Rational delta{1, 2};
  ClockMode mode = ClockMode::unbounded();
  TargetMode target = BeaconSubspace{};
  std::int64_t horizon = 10000;
  // 0 selects the default grid for the clock mode.
  std::int64_t grid = 0;
};

// Default G: the sub-pulse formula on a cyclic clock; 1 (the exactly
// evaluable points n and n + delta) on the unbounded clock.
std::int64_t default_grid(const Rational& epsilon, const ClockMode& mode);

// Assembles the hitting-time instance for (M, x). Pure and deterministic.
InstanceDescriptor encode(const MachineSpec& machine, const Rational& epsilon,
                          const Rational& delta, const ClockMode& mode,
                          const TargetMode& target, std::int64_t horizon,
                          std::int64_t grid = 0);

// Judges one semi-decision against its ground truth.
Verdict judge(const GroundTruth& truth, const HitReport& observed,
              const InstanceDescriptor& inst);

// One report per entry. Ground-truth failures throw CorpusError before any
// reduction runs. Only the beacon target is meaningful for a whole corpus;
// ExactLabel throws RangeError.
std::vector<ReductionReport> verify_corpus(std::span<const CorpusEntry> corpus,
                                           const ReductionParams& params = {});

// Bouncing eraser over the input 1^n. K(n) is strictly increasing.
MachineSpec counter_family(std::uint64_t n);

// Manifest: JSON list of {name, machine_file, ground_truth: {kind: "halts",
// K} | {kind: "loops", revisit: [r, r'], certificate?}}. Machine paths are
// relative to the manifest.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& manifest);

}  // namespace uhtp
