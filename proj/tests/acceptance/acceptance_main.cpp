// Acceptance gate. One line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "uhtp/dynamics.hpp"
#include "uhtp/hitting.hpp"
#include "uhtp/protocol.hpp"
#include "uhtp/reduction.hpp"

using namespace uhtp;

namespace {

const Rational kEps{1, 4};
const Rational kDelta{1, 2};
constexpr std::int64_t kHorizon = 10000;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (ok) detail << "first failure: " << why;
    ok = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::optional<std::uint64_t> halting_k(const CorpusEntry& e) {
  if (const auto* h = std::get_if<Halts>(&e.truth)) return h->steps;
  return std::nullopt;
}

// 1. Hit iff Halts over the shipped corpus, in under 60 s.
Check reduction_biconditional(const std::vector<CorpusEntry>& corpus) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  const auto reports = verify_corpus(corpus);
  const double elapsed = seconds_since(start);
  int halting = 0;
  int looping = 0;
  int agree = 0;
  for (const auto& r : reports) {
    if (const auto k = halting_k(corpus[static_cast<std::size_t>(&r - reports.data())])) {
      ++halting;
      if (*k > 200) c.fail("halting entry with K > 200");
    } else {
      ++looping;
    }
    if (r.agrees()) {
      ++agree;
    } else {
      c.fail(r.entry + ": " + std::get<Disagree>(r.verdict).detail);
    }
  }
  if (halting < 10) c.fail("fewer than 10 halting entries");
  if (looping < 5) c.fail("fewer than 5 looping entries");
  if (elapsed >= 60) c.fail("took " + std::to_string(elapsed) + " s");
  c.detail << (c.ok ? "" : "; ") << agree << "/" << reports.size() << " agree (" << halting
           << " halting, " << looping << " looping), eps 1/4, delta 1/2, horizon 10^4, "
           << elapsed << " s";
  return c;
}

// 2. Step-by-step replay against a reference interpreter up to 10^4 steps,
// with U(n) = V^n exact at every n.
Check integer_exactness(const std::vector<CorpusEntry>& corpus) {
  Check c;
  std::uint64_t steps_checked = 0;
  for (const auto& entry : corpus) {
    const oracle::Classical ref(to_text(entry.machine));
    const auto trace = ref.trace(kHorizon);
    const auto k = halting_k(entry);
    const BeaconStep step(entry.machine, ClockMode::unbounded());
    const PulseSchedule sched(kDelta, ClockMode::unbounded());
    const SparseState psi0 = SparseState::basis(step.initial());
    SparseState psi = psi0;
    for (std::int64_t n = 0; n <= kHorizon; ++n) {
      if (n > 0) psi = evolve_integer(step, psi, 1);
      if (psi.size() != 1) {
        c.fail(entry.name + ": support spread at n = " + std::to_string(n));
        break;
      }
      const auto& e = psi.support().begin()->second;
      const auto& snap = trace[std::min<std::size_t>(static_cast<std::size_t>(n), trace.size() - 1)];
      const bool beacon = k && n >= static_cast<std::int64_t>(*k) + 1 &&
                          (n - static_cast<std::int64_t>(*k)) % 2 == 1;
      if (!(e.amplitude == Amplitude::exact(1)) || e.label.clock != n ||
          !(oracle::snapshot_of(entry.machine, e.label.work.tape, e.label.work.head,
                                e.label.work.state) == snap) ||
          e.label.beacon != beacon || psi.time_tag() != n) {
        c.fail(entry.name + ": mismatch at n = " + std::to_string(n));
        break;
      }
      ++steps_checked;
      if (n == 1 || n == 10 || n == 100 || n == 1000 || n == kHorizon) {
        const SparseState direct = evolve_integer(step, psi0, static_cast<std::uint64_t>(n));
        const SparseState via_t = evolve_to(step, sched, psi0, Rational(n));
        if (direct.support().begin()->first != psi.support().begin()->first ||
            via_t.support().begin()->first != psi.support().begin()->first ||
            direct.exact_norm_squared() != Rational(1)) {
          c.fail(entry.name + ": U(n) != V^n at n = " + std::to_string(n));
        }
      }
    }
  }
  c.detail << (c.ok ? "" : "; ") << steps_checked << " labels compared exactly across "
           << corpus.size() << " machines, n <= 10^4";
  return c;
}

// 3. First integer hit at K + 1; sub-grid hit in [K, K + delta + delta / G].
Check hit_window(const std::vector<CorpusEntry>& corpus) {
  Check c;
  int entries = 0;
  for (const auto& entry : corpus) {
    const auto k = halting_k(entry);
    if (!k) continue;
    ++entries;
    const Rational kr{BigInt(*k)};
    const auto inst = encode(entry.machine, kEps, kDelta, ClockMode::unbounded(),
                             BeaconSubspace{}, kHorizon);
    std::optional<Rational> first_integer;
    for (const auto& [t, f] : fidelity_trace(encode(entry.machine, kEps, kDelta,
                                                     ClockMode::unbounded(), BeaconSubspace{},
                                                     static_cast<std::int64_t>(*k) + 3))) {
      if (is_integer(t) && meets_threshold(f, inst.threshold())) {
        first_integer = t;
        break;
      }
    }
    if (first_integer != kr + 1) c.fail(entry.name + ": first integer hit is not K + 1");

    for (const std::int64_t g : {4, 6, 16}) {
      const auto sub = encode(entry.machine, kEps, kDelta, ClockMode::cyclic(4096),
                              BeaconSubspace{}, kHorizon, g);
      const HitReport r = uhit_semidecide(sub);
      if (!r.is_hit()) {
        c.fail(entry.name + ": no sub-grid hit with G = " + std::to_string(g));
        continue;
      }
      const Rational t = r.hit().t_hit;
      if (t < kr || t > kr + kDelta + kDelta / Rational(g)) {
        c.fail(entry.name + ": sub-grid hit at " + format_rational(t) + " with G = " +
               std::to_string(g));
      }
    }
  }
  c.detail << (c.ok ? "" : "; ") << entries
           << " halting entries; integer grid on the unbounded clock, G in {4, 6, 16} on cyclic:4096";
  return c;
}

// 4. Mid-pulse evolve_to against approx_unitary on cycles of length <= 64.
Check oracle_agreement(const std::vector<CorpusEntry>& corpus) {
  Check c;
  std::mt19937_64 rng(20240607);
  double worst_amp = 0.0;
  double worst_norm = 0.0;
  int instances = 0;
  for (const std::int64_t l : {8, 16, 32, 64}) {
    for (const auto& entry : corpus) {
      const auto k = halting_k(entry);
      if (!k || static_cast<std::int64_t>(*k) + 2 >= l) continue;
      ++instances;
      const BeaconStep step(entry.machine, ClockMode::cyclic(l));
      const PulseSchedule sched(kDelta, ClockMode::cyclic(l));
      const auto basis = enumerate_reachable(step, step.initial(), static_cast<std::uint64_t>(l));
      const SparseState psi = SparseState::basis(step.initial());
      for (int trial = 0; trial < 20; ++trial) {
        const auto whole = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * l));
        const auto num = static_cast<std::int64_t>(1 + rng() % 499);  // frac in (0, delta)
        const Rational t = Rational(whole) + Rational(num, 1000);
        const SparseState out = evolve_to(step, sched, psi, t);
        const auto u = approx_unitary(step, sched, basis, t, 30);
        worst_norm = std::max(worst_norm, std::abs(out.norm_squared() - 1));
        for (std::size_t i = 0; i < basis.size(); ++i) {
          const auto amp = out.amplitude_of(basis[i]);
          const std::complex<double> got = amp ? amp->value() : 0.0;
          worst_amp = std::max(worst_amp, std::abs(got - u.matrix(static_cast<Eigen::Index>(i), 0)));
        }
      }
    }
  }
  if (worst_amp > 1e-9) c.fail("amplitude deviation " + std::to_string(worst_amp));
  if (worst_norm > 1e-12) c.fail("norm drift " + std::to_string(worst_norm));
  if (instances == 0) c.fail("no instances");
  c.detail << (c.ok ? "" : "; ") << instances << " instances x 20 times, max |amp diff| "
           << worst_amp << " (tol 1e-9), max norm drift " << worst_norm << " (tol 1e-12)";
  return c;
}

// 5. Two-cycle profile sin^2(pi s / (2 delta)) against the dense eigensolver.
Check two_cycle_profile(const std::vector<CorpusEntry>& corpus) {
  Check c;
  const MachineSpec* m = nullptr;
  for (const auto& e : corpus) {
    if (halting_k(e) == 0u) m = &e.machine;
  }
  if (!m) {
    c.fail("no K = 0 machine in the corpus");
    return c;
  }
  const BeaconStep step(*m, ClockMode::cyclic(2));
  const PulseSchedule sched(kDelta, ClockMode::cyclic(2));
  const SparseState psi = SparseState::basis(step.initial());
  const SparseState next = SparseState::basis(step.forward(step.initial()));
  for (const Rational& s : {Rational(kDelta / 4), Rational(kDelta / 2), Rational(3 * kDelta / 4)}) {
    const double x = to_double(s / kDelta);
    const double f = fidelity(evolve_to(step, sched, psi, s), next);
    const double dense = std::norm(oracle::cyclic_power(2, x)(1, 0));
    const double profile = std::pow(std::sin(std::numbers::pi * x / 2), 2);
    if (std::abs(f - dense) > 1e-9 || std::abs(f - profile) > 1e-9) {
      c.fail("s = " + format_rational(s));
    }
    c.detail << (c.ok ? "" : "; ") << "s=" << format_rational(s) << ": " << f << " ";
    if (s == kDelta / 2 && std::abs(f - 0.5) > 1e-9) c.fail("value at delta/2 is not 1/2");
  }
  c.detail << "(tol 1e-9)";
  return c;
}

// 6. Each fixed budget misclassifies a late halter; budgets are never exceeded.
Check no_go_sweep(const std::vector<CorpusEntry>& corpus) {
  Check c;
  std::vector<ProtocolBudget> budgets;
  for (const std::int64_t tau : {10, 100, 1000}) {
    ProtocolBudget b;
    b.tau_max = tau;
    b.e_max = static_cast<std::uint64_t>(tau) + 1;
    budgets.push_back(b);
  }
  const auto start = std::chrono::steady_clock::now();
  const auto witnesses = adversarial_sweep(budgets);
  for (const auto& w : witnesses) {
    if (!(Rational(BigInt(w.K)) > w.budget.tau_max)) c.fail(w.name + ": K <= tau_max");
    if (w.outcome.reports_reachable() || w.outcome.correct != false) {
      c.fail(w.name + ": not a false unreachable report");
    }
    if (w.outcome.resources.time_used > w.budget.tau_max ||
        w.outcome.resources.work_used > w.budget.e_max) {
      c.fail(w.name + ": budget exceeded");
    }
    const auto k = oracle::Classical(to_text(counter_family(w.n))).halting_step(10000000);
    if (k != w.K) c.fail(w.name + ": K disagrees with the reference interpreter");
    c.detail << "tau_max " << format_rational(w.budget.tau_max) << " -> " << w.name
             << " (K=" << w.K << "); ";
  }
  // Forced-error direction: certified loopers are never misclassified.
  for (const auto& entry : corpus) {
    if (halting_k(entry)) continue;
    for (const auto& b : budgets) {
      ProtocolOutcome o = run_bounded_protocol(
          encode(entry.machine, kEps, kDelta, ClockMode::unbounded(), BeaconSubspace{}, kHorizon),
          b);
      grade(o, entry.truth);
      if (!*o.correct) c.fail(entry.name + ": looper misclassified");
      if (o.resources.time_used > b.tau_max || o.resources.work_used > b.e_max) {
        c.fail(entry.name + ": budget exceeded");
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (witnesses.size() != budgets.size()) c.fail("missing witnesses");
  if (elapsed >= 120) c.fail("took " + std::to_string(elapsed) + " s");
  c.detail << elapsed << " s";
  return c;
}

// 7. Verdicts under gamma = 1/8 noise match the noiseless run over 10 seeds.
Check robustness(const std::vector<CorpusEntry>& corpus) {
  Check c;
  int runs = 0;
  for (const ClockMode& mode : {ClockMode::unbounded(), ClockMode::cyclic(16384)}) {
    for (const auto& entry : corpus) {
      const auto inst = encode(entry.machine, kEps, kDelta, mode, BeaconSubspace{}, kHorizon);
      const bool clean = uhit_semidecide(inst).is_hit();
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ++runs;
        if (classify_with_noise(inst, NoiseModel{Rational(1, 8), seed}).is_hit() != clean) {
          c.fail(entry.name + " on " + mode.to_string() + ", seed " + std::to_string(seed));
        }
      }
    }
  }
  c.detail << (c.ok ? "" : "; ") << runs
           << " noisy runs (gamma 1/8, threshold 1 - eps - gamma, seeds 0..9, unbounded and cyclic:16384)";
  return c;
}

// 8. Certified loopers never show any beacon weight.
Check looper_ceiling(const std::vector<CorpusEntry>& corpus) {
  Check c;
  int loopers = 0;
  for (const ClockMode& mode : {ClockMode::unbounded(), ClockMode::cyclic(16384)}) {
    for (const auto& entry : corpus) {
      if (halting_k(entry)) continue;
      ++loopers;
      const HitReport r =
          uhit_semidecide(encode(entry.machine, kEps, kDelta, mode, BeaconSubspace{}, kHorizon));
      if (r.is_hit() || r.exhausted().max_fidelity_seen != 0.0 ||
          r.exhausted().horizon != kHorizon) {
        c.fail(entry.name + " on " + mode.to_string());
      }
    }
  }
  c.detail << (c.ok ? "" : "; ") << loopers
           << " looper scans over horizon 10^4 (unbounded and cyclic:16384), max fidelity exactly 0";
  return c;
}

}  // namespace

int main() {
  const auto corpus = oracle::corpus();
  const std::vector<std::pair<std::string, std::function<Check(const std::vector<CorpusEntry>&)>>>
      criteria = {
          {"reduction biconditional", reduction_biconditional},
          {"integer-time exactness", integer_exactness},
          {"hit-window placement", hit_window},
          {"mid-pulse oracle agreement", oracle_agreement},
          {"two-cycle profile", two_cycle_profile},
          {"operational no-go witness", no_go_sweep},
          {"robustness", robustness},
          {"non-halting ceiling", looper_ceiling},
      };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second(corpus);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    all = all && c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << " ("
              << criteria[i].first << "): " << c.detail.str() << std::endl;
  }
  return all ? 0 : 1;
}
