#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "uhtp/rational.hpp"
#include "uhtp/reversible.hpp"
#include "uhtp/sparse_state.hpp"

namespace uhtp {

// Pulse n acts on [n, n + delta] with H = (i / delta) log V; H = 0 on the
// idle remainder [n + delta, n + 1].
class PulseSchedule {
 public:
  // Throws RangeError unless 0 < delta < 1.
  PulseSchedule(Rational delta, ClockMode mode);

  const Rational& delta() const { return delta_; }
  const ClockMode& clock_mode() const { return mode_; }

 private:
  Rational delta_;
  ClockMode mode_;
};

struct DynamicsOptions {
  // Longest orbit the mid-pulse logarithm will enumerate.
  std::size_t cycle_cap = std::size_t{1} << 16;
  // Mid-pulse amplitudes must carry error bounds at most 2^-precision_bits.
  int precision_bits = 40;
};

// Advances every support label n times. Amplitudes are untouched, so exact
// states stay exact. Throws TimeTagError on a mid-pulse state.
SparseState evolve_integer(const BeaconStep& step, const SparseState& psi,
                           std::uint64_t n);

// U(t) applied to psi. Full pulses are exact permutations; a partial pulse
// of fraction sigma applies V^sigma (principal branch) on the L-cycle of
// each support label.
//
// psi must not be mid-pulse and t must not precede its time tag.
// Throws OrbitNotClosed for a partial pulse on the unbounded clock (every
// orbit there is an infinite chain) or a cycle longer than cycle_cap, and
// PrecisionExceeded when the tracked error passes 2^-precision_bits.
SparseState evolve_to(const BeaconStep& step, const PulseSchedule& schedule,
                      const SparseState& psi, const Rational& t,
                      const DynamicsOptions& options = {});

// |<alpha|beta>|^2, computed exactly when both states are exact.
double fidelity(const SparseState& alpha, const SparseState& beta);

// Squared weight on the labels satisfying `target`.
double subspace_fidelity(const SparseState& alpha, const LabelPredicate& target);

struct ApproxUnitary {
  Eigen::MatrixXcd matrix;  // column j is U(t)|basis[j]> in basis coordinates
  double error_bound;       // operator-norm bound on the approximation
};

// Dense U(t) restricted to span(basis), built from the discrete-Fourier
// eigenpairs of each cycle block. Throws BasisNotClosed if some image or
// cycle member is missing from the basis and PrecisionExceeded if the
// bound exceeds 2^-m.
ApproxUnitary approx_unitary(const BeaconStep& step, const PulseSchedule& schedule,
                             std::span<const ExtendedBasisState> basis,
                             const Rational& t, int m,
                             const DynamicsOptions& options = {});

// forward^k(seed) for 0 <= k <= horizon in first-reach order, stopping
// early once a cyclic orbit closes.
std::vector<ExtendedBasisState> enumerate_reachable(const BeaconStep& step,
                                                    const ExtendedBasisState& seed,
                                                    std::uint64_t horizon);

// The full cycle through seed, starting at seed. Throws OrbitNotClosed on
// the unbounded clock or when the cycle is longer than cap.
std::vector<ExtendedBasisState> orbit_cycle(const BeaconStep& step,
                                            const ExtendedBasisState& seed,
                                            std::size_t cap);

// Amplitude moved k places along a length-L cycle by the fractional power
// V^sigma (principal branch). Closed form of the Dirichlet kernel.
std::complex<double> cycle_amplitude(std::int64_t length, double sigma,
                                     std::int64_t k);
double cycle_probability(std::int64_t length, double sigma, std::int64_t k);

// Fidelity of U(t)|seed> with a target predicate, evaluated along the
// seed's orbit without materializing intermediate states. Agrees with
// subspace_fidelity(evolve_to(...)) and is what grid scans use.
//
// Times may be queried in any order; increasing order is cheapest on the
// unbounded clock.
class OrbitFidelity {
 public:
  OrbitFidelity(BeaconStep step, PulseSchedule schedule, ExtendedBasisState seed,
                LabelPredicate target, DynamicsOptions options = {});

  double at(const Rational& t);

 private:
  double at_index(std::int64_t index);
  void build_cycle();

  BeaconStep step_;
  PulseSchedule schedule_;
  ExtendedBasisState seed_;
  LabelPredicate target_;
  DynamicsOptions options_;

  // unbounded clock: forward-only cursor
  ExtendedBasisState cursor_;
  std::int64_t cursor_index_ = 0;

  // cyclic clock: predicate marks around the seed's cycle
  bool cycle_built_ = false;
  std::int64_t cycle_length_ = 0;
  std::vector<char> marks_;
  std::vector<std::int64_t> marked_positions_;
};

}  // namespace uhtp
