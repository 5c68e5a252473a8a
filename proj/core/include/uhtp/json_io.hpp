#pragma once

#include <string>
#include <utility>
#include <vector>

#include "uhtp/hitting.hpp"
#include "uhtp/protocol.hpp"
#include "uhtp/reduction.hpp"
#include "uhtp/sparse_state.hpp"

namespace uhtp {

// Rationals are written as "p/q" strings, fidelities as doubles, labels as
// hex of their canonical encoding. Every function returns one line without
// a trailing newline.

std::string instance_json(const InstanceDescriptor& inst);
std::string hit_report_json(const HitReport& report);
// {"t": ..., "mid_pulse": ..., "support": [[hex, re, im], ...]}
std::string state_json(const SparseState& state);
std::string reduction_report_json(const ReductionReport& report);
std::string sweep_witness_json(const SweepWitness& witness);
std::string protocol_outcome_json(const ProtocolOutcome& outcome);

// Header "t,fidelity" then one row per point; t as an exact decimal when it
// terminates, fidelity with 12 decimals. Ends with a newline.
std::string trace_csv(const std::vector<std::pair<Rational, double>>& trace);

}  // namespace uhtp
