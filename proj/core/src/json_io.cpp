#include "uhtp/json_io.hpp"

#include <fmt/format.h>

#include "json.hpp"

namespace uhtp {

namespace {

using nlohmann::json;

json window_json(const std::pair<Rational, Rational>& w) {
  return json::array({format_rational(w.first), format_rational(w.second)});
}

json truth_json(const GroundTruth& truth) {
  if (const auto* h = std::get_if<Halts>(&truth)) {
    return {{"kind", "halts"}, {"K", h->steps}};
  }
  const auto& l = std::get<LoopsForever>(truth);
  return {{"kind", "loops"}, {"revisit", json::array({l.first, l.second})}};
}

json hit_report_object(const HitReport& report) {
  if (report.is_hit()) {
    const Hit& hit = report.hit();
    return {{"outcome", "hit"},
            {"t", format_rational(hit.t_hit)},
            {"fidelity", hit.fidelity},
            {"window", window_json(hit.window)}};
  }
  const Exhausted& ex = report.exhausted();
  return {{"outcome", "exhausted"},
          {"horizon", ex.horizon},
          {"max_fidelity", ex.max_fidelity_seen}};
}

json outcome_object(const ProtocolOutcome& outcome) {
  json out;
  if (const auto* r = std::get_if<ReachableAt>(&outcome.verdict)) {
    out["verdict"] = "reachable";
    out["t"] = format_rational(r->t);
  } else {
    out["verdict"] = "unreachable";
    out["budget_exhausted"] = std::get<ReportedUnreachable>(outcome.verdict).budget_exhausted;
  }
  out["resources"] = {{"time", format_rational(outcome.resources.time_used)},
                      {"work", outcome.resources.work_used}};
  if (outcome.correct) out["correct"] = *outcome.correct;
  return out;
}

}  // namespace

std::string instance_json(const InstanceDescriptor& inst) {
  json target;
  if (const auto* exact = std::get_if<ExactLabel>(&inst.target)) {
    target = {{"kind", "exact"}, {"phi", to_hex(serialize(exact->phi))}};
  } else {
    target = {{"kind", "beacon"}};
  }
  const json j = {
      {"machine", to_text(inst.machine)},
      {"epsilon", format_rational(inst.epsilon)},
      {"delta", format_rational(inst.schedule.delta())},
      {"clock", inst.schedule.clock_mode().to_string()},
      {"target", target},
      {"horizon", inst.horizon},
      {"grid", inst.grid},
      {"initial_state", to_hex(serialize(inst.step().initial()))},
  };
  return j.dump();
}

std::string hit_report_json(const HitReport& report) {
  return hit_report_object(report).dump();
}

std::string state_json(const SparseState& state) {
  json support = json::array();
  for (const auto& [key, entry] : state.support()) {
    const auto v = entry.amplitude.value();
    support.push_back(json::array({to_hex(key), v.real(), v.imag()}));
  }
  const json j = {{"t", format_rational(state.time_tag())},
                  {"mid_pulse", state.mid_pulse()},
                  {"support", support}};
  return j.dump();
}

std::string reduction_report_json(const ReductionReport& report) {
  json j = {{"entry", report.entry},
            {"expected", truth_json(report.expected)},
            {"observed", hit_report_object(report.observed)},
            {"verdict", report.agrees() ? "agree" : "disagree"}};
  if (const auto* d = std::get_if<Disagree>(&report.verdict)) j["detail"] = d->detail;
  return j.dump();
}

std::string sweep_witness_json(const SweepWitness& w) {
  json outcome = outcome_object(w.outcome);
  json resources = std::move(outcome["resources"]);
  outcome.erase("resources");
  const json j = {
      {"budget", {{"tau_max", format_rational(w.budget.tau_max)}, {"e_max", w.budget.e_max}}},
      {"witness", {{"name", w.name}, {"n", w.n}, {"K", w.K}}},
      {"outcome", outcome},
      {"resources", resources},
  };
  return j.dump();
}

std::string protocol_outcome_json(const ProtocolOutcome& outcome) {
  return outcome_object(outcome).dump();
}

std::string trace_csv(const std::vector<std::pair<Rational, double>>& trace) {
  std::string out = "t,fidelity\n";
  for (const auto& [t, f] : trace) {
    out += fmt::format("{},{:.12f}\n", format_rational_decimal(t), f);
  }
  return out;
}

}  // namespace uhtp
