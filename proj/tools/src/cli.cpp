#include "uhtp/cli.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "uhtp/error.hpp"
#include "uhtp/json_io.hpp"
#include "uhtp/protocol.hpp"
#include "uhtp/reduction.hpp"

namespace uhtp {

namespace {

struct RunConfig {
  std::string command;
  std::string input_path;
  std::string epsilon = "1/4";
  std::string delta = "1/2";
  std::int64_t horizon = 10000;
  std::int64_t grid = 0;
  std::string clock = "unbounded";
  std::string target = "beacon";
  std::string output_path;
  std::string format = "json";  // trace defaults to csv
  std::string time;
  std::string budgets = "10,100,1000";
  std::uint64_t cap = 10000;
};

void add_instance_flags(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--epsilon", cfg.epsilon, "threshold slack p/q, 0 < eps < 1/2");
  sub.add_option("--delta", cfg.delta, "pulse width p/q, 0 < delta < 1");
  sub.add_option("--horizon", cfg.horizon, "number of pulses scanned");
  sub.add_option("--grid", cfg.grid, "samples per pulse (0 selects the default)");
  sub.add_option("--clock", cfg.clock, "unbounded | cyclic:L");
  sub.add_option("--target", cfg.target, "beacon | exact");
}

void add_output_flags(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--out", cfg.output_path, "write results to PATH");
  sub.add_option("--format", cfg.format, "json | csv");
}

void require_json(const RunConfig& cfg) {
  if (cfg.format != "json") {
    throw RangeError("command '" + cfg.command + "' only supports --format json");
  }
}

TargetMode parse_target(const RunConfig& cfg, const MachineSpec& machine,
                        const ClockMode& mode) {
  if (cfg.target == "beacon") return BeaconSubspace{};
  if (cfg.target != "exact") throw RangeError("unknown target '" + cfg.target + "'");
  // The exact target is the first beacon-on label, phi = V^(K+1) psi.
  const RunResult run = classical_run(machine, static_cast<std::uint64_t>(cfg.horizon));
  const auto* halted = std::get_if<Halted>(&run);
  if (!halted) {
    throw RangeError("--target exact needs a machine that halts within the horizon");
  }
  const BeaconStep step(machine, mode);
  ExtendedBasisState phi = step.initial();
  for (std::uint64_t i = 0; i <= halted->steps; ++i) step.advance(phi);
  return ExactLabel{std::move(phi)};
}

InstanceDescriptor build_instance(const RunConfig& cfg) {
  const MachineSpec machine = load_machine(cfg.input_path);
  const Rational epsilon = parse_rational(cfg.epsilon);
  const Rational delta = parse_rational(cfg.delta);
  const ClockMode mode = ClockMode::parse(cfg.clock);
  if (cfg.horizon < 1) throw RangeError("horizon must be positive");
  if (cfg.grid < 0) throw RangeError("grid must be at least 1");
  return encode(machine, epsilon, delta, mode, parse_target(cfg, machine, mode), cfg.horizon,
                cfg.grid);
}

std::vector<ProtocolBudget> parse_budgets(const std::string& text) {
  std::vector<ProtocolBudget> budgets;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    ProtocolBudget b;
    b.tau_max = parse_rational(item);
    // Work is bounded by time on this schedule; the time cap is the binding one.
    b.e_max = static_cast<std::uint64_t>(floor_to_int(b.tau_max)) + 1;
    b.validate();
    budgets.push_back(b);
  }
  if (budgets.empty()) throw RangeError("--budgets needs at least one value");
  return budgets;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.format != "json" && cfg.format != "csv") {
    throw RangeError("unknown format '" + cfg.format + "'");
  }
  if (cfg.command == "compile") {
    require_json(cfg);
    out << instance_json(build_instance(cfg)) << '\n';
    return kExitOk;
  }
  if (cfg.command == "evolve") {
    require_json(cfg);
    const InstanceDescriptor inst = build_instance(cfg);
    const Rational t = parse_rational(cfg.time);
    const BeaconStep step = inst.step();
    const SparseState psi = SparseState::basis(step.initial());
    out << state_json(evolve_to(step, inst.schedule, psi, t)) << '\n';
    return kExitOk;
  }
  if (cfg.command == "hit") {
    require_json(cfg);
    const HitReport report = uhit_semidecide(build_instance(cfg));
    out << hit_report_json(report) << '\n';
    return report.is_hit() ? kExitOk : kExitExhausted;
  }
  if (cfg.command == "trace") {
    const auto trace = fidelity_trace(build_instance(cfg));
    if (cfg.format == "csv") {
      out << trace_csv(trace);
    } else {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& [t, f] : trace) rows.push_back({{"t", format_rational(t)}, {"fidelity", f}});
      out << rows.dump() << '\n';
    }
    return kExitOk;
  }
  if (cfg.command == "verify") {
    require_json(cfg);
    if (cfg.target != "beacon") throw RangeError("verify only supports --target beacon");
    ReductionParams params;
    params.epsilon = parse_rational(cfg.epsilon);
    params.delta = parse_rational(cfg.delta);
    params.mode = ClockMode::parse(cfg.clock);
    params.horizon = cfg.horizon;
    params.grid = cfg.grid;
    const auto corpus = load_corpus(cfg.input_path);
    bool all_agree = true;
    for (const auto& report : verify_corpus(corpus, params)) {
      out << reduction_report_json(report) << '\n';
      if (!report.agrees()) {
        all_agree = false;
        err << "disagree: " << report.entry << ": "
            << std::get<Disagree>(report.verdict).detail << '\n';
      }
    }
    return all_agree ? kExitOk : kExitError;
  }
  if (cfg.command == "sweep") {
    require_json(cfg);
    const auto budgets = parse_budgets(cfg.budgets);
    SweepOptions options;
    options.epsilon = parse_rational(cfg.epsilon);
    options.delta = parse_rational(cfg.delta);
    options.family_cap = cfg.cap;
    options.horizon = cfg.horizon;
    for (const auto& w : adversarial_sweep(budgets, options)) {
      out << sweep_witness_json(w) << '\n';
    }
    return kExitOk;
  }
  throw RangeError("unknown command '" + cfg.command + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Halting-problem reduction to unitary hitting times"};
  app.require_subcommand(1);

  auto* compile = app.add_subcommand("compile", "emit the hitting-time instance for a machine");
  auto* evolve = app.add_subcommand("evolve", "evolve the initial label to time --time");
  auto* hit = app.add_subcommand("hit", "semi-decide the hitting time");
  auto* trace = app.add_subcommand("trace", "fidelity at every grid point");
  auto* verify = app.add_subcommand("verify", "run the reduction over a corpus manifest");
  auto* sweep = app.add_subcommand("sweep", "adversarial sweep over protocol budgets");

  for (auto* sub : {compile, evolve, hit, trace}) {
    sub->add_option("machine", cfg.input_path, "machine file")->required();
    add_instance_flags(*sub, cfg);
    add_output_flags(*sub, cfg);
  }
  evolve->add_option("--time", cfg.time, "evolution time p/q")->required();
  verify->add_option("manifest", cfg.input_path, "corpus manifest")->required();
  add_instance_flags(*verify, cfg);
  add_output_flags(*verify, cfg);
  sweep->add_option("--epsilon", cfg.epsilon, "threshold slack p/q");
  sweep->add_option("--delta", cfg.delta, "pulse width p/q");
  sweep->add_option("--horizon", cfg.horizon, "instance horizon");
  sweep->add_option("--budgets", cfg.budgets, "comma-separated tau_max values");
  sweep->add_option("--cap", cfg.cap, "largest family index searched");
  add_output_flags(*sweep, cfg);
  cfg.horizon = 10000;

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("uhtp");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (cfg.command == "sweep" && !sweep->count("--horizon")) cfg.horizon = 1000000;
  if (cfg.command == "trace" && !trace->count("--format")) cfg.format = "csv";

  try {
    if (cfg.output_path.empty()) return execute(cfg, out, err);
    std::ostringstream buffer;
    const int code = execute(cfg, buffer, err);
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) throw Error("cannot write " + cfg.output_path);
    file << buffer.str();
    return code;
  } catch (const ParseError& e) {
    err << cfg.input_path << ":" << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace uhtp
