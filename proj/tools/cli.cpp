#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mpfj/compiler.hpp"
#include "mpfj/des.hpp"
#include "mpfj/presets.hpp"
#include "mpfj/recursion.hpp"
#include "mpfj/spec_io.hpp"

namespace mpfj::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string spec_path;
  std::string preset;
  long long horizon = 10;
  std::string tau;
  std::string backend = "auto";
  std::string method = "explicit";
  std::string buffers;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::size_t step = 1;
  bool symbolic = false;
  bool reduced = false;
  bool verify = false;
  std::string fault;  // "<k>:<node>", test hook for verify
};

void add_network_options(CLI::App& cmd, Config& cfg) {
  cmd.add_option("--spec", cfg.spec_path, "Network spec file (JSON)");
  cmd.add_option("--preset", cfg.preset, "Named network, e.g. open-tandem:3");
  cmd.add_option("--r", cfg.buffers, "Initial buffers for closed-tandem:<n>, e.g. 1,0,2");
  cmd.add_option("--tau", cfg.tau,
                 "Service times for every node: const:<c> | explicit:<v,..>[:wrap] | "
                 "uniform:<lo>:<hi> | exp:<rate>");
  cmd.add_option("--seed", cfg.seed, "Base seed for stochastic service times");
  cmd.add_option("--backend", cfg.backend, "Arithmetic: int, float or auto")
      ->check(CLI::IsMember({"int", "float", "auto"}));
}

void add_run_options(CLI::App& cmd, Config& cfg) {
  cmd.add_option("-K", cfg.horizon, "Number of customers per node (horizon)");
  cmd.add_option("--out", cfg.out_dir, "Directory for trace.csv and trace.json");
}

std::vector<std::uint32_t> parse_buffers(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || value > UINT32_MAX)
      throw UsageError("--r expects comma-separated nonnegative integers, got '" + text + "'");
    out.push_back(static_cast<std::uint32_t>(value));
  }
  return out;
}

NetworkSpec load_network(const Config& cfg) {
  if (cfg.spec_path.empty() == cfg.preset.empty())
    throw UsageError("give exactly one of --spec or --preset");
  std::optional<ServiceTimeSource> tau;
  if (!cfg.tau.empty()) {
    try {
      tau = parse_service_shorthand(cfg.tau);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--tau: ") + e.what());
    }
  }
  const std::uint64_t seed = cfg.seed.value_or(0);
  if (!cfg.preset.empty()) {
    PresetOptions options;
    if (!cfg.buffers.empty()) options.buffers = parse_buffers(cfg.buffers);
    if (tau) options.service = *tau;
    options.seed = seed;
    try {
      return make_preset(cfg.preset, options);
    } catch (const PresetError& e) {
      throw UsageError(e.what());
    }
  }
  NetworkSpec spec = load_spec(cfg.spec_path);
  if (tau) spec = with_uniform_service(std::move(spec), *tau, seed);
  return spec;
}

StepMethod parse_method(const std::string& name) {
  if (name == "explicit") return StepMethod::explicit_form;
  if (name == "implicit") return StepMethod::implicit_form;
  if (name == "extended") return StepMethod::extended_form;
  throw UsageError("--method must be explicit, implicit or extended");
}

bool use_integer_backend(const Config& cfg, const Network& net, std::size_t horizon) {
  if (cfg.backend == "int") return true;
  if (cfg.backend == "float") return false;
  const auto table = realize_service<double>(net, horizon);
  for (std::size_t k = 1; k <= horizon; ++k)
    for (double x : table.row(k))
      if (std::trunc(x) != x) return false;
  return true;
}

std::string arc_list(const std::vector<Arc>& arcs) {
  std::string out;
  for (const Arc& a : arcs)
    out += (out.empty() ? "" : " ") + std::to_string(a.from + 1) + "→" + std::to_string(a.to + 1);
  return out;
}

void print_header(std::ostream& out, const CompiledTransition& ct) {
  const RoutingMatrices& routing = ct.routing();
  out << "network: " << ct.network().name() << "\n";
  out << "n = " << ct.size() << ", M = " << routing.memory_depth()
      << ", p = " << routing.longest_path() << "\n";
  for (std::size_t m = 0; m <= routing.memory_depth(); ++m) {
    out << "G" << m << " arcs: ";
    if (routing.arcs(m).empty()) {
      out << "none (null matrix" << (m == 1 && routing.promoted() ? "; M promoted from 0" : "")
          << ")\n";
    } else {
      out << arc_list(routing.arcs(m)) << "\n";
    }
  }
}

template <class T>
void print_numeric_transition(std::ostream& out, const CompiledTransition& ct, std::size_t k) {
  const auto table = realize_service<T>(ct.network(), k);
  const auto blocks = ct.transition_at<T>(table.row(k));
  for (std::size_t m = 0; m < blocks.size(); ++m) {
    out << "T" << m + 1 << "(" << k << "):\n" << format_matrix(blocks[m], "  ");
  }
}

int cmd_compile(const Config& cfg, std::ostream& out) {
  const CompiledTransition ct = compile(load_network(cfg));
  print_header(out, ct);
  if (cfg.symbolic) {
    const auto blocks = ct.symbolic(cfg.reduced ? SymbolicForm::reduced : SymbolicForm::literal);
    for (std::size_t m = 0; m < blocks.size(); ++m)
      out << "T" << m + 1 << "(k)" << (cfg.reduced ? " [reduced]" : "") << ":\n"
          << format_matrix(blocks[m], "  ");
    return kExitOk;
  }
  if (cfg.step == 0) throw UsageError("--step is one-based");
  if (use_integer_backend(cfg, ct.network(), cfg.step)) {
    print_numeric_transition<std::int64_t>(out, ct, cfg.step);
  } else {
    print_numeric_transition<double>(out, ct, cfg.step);
  }
  return kExitOk;
}

std::pair<std::size_t, std::size_t> parse_fault(const std::string& text, std::size_t n,
                                                std::size_t horizon) {
  const auto colon = text.find(':');
  std::size_t k = 0, node = 0;
  try {
    k = std::stoul(text.substr(0, colon));
    node = std::stoul(text.substr(colon + 1));
  } catch (const std::exception&) {
    k = 0;
  }
  if (colon == std::string::npos || k == 0 || k > horizon || node == 0 || node > n)
    throw UsageError("--inject-fault expects <k>:<node> within the run");
  return {k, node - 1};
}

std::string describe_diff(const TraceDiff& diff) {
  std::ostringstream os;
  os << "mismatch: max |delta| = " << diff.max_abs << ", first differing cell k=" << *diff.first_k
     << ", node=" << *diff.first_node + 1;
  return os.str();
}

template <class T>
bool report_comparison(std::ostream& out, const std::string& what, const TraceDiff& diff,
                       std::size_t horizon, const std::string& size_label, std::size_t size) {
  out << what << ": ";
  if (!diff.within_tolerance) {
    out << describe_diff(diff) << "\n";
    return false;
  }
  if constexpr (std::is_integral_v<T>) {
    out << "exact match";
  } else {
    out << (diff.max_abs == 0.0 ? "exact match" : "match within 1e-9");
    if (diff.max_abs != 0.0) out << " (max |delta| = " << diff.max_abs << ")";
  }
  out << ", K=" << horizon << ", " << size_label << "=" << size << "\n";
  return true;
}

template <class T>
bool verify_trace(const Config& cfg, const CompiledTransition& ct,
                  const ServiceTimeTable<T>& table, const DepartureTrace<T>& trace,
                  std::size_t horizon, std::ostream& out) {
  const double tolerance = std::is_integral_v<T> ? 0.0 : 1e-9;
  ServiceTimeTable<T> oracle_table = table;
  if (!cfg.fault.empty()) {
    const auto [k, node] = parse_fault(cfg.fault, ct.size(), horizon);
    oracle_table.set(node, k, table.at(node, k) + T{1});
  }
  const auto simulated = simulate(ct.network(), oracle_table, horizon);
  bool ok = report_comparison<T>(out, "recursion vs fork-join simulation",
                                 compare_traces(trace, simulated, tolerance), horizon, "n",
                                 ct.size());

  if (const auto& origin = ct.network().spec().round_robin) {
    const auto original = simulate_round_routing<T>(*origin, horizon);
    std::vector<std::size_t> branches(origin->branches);
    for (std::size_t j = 0; j < branches.size(); ++j) branches[j] = j;
    ok = report_comparison<T>(out, "fork-join branches vs round-routing simulation",
                              compare_traces(trace, original, tolerance, branches, branches),
                              horizon, "branches", origin->branches) &&
         ok;
  }
  return ok;
}

template <class T>
int run_backend(const Config& cfg, const CompiledTransition& ct, std::size_t horizon,
                bool verify_only, std::ostream& out) {
  const auto table = realize_service<T>(ct.network(), std::max<std::size_t>(horizon, 1));
  auto trace = run<T>(ct, table, horizon, parse_method(cfg.method));
  trace.meta.seed = cfg.seed;

  if (!verify_only) {
    out << "network: " << ct.network().name() << " (n=" << ct.size()
        << ", M=" << ct.memory_depth() << ", p=" << ct.routing().longest_path()
        << "), backend " << backend_name<T>() << ", method " << trace.meta.method << "\n";
    out << "d(" << horizon << ") = " << format_state(trace.at(horizon)) << "\n";
    if (!cfg.out_dir.empty()) {
      const std::filesystem::path dir(cfg.out_dir);
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      std::ofstream csv(dir / "trace.csv", std::ios::binary);
      std::ofstream meta(dir / "trace.json", std::ios::binary);
      if (!csv || !meta) throw UsageError("cannot write to " + dir.string());
      write_trace_csv(csv, trace);
      write_trace_metadata(meta, trace.meta, trace.nodes, horizon);
      out << "wrote " << (dir / "trace.csv").string() << " and " << (dir / "trace.json").string()
          << "\n";
    }
  }
  if (verify_only || cfg.verify) {
    if (!verify_trace(cfg, ct, table, trace, horizon, out))
      throw MismatchError("traces disagree");
  }
  return kExitOk;
}

int cmd_run(const Config& cfg, bool verify_only, std::ostream& out) {
  if (cfg.horizon < 0) throw UsageError("-K must be nonnegative");
  const auto horizon = static_cast<std::size_t>(cfg.horizon);
  const CompiledTransition ct = compile(load_network(cfg));
  if (use_integer_backend(cfg, ct.network(), std::max<std::size_t>(horizon, 1)))
    return run_backend<std::int64_t>(cfg, ct, horizon, verify_only, out);
  return run_backend<double>(cfg, ct, horizon, verify_only, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Max-plus state equations for fork-join queueing networks"};
  app.require_subcommand(1);
  Config cfg;

  auto* compile_cmd =
      app.add_subcommand("compile", "Print routing and state transition matrices");
  add_network_options(*compile_cmd, cfg);
  compile_cmd->add_flag("--symbolic", cfg.symbolic, "Render entries in symbols t1..tn");
  compile_cmd->add_flag("--reduced", cfg.reduced,
                        "With --symbolic, drop entries dominated along zero-buffer paths");
  compile_cmd->add_option("--step", cfg.step, "Customer index k for numeric matrices");

  auto* run_cmd = app.add_subcommand("run", "Iterate the state equation and export the trace");
  add_network_options(*run_cmd, cfg);
  add_run_options(*run_cmd, cfg);
  run_cmd->add_flag("--verify", cfg.verify, "Also compare against the event simulation");
  run_cmd->add_option("--method", cfg.method, "Step form: explicit, implicit or extended");
  run_cmd->add_option("--inject-fault", cfg.fault)->group("");

  auto* verify_cmd =
      app.add_subcommand("verify", "Compare the recursion with the event simulation");
  add_network_options(*verify_cmd, cfg);
  verify_cmd->add_option("-K", cfg.horizon, "Number of customers per node (horizon)");
  verify_cmd->add_option("--method", cfg.method, "Step form: explicit, implicit or extended");
  verify_cmd->add_option("--inject-fault", cfg.fault)->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compile_cmd->parsed()) return cmd_compile(cfg, out);
    if (run_cmd->parsed()) return cmd_run(cfg, false, out);
    return cmd_run(cfg, true, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "invalid network:\n";
    for (const auto& v : e.violations()) err << "  " << v << "\n";
    return kExitInvalid;
  } catch (const CycleError& e) {
    err << "compilation failed: zero-buffer graph is cyclic\n";
    err << "G0 cycle: " << format_cycle(e.witness()) << "\n";
    return kExitInvalid;
  } catch (const SpecFormatError& e) {
    err << "spec error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ServiceError& e) {
    err << "service error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const MismatchError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitMismatch;
  }
}

}  // namespace mpfj::cli
