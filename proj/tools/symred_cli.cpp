// symred: analyze three-qubit states, run reduced flows, sample the polytope.

#include "symred/errors.hpp"
#include "symred/report.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace symred;

namespace {

struct Options {
  std::string state_path;
  std::string catalog_name;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double dt = 1e-3;
  double duration = 1.0;
  std::string policy = "normal1";
  std::string lift = "adapted";
  int stride = 1;
  int halvings = 0;
  std::string out_dir = ".";
  int samples = 10000;
  std::string facets_path;
  std::string golden_path;
  bool bless = false;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + path.string() + "'");
  f << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::pair<StateVector, StateSource> load_state(const Options& o) {
  if (!o.state_path.empty() && !o.catalog_name.empty()) {
    throw InvalidInput("give either --state or --catalog, not both");
  }
  if (!o.state_path.empty()) return {state_from_file(o.state_path), {"file", o.state_path, std::nullopt}};
  if (o.catalog_name.empty()) throw InvalidInput("an input state is required (--state or --catalog)");
  const CatalogName name = parse_catalog_name(o.catalog_name);
  std::optional<std::uint64_t> seed;
  if (name == CatalogName::HaarRandom) seed = o.seed;
  return {catalog(name, o.seed), {"catalog", to_string(name), seed}};
}

Polytope load_polytope(const Options& o) {
  return o.facets_path.empty() ? Polytope::three_qubit_default() : Polytope::from_file(o.facets_path);
}

fs::path out_dir(const Options& o) {
  fs::path d(o.out_dir);
  fs::create_directories(d);
  return d;
}

int run_analyze(const Options& o) {
  auto [psi, src] = load_state(o);
  const ReportOutput r = analyze_report(psi, src, load_polytope(o));
  const fs::path path = out_dir(o) / "analyze.json";
  write_file(path, r.text);
  std::cout << "wrote " << path.string() << "\n";
  return r.exit_code;
}

FlowPolicy make_policy(const Options& o) {
  FlowPolicy p;
  if (o.policy == "fixed") {
    p.kind = PolicyKind::Fixed;
    p.fixed_generator = default_fixed_generator();
  } else if (o.policy == "normal1" || o.policy == "normal2") {
    p.kind = PolicyKind::NormalDirection;
    p.normal_index = o.policy == "normal1" ? 1 : 2;
  } else {
    throw InvalidInput("unknown policy '" + o.policy + "'");
  }
  if (o.lift == "adapted") {
    p.lift_rule = LiftRule::LevelSetAdapted;
  } else if (o.lift == "minimal") {
    p.lift_rule = LiftRule::MinimalNorm;
  } else {
    throw InvalidInput("unknown lift rule '" + o.lift + "'");
  }
  p.dt = o.dt;
  p.duration = o.duration;
  p.record_stride = o.stride;
  p.validate();
  return p;
}

int run_flow(const Options& o) {
  auto [psi, src] = load_state(o);
  const FlowPolicy policy = make_policy(o);
  if (o.halvings < 0) throw InvalidInput("--halvings must be >= 0");
  const FlowOutput r = flow_report(psi, src, policy, o.halvings);
  const fs::path dir = out_dir(o);
  write_file(dir / "trajectory.csv", r.csv);
  write_file(dir / "summary.json", r.summary);
  std::cout << "wrote " << (dir / "trajectory.csv").string() << " and " << (dir / "summary.json").string() << "\n";
  if (r.exit_code != kExitOk) return r.exit_code;

  if (!o.golden_path.empty()) {
    if (o.bless) {
      write_file(o.golden_path, r.summary);
      std::cout << "blessed " << o.golden_path << "\n";
      return kExitOk;
    }
    if (auto m = compare_summaries(read_file(o.golden_path), r.summary)) {
      std::cerr << "summary differs from " << o.golden_path << ": " << *m << "\n";
      return 3;
    }
    std::cout << "summary matches " << o.golden_path << "\n";
  } else if (o.bless) {
    throw InvalidInput("--bless needs --golden <path>");
  }
  return kExitOk;
}

int run_sample(const Options& o) {
  const SampleOutput r = sample_report(o.seed, o.samples, load_polytope(o));
  const fs::path dir = out_dir(o);
  write_file(dir / "samples.csv", r.csv);
  write_file(dir / "samples_summary.json", r.summary);
  std::cout << "wrote " << (dir / "samples.csv").string() << "; " << r.outside << " facet violations\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced-space analysis of three-qubit pure states"};
  app.require_subcommand(1);
  Options o;

  auto add_state = [&](CLI::App* c) {
    c->add_option("--state", o.state_path, "JSON state file {\"amplitudes\": [[re, im], ...]}");
    c->add_option("--catalog", o.catalog_name, "SEP, BISEP1..3, GHZ, W or HAAR_RANDOM");
    c->add_option("--seed", o.seed, "seed for HAAR_RANDOM and sampling");
  };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", o.out_dir, "output directory");
    c->add_option("--facets", o.facets_path, "polytope facet file (JSON)");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "report on a single state");
  add_state(analyze);
  add_common(analyze);

  CLI::App* flow = app.add_subcommand("flow", "run a piecewise reduced flow");
  add_state(flow);
  add_common(flow);
  flow->add_option("--dt", o.dt, "step size")->check(CLI::PositiveNumber);
  flow->add_option("--duration", o.duration, "total time")->check(CLI::PositiveNumber);
  flow->add_option("--policy", o.policy, "fixed, normal1 or normal2");
  flow->add_option("--lift", o.lift, "generator lift for normal policies: adapted or minimal");
  flow->add_option("--stride", o.stride, "record every n-th step")->check(CLI::PositiveNumber);
  flow->add_option("--halvings", o.halvings, "convergence study: also run at dt/2, ..., dt/2^n");
  flow->add_option("--golden", o.golden_path, "reference summary to compare against");
  flow->add_flag("--bless", o.bless, "overwrite the reference summary instead of comparing");

  CLI::App* sample = app.add_subcommand("sample", "classify Haar samples against the polytope");
  sample->add_option("--seed", o.seed, "first seed");
  sample->add_option("--samples", o.samples, "number of samples")->check(CLI::PositiveNumber);
  add_common(sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (analyze->parsed()) return run_analyze(o);
    if (flow->parsed()) return run_flow(o);
    return run_sample(o);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ReductionError& e) {
    std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
