// Copyright 2026 The qdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qdisc/conditions.hpp"
#include "qdisc/ensemble.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/oracle.hpp"
#include "qdisc/serialize.hpp"
#include "qdisc/simulator.hpp"
#include "qdisc/solver.hpp"

namespace qdisc::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string ensemble_path;
  std::string povm_path;
  std::string csv_path;
  bool oracle_check = false;
  bool use_solver = false;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  double tolerance = kCertificationTol;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

void emit(std::ostream& out, const json& report) { out << report.dump(2) << '\n'; }

int verdict_code(const Certificate& c) {
  return c.verdict == Verdict::kOptimal ? kSuccess : kNotOptimal;
}

json oracle_section(const Ensemble& e, std::uint64_t seed, double reference) {
  const DualResult r = solve_dual(e, seed);
  const double diff = std::abs(r.p_error - reference);
  return {{"dual", to_json(r)},
          {"difference", diff},
          {"agrees", diff <= kOracleAgreementTol}};
}

// Best available optimal POVM: constructive when supported, dual otherwise.
struct Resolved {
  json solution;
  Povm povm;
};

Resolved resolve(const Ensemble& e, const Options& o, std::ostream& err) {
  try {
    OptimalSolution sol = solve(e);
    json j = to_json(sol);
    return {std::move(j), std::move(sol.canonical_povm)};
  } catch (const SolverExhausted& ex) {
    err << "warning: " << ex.what() << "; handing off to the dual oracle\n";
    const DualResult r = solve_dual(e, o.seed);
    Povm p = recover_povm_from_dual(r, e);
    json j = {{"case", "oracle-handoff"},
              {"p_error", r.p_error},
              {"lagrangian", to_json(r.c_star)},
              {"diagnostic", ex.what()}};
    return {std::move(j), std::move(p)};
  }
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const Ensemble e = load_ensemble(read_file(o.ensemble_path));
  Resolved res = resolve(e, o, err);
  const Certificate cert = check_global(res.povm, e, o.tolerance);
  json report = {{"command", "solve"},
                 {"ensemble", to_json(e)},
                 {"solution", res.solution},
                 {"povm", to_json(res.povm)},
                 {"certificate", to_json(cert)}};
  int code = verdict_code(cert);
  if (o.oracle_check) {
    report["oracle"] = oracle_section(e, o.seed, res.solution.at("p_error").get<double>());
    if (!report["oracle"]["agrees"].get<bool>() && code == kSuccess) {
      err << "error: solver and oracle disagree\n";
      code = kNumericFailure;
    }
  }
  emit(out, report);
  return code;
}

int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
  const Ensemble e = load_ensemble(read_file(o.ensemble_path));
  DualResult r;
  try {
    r = solve_dual(e, o.seed);
  } catch (const DualSolveFailure& ex) {
    emit(out, {{"command", "oracle"}, {"ensemble", to_json(e)}, {"best_iterate", to_json(ex.best_iterate())}});
    throw;
  }
  json report = {{"command", "oracle"}, {"ensemble", to_json(e)}, {"dual", to_json(r)}};
  int code = kSuccess;
  try {
    const Povm p = recover_povm_from_dual(r, e);
    const Certificate cert = check_global(p, e, o.tolerance);
    report["povm"] = to_json(p);
    report["certificate"] = to_json(cert);
    code = verdict_code(cert);
  } catch (const NumericFailure& ex) {
    err << "error: " << ex.what() << '\n';
    code = kNumericFailure;
  }
  emit(out, report);
  return code;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
  const Ensemble e = load_ensemble(read_file(o.ensemble_path));
  const Povm p = load_povm(read_file(o.povm_path));
  if (p.size() != e.size()) throw ValidationError("POVM and ensemble sizes differ");
  const Certificate cert = check_global(p, e, o.tolerance);
  emit(out, {{"command", "verify"}, {"certificate", to_json(cert)}});
  return verdict_code(cert);
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const Ensemble e = load_ensemble(read_file(o.ensemble_path));
  if (o.povm_path.empty() == !o.use_solver) {
    throw ValidationError("simulate needs exactly one of a POVM file or --use-solver");
  }
  const Povm p = o.use_solver ? resolve(e, o, err).povm : load_povm(read_file(o.povm_path));
  const unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  const SimulationReport r = simulate(e, p, o.trials, o.seed, threads);
  if (!o.csv_path.empty()) write_file(o.csv_path, confusion_csv(r));
  emit(out, {{"command", "simulate"}, {"povm", to_json(p)}, {"simulation", to_json(r)}});
  return kSuccess;
}

int cmd_family(const Options& o, std::ostream& out, std::ostream&) {
  const Ensemble e = load_ensemble(read_file(o.ensemble_path));
  const OptimalSolution sol = solve(e);
  const OptimalFamily fam = enumerate_optimal_family(sol, e);
  bool all_optimal = true;
  for (const auto& p : fam.vertex_povms) {
    all_optimal = all_optimal && check_global(p, e, o.tolerance).verdict == Verdict::kOptimal;
  }
  emit(out, {{"command", "family"},
             {"solution", to_json(sol)},
             {"family", to_json(fam)},
             {"vertices_optimal", all_optimal}});
  return all_optimal ? kSuccess : kNotOptimal;
}

int cmd_export_bloch(const Options& o, std::ostream& out, std::ostream& err) {
  const Ensemble e = load_ensemble(read_file(o.ensemble_path));
  const Povm p = o.povm_path.empty() ? resolve(e, o, err).povm : load_povm(read_file(o.povm_path));
  if (p.size() != e.size()) throw ValidationError("POVM and ensemble sizes differ");
  char line[160];
  out << "kind,index,x,y,z,weight\n";
  for (std::size_t k = 0; k < e.size(); ++k) {
    const Vec3 b = e.state(k).bloch_vector();
    std::snprintf(line, sizeof line, "state,%zu,%.17g,%.17g,%.17g,%.17g\n", k, b.x(), b.y(), b.z(),
                  e.prior(k));
    out << line;
  }
  for (std::size_t k = 0; k < p.size(); ++k) {
    const HermitianOp2& op = p.element(k).op();
    // Bloch vector of the trace-normalised element.
    const Vec3 b = op.scalar > kStructuralTol ? Vec3(op.bloch / op.scalar) : Vec3::Zero();
    std::snprintf(line, sizeof line, "element,%zu,%.17g,%.17g,%.17g,%.17g\n", k, b.x(), b.y(), b.z(),
                  op.trace());
    out << line;
  }
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-error discrimination of qubit states"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("ensemble", o.ensemble_path, "Ensemble JSON file")->required();
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    sub->add_option("--tolerance", o.tolerance, "Certification tolerance")->capture_default_str();
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "Constructive optimal measurement");
  common(solve_cmd);
  solve_cmd->add_flag("--oracle-check", o.oracle_check, "Compare against the dual oracle");

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Numerical dual solve for any ensemble");
  common(oracle_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Certify a POVM against an ensemble");
  common(verify_cmd);
  verify_cmd->add_option("povm", o.povm_path, "POVM JSON file")->required();

  CLI::App* sim_cmd = app.add_subcommand("simulate", "Monte Carlo discrimination experiment");
  common(sim_cmd);
  sim_cmd->add_option("povm", o.povm_path, "POVM JSON file");
  sim_cmd->add_flag("--use-solver", o.use_solver, "Simulate the solver's optimal POVM");
  sim_cmd->add_option("--trials", o.trials, "Number of trials")->capture_default_str()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--threads", o.threads, "Worker threads (0: hardware)");
  sim_cmd->add_option("--csv", o.csv_path, "Write the confusion matrix as CSV");

  CLI::App* family_cmd = app.add_subcommand("family", "Enumerate the optimal measurement family");
  common(family_cmd);

  CLI::App* export_cmd = app.add_subcommand("export-bloch", "State and element Bloch coordinates as CSV");
  common(export_cmd);
  export_cmd->add_option("--povm", o.povm_path, "POVM JSON file; solves when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }
  if (!(o.tolerance > 0.0)) {
    err << "error: --tolerance must be positive\n";
    return kInvalidInput;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(o, out, err);
    if (oracle_cmd->parsed()) return cmd_oracle(o, out, err);
    if (verify_cmd->parsed()) return cmd_verify(o, out, err);
    if (sim_cmd->parsed()) return cmd_simulate(o, out, err);
    if (family_cmd->parsed()) return cmd_family(o, out, err);
    if (export_cmd->parsed()) return cmd_export_bloch(o, out, err);
  } catch (const UnsupportedRegime& ex) {
    err << "error: " << ex.what() << "\nhint: run 'qdisc oracle' for this ensemble\n";
    return kUnsupported;
  } catch (const ValidationError& ex) {
    err << "error: " << ex.what() << '\n';
    return kInvalidInput;
  } catch (const DegenerateConfiguration& ex) {
    err << "error: " << ex.what() << '\n';
    return kInvalidInput;
  } catch (const NumericFailure& ex) {
    err << "error: " << ex.what() << '\n';
    return kNumericFailure;
  } catch (const nlohmann::json::exception& ex) {
    err << "error: malformed document: " << ex.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"qdisc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qdisc::cli
