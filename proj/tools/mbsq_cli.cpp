// Copyright 2026 The mbsq Authors
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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mbsq/bench.hpp"
#include "mbsq/errors.hpp"
#include "mbsq/json_io.hpp"
#include "mbsq/qubo.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitInternal = 3;

// Input the user can fix: bad files, bad flag combinations.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

mbsq::Instance load_instance(const std::string& path) {
  const auto text = read_file(path);
  try {
    return mbsq::instance_from_json(text);
  } catch (const mbsq::ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

struct ModelOptions {
  std::string model = "simplified";
  double delta1_dbm = 0.0;
  double delta2_db = 0.0;
  int max_beams = 1;
  std::optional<double> lambda;

  void attach(CLI::App& cmd) {
    cmd.add_option("--model", model, "QUBO formulation")
        ->check(CLI::IsMember({"full", "simplified"}))
        ->capture_default_str();
    cmd.add_option("--delta1-dbm", delta1_dbm, "Coverage threshold in dBm")->required();
    cmd.add_option("--delta2-dbm", delta2_db, "Interference gap in dB")->capture_default_str();
    cmd.add_option("--max-beams,-r", max_beams, "Beams each cell may activate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--lambda", lambda, "Penalty weight (default m + 1)")
        ->check(CLI::PositiveNumber);
  }

  mbsq::FullModelParams params(const mbsq::Instance& instance) const {
    mbsq::FullModelParams p;
    p.delta1 = instance.scaling().to_scaled(delta1_dbm);
    p.delta2 = instance.scaling().gap_to_scaled(delta2_db);
    p.r = max_beams;
    p.lambda = lambda;
    try {
      mbsq::validate(p, instance);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return p;
  }

  mbsq::ModelKind kind() const { return mbsq::parse_model_kind(model); }
};

struct SolverOptions {
  std::string solver = "sa";
  mbsq::SolverSpec spec;

  void attach(CLI::App& cmd) {
    cmd.add_option("--sa-sweeps", spec.sa.sweeps)->capture_default_str();
    cmd.add_option("--sa-restarts", spec.sa.restarts)->capture_default_str();
    cmd.add_option("--sa-t0", spec.sa.initial_temperature)->capture_default_str();
    cmd.add_option("--sa-cooling", spec.sa.cooling_ratio)->capture_default_str();
    cmd.add_option("--tabu-tenure", spec.tabu.tenure)->capture_default_str();
    cmd.add_option("--tabu-iterations", spec.tabu.max_iterations)->capture_default_str();
    cmd.add_option("--tabu-restarts", spec.tabu.restarts)->capture_default_str();
    cmd.add_option("--cim-roundtrips", spec.cim.roundtrips)->capture_default_str();
    cmd.add_option("--cim-feedback", spec.cim.feedback_strength)->capture_default_str();
    cmd.add_option("--cim-noise", spec.cim.noise_std)->capture_default_str();
    cmd.add_option("--cim-pump-start", spec.cim.pump.start)->capture_default_str();
    cmd.add_option("--cim-pump-end", spec.cim.pump.end)->capture_default_str();
  }

  mbsq::SolverSpec make(const std::string& name) const {
    auto s = spec;
    s.kind = mbsq::parse_solver_kind(name);
    try {
      mbsq::validate(s.sa);
      mbsq::validate(s.tabu);
      mbsq::validate(s.cim);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return s;
  }
};

std::string format_gamma(const std::optional<double>& g) {
  if (!g) return "n/a";
  std::ostringstream s;
  s.precision(6);
  s << *g;
  return s.str();
}

void print_ratios(const std::vector<mbsq::RatioSummary>& ratios) {
  if (ratios.empty()) {
    std::cout << "no ratios: the reference solver or a baseline is missing\n";
    return;
  }
  for (const auto& r : ratios) {
    std::cout << "gamma " << r.reference << "/" << r.baseline << '\n';
    for (const auto& row : r.rows) std::cout << "  " << row.instance << "  " << format_gamma(row.gamma) << '\n';
    std::cout << "  mean  " << format_gamma(r.mean) << '\n';
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        const int lo = std::stoi(item.substr(0, dots));
        const int hi = std::stoi(item.substr(dots + 2));
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::exception&) {
      throw UsageError("bad integer list '" + text + "'");
    }
  }
  return out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beam selection as QUBO: build, solve and benchmark"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mbsq 0.1.0");

  // generate
  auto* gen = app.add_subcommand("generate", "Create an instance (synthetic or from RSRP records)");
  mbsq::SyntheticSpec synth;
  std::string records_path;
  std::string gen_out = "-";
  gen->add_option("--grids,-m", synth.m)->capture_default_str();
  gen->add_option("--cells,-v", synth.v)->capture_default_str();
  gen->add_option("--beams,-n", synth.n)->capture_default_str();
  gen->add_option("--min-cells", synth.min_cells_per_grid)->capture_default_str();
  gen->add_option("--max-cells", synth.max_cells_per_grid)->capture_default_str();
  gen->add_option("--rsrp-min", synth.rsrp_min, "Scaled units")->capture_default_str();
  gen->add_option("--rsrp-max", synth.rsrp_max, "Scaled units")->capture_default_str();
  gen->add_flag("--allow-single-cell", synth.allow_single_cell);
  gen->add_option("--seed", synth.seed)->capture_default_str();
  gen->add_option("--records", records_path, "grid_id,cell_id,beam_id,rsrp_dbm CSV to convert");
  gen->add_option("-o,--output", gen_out, "Instance JSON path")->capture_default_str();

  // build
  auto* build = app.add_subcommand("build", "Emit the QUBO of an instance");
  std::string build_instance_path;
  std::string build_out = "-";
  std::string registry_out;
  ModelOptions build_model;
  build->add_option("--instance,-i", build_instance_path)->required();
  build_model.attach(*build);
  build->add_option("-o,--output", build_out, "QUBO text path")->capture_default_str();
  build->add_option("--registry", registry_out, "Write 'index name' lines here");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance and post-select the best beams");
  std::string solve_instance_path;
  std::string solve_out = "-";
  std::string trajectory_out;
  std::uint64_t solve_seed = 1;
  std::size_t top_k = mbsq::kDefaultTopK;
  ModelOptions solve_model;
  SolverOptions solve_solver;
  solve->add_option("--instance,-i", solve_instance_path)->required();
  solve_model.attach(*solve);
  solve->add_option("--solver", solve_solver.solver)
      ->check(CLI::IsMember({"sa", "tabu", "cim", "exact"}))
      ->capture_default_str();
  solve->add_option("--seed", solve_seed)->capture_default_str();
  solve->add_option("--top-k", top_k)->check(CLI::PositiveNumber)->capture_default_str();
  solve->add_option("-o,--output", solve_out, "Solution JSON path")->capture_default_str();
  solve->add_option("--trajectory", trajectory_out, "CIM trajectory CSV path");
  solve_solver.attach(*solve);

  // bench
  auto* bench = app.add_subcommand("bench", "Repeated solver runs with timing and efficiency ratios");
  std::vector<std::string> bench_instances;
  std::string bench_grids = "5..10";
  int bench_cells = 5;
  int bench_beams = 5;
  std::uint64_t instance_seed = 1;
  std::string bench_solvers = "cim,sa,tabu";
  int repetitions = 100;
  std::uint64_t bench_seed = 1;
  std::string report_out;
  std::string table_out;
  ModelOptions bench_model;
  SolverOptions bench_solver;
  bench->add_option("--instance,-i", bench_instances, "Instance JSON files (default: synthetic)");
  bench->add_option("--grids", bench_grids, "Synthetic grid counts, e.g. 5..10 or 5,7")
      ->capture_default_str();
  bench->add_option("--cells", bench_cells)->capture_default_str();
  bench->add_option("--beams", bench_beams)->capture_default_str();
  bench->add_option("--instance-seed", instance_seed)->capture_default_str();
  bench->add_option("--solvers", bench_solvers)->capture_default_str();
  bench->add_option("--repetitions", repetitions)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--seed", bench_seed)->capture_default_str();
  bench->add_option("--report", report_out, "BenchResult JSON path");
  bench->add_option("--table", table_out, "instance,bits,solver,time,value CSV path");
  bench_model.attach(*bench);
  bench_solver.attach(*bench);

  // ratio
  auto* ratio = app.add_subcommand("ratio", "Efficiency ratio from a report, a table or literals");
  std::string ratio_report;
  std::string ratio_table;
  std::string reference = "cim";
  std::vector<double> literal;
  auto* report_opt = ratio->add_option("--report", ratio_report, "BenchResult JSON");
  auto* table_opt = ratio->add_option("--table", ratio_table, "instance,bits,solver,time,value CSV");
  auto* literal_opt =
      ratio->add_option("--values", literal, "f_cim t_cim f_base t_base")->expected(4);
  report_opt->excludes(table_opt)->excludes(literal_opt);
  table_opt->excludes(literal_opt);
  ratio->add_option("--reference", reference, "Solver the others are compared to")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      mbsq::Instance instance;
      if (!records_path.empty()) {
        std::ifstream in(records_path);
        if (!in) throw UsageError("cannot open '" + records_path + "'");
        instance = mbsq::build_instance(mbsq::parse_records(in));
      } else {
        instance = mbsq::generate_synthetic(synth);
      }
      write_output(gen_out, mbsq::instance_to_json(instance));
      return kExitOk;
    }

    if (*build) {
      const auto instance = load_instance(build_instance_path);
      const auto params = build_model.params(instance);
      const auto prepared = mbsq::prepare_model(instance, build_model.kind(), params);
      std::ostringstream text;
      mbsq::write_qubo(prepared.qubo(), text);
      write_output(build_out, text.str());
      if (!registry_out.empty()) {
        std::ostringstream reg;
        for (std::size_t i = 0; i < prepared.registry().size(); ++i)
          reg << i << ' ' << prepared.registry().name(i).to_string() << '\n';
        write_output(registry_out, reg.str());
      }
      const auto counts = mbsq::bit_count(instance.grids(), instance.beams(), instance.cells(),
                                          params.r);
      std::cerr << "variables " << prepared.registry().size() << " (closed-form count "
                << counts.formula << ")\n";
      return kExitOk;
    }

    if (*solve) {
      const auto instance = load_instance(solve_instance_path);
      const auto params = solve_model.params(instance);
      const auto prepared = mbsq::prepare_model(instance, solve_model.kind(), params);
      const auto spec = solve_solver.make(solve_solver.solver);
      mbsq::Trajectory trajectory;
      const auto pool = mbsq::run_solver(spec, prepared, solve_seed, &trajectory);
      if (!trajectory_out.empty()) {
        if (spec.kind != mbsq::SolverKind::kCim)
          throw UsageError("--trajectory is only produced by the cim solver");
        std::ostringstream csv;
        trajectory.write_csv(csv);
        write_output(trajectory_out, csv.str());
      }
      const auto solution =
          mbsq::select_best_feasible(pool, prepared.registry(), instance, params, top_k);
      if (!solution) {
        std::cerr << "no entry of the top-" << top_k << " pool respects the beam budget\n";
        return kExitNoSolution;
      }
      const auto& bits = pool.entries[solution->source_rank].bits;
      double z = 0.0;
      for (std::size_t i = 0; i < prepared.registry().size(); ++i)
        if (prepared.registry().name(i).family == mbsq::VarFamily::kZ) z += bits[i];
      const double residual = mbsq::energy(prepared.qubo(), bits) + z;
      write_output(solve_out, mbsq::solution_to_json(*solution, residual));
      return kExitOk;
    }

    if (*bench) {
      std::vector<mbsq::BenchInstance> instances;
      if (!bench_instances.empty()) {
        for (const auto& path : bench_instances) {
          auto instance = load_instance(path);
          const auto params = bench_model.params(instance);
          instances.push_back({path, std::move(instance), bench_model.kind(), params});
        }
      } else {
        for (int m : parse_int_list(bench_grids)) {
          mbsq::SyntheticSpec s;
          s.m = m;
          s.v = bench_cells;
          s.n = bench_beams;
          s.seed = instance_seed + static_cast<std::uint64_t>(m);
          auto instance = mbsq::generate_synthetic(s);
          const auto params = bench_model.params(instance);
          instances.push_back({"m=" + std::to_string(m), std::move(instance), bench_model.kind(),
                               params});
        }
      }
      std::vector<mbsq::SolverSpec> specs;
      for (const auto& name : split_names(bench_solvers)) {
        try {
          specs.push_back(bench_solver.make(name));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }
      const auto result =
          mbsq::run_benchmark(instances, specs, repetitions, bench_seed, reference, top_k);
      if (!report_out.empty()) write_output(report_out, mbsq::bench_result_to_json(result));
      std::ostringstream table;
      mbsq::write_table_csv(mbsq::table_rows(result), table);
      write_output(table_out.empty() ? "-" : table_out, table.str());
      for (const auto& e : result.entries)
        std::cerr << e.instance << ' ' << e.solver << ": bits " << e.bits << " (closed-form "
                  << e.formula_bits << "), mean objective " << e.mean_objective << ", best "
                  << e.best_objective << ", mean time " << e.mean_time_seconds << " s\n";
      for (const auto& note : result.notes) std::cerr << "note: " << note << '\n';
      return kExitOk;
    }

    if (*ratio) {
      if (!literal.empty()) {
        std::cout << mbsq::efficiency_ratio(literal[0], literal[1], literal[2], literal[3]) << '\n';
        return kExitOk;
      }
      if (!ratio_report.empty()) {
        const auto result = mbsq::bench_result_from_json(read_file(ratio_report));
        print_ratios(mbsq::compute_ratios(mbsq::table_rows(result), reference));
        return kExitOk;
      }
      if (!ratio_table.empty()) {
        std::istringstream in(read_file(ratio_table));
        print_ratios(mbsq::compute_ratios(mbsq::read_table_csv(in), reference));
        return kExitOk;
      }
      throw UsageError("ratio needs --report, --table or --values");
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const mbsq::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
