#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isat/cli.hpp"

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ISAT_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 1;
}

void add_hybrid_flags(CLI::App* cmd, isat::HybridConfig& cfg,
                      std::string& formulation, std::string& decomposer,
                      std::string& subsolver, std::string& path,
                      std::string& removal) {
  cmd->add_option("--formulation", formulation,
                  "mis|ilp|chancellor|nusslein2nm|nussleinnm")
      ->default_val("chancellor");
  cmd->add_option("--decomposer", decomposer,
                  "energy-impact|random|pseudorandom|bfs|sat")
      ->default_val("bfs");
  cmd->add_option("--subsolver", subsolver, "tabu|brute|anneal")
      ->default_val("tabu");
  cmd->add_option("--path", path, "software|chip")->default_val("software");
  cmd->add_option("--capacity", cfg.capacity, "sub-problem spin capacity S");
  cmd->add_option("--iterations", cfg.iteration_limit, "iteration limit");
  cmd->add_option("--repeats", cfg.repeats, "independent repeats");
  cmd->add_option("--seed", cfg.seed, "master seed (env ISAT_SEED)");
  cmd->add_option("--scale", cfg.chip.scale, "chip scaling factor k");
  cmd->add_option("--lfros", cfg.chip.lfro_count, "local-field oscillators");
  cmd->add_option("--jmax", cfg.chip.j_max, "coupling range limit");
  cmd->add_option("--total-spins", cfg.chip.total_spins,
                  "chip spins including the reference group");
  cmd->add_option("--removal", removal, "rigorous|heuristic|off")
      ->default_val("rigorous");
  cmd->add_option("--removal-n", cfg.chip.removal_n,
                  "heuristic removal threshold N");
  cmd->add_option("--readout-flips", cfg.chip.readout_flip_prob,
                  "per-sample readout flip probability");
  cmd->add_option("--readout-samples", cfg.chip.readout_samples,
                  "readout samples per spin");
  cmd->add_flag("--quadratic-lf", cfg.chip.quadratic_h_range,
                "quadratic local-field range model");
  cmd->add_option("--tabu-tenure", cfg.subsolver.tabu_tenure, "tabu tenure");
  cmd->add_option("--tabu-steps", cfg.subsolver.tabu_steps,
                  "tabu flip budget (negative = 500*n)");
  cmd->add_option("--anneal-t0", cfg.subsolver.anneal_t0,
                  "anneal start temperature");
  cmd->add_option("--anneal-t1", cfg.subsolver.anneal_t1,
                  "anneal end temperature");
  cmd->add_option("--anneal-steps", cfg.subsolver.anneal_steps,
                  "anneal steps (negative = 200*n)");
  cmd->add_flag("--impact-magnitude", cfg.impact_by_magnitude,
                "rank energy impact by |flip energy|");
  cmd->add_flag("!--no-clamp", cfg.incumbent_clamp,
                "disable incumbent clamping");
}

void finish_hybrid_flags(isat::HybridConfig& cfg,
                         const std::string& formulation,
                         const std::string& decomposer,
                         const std::string& subsolver, const std::string& path,
                         const std::string& removal) {
  cfg.formulation = isat::formulation_from_name(formulation);
  cfg.decomposer = isat::decomposer_from_name(decomposer);
  cfg.subsolver.kind = isat::subsolver_from_name(subsolver);
  cfg.path = isat::path_from_name(path);
  cfg.chip.removal = isat::removal_from_name(removal);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid Max-3SAT solver over QUBO/Ising formulations"};
  app.require_subcommand(1);

  // formulate
  isat::cli::FormulateOptions fopt;
  std::string f_formulation = "chancellor";
  auto* formulate = app.add_subcommand(
      "formulate", "encode a CNF instance into a JSON Ising model");
  formulate->add_option("input", fopt.input, "input .cnf")->required();
  formulate->add_option("output", fopt.output, "output .json")->required();
  formulate->add_option("--formulation", f_formulation,
                        "mis|ilp|chancellor|nusslein2nm|nussleinnm");
  formulate->add_flag("!--compact", fopt.pretty, "single-line JSON output");

  // solve
  isat::cli::SolveOptions sopt;
  sopt.hybrid.seed = default_seed();
  std::string s_formulation, s_decomposer, s_subsolver, s_path, s_removal;
  auto* solve = app.add_subcommand(
      "solve", "run the hybrid workflow on one instance");
  solve->add_option("input", sopt.input, "input .cnf or encoded .json")
      ->required();
  solve->add_option("-o,--out", sopt.output_csv, "per-repeat CSV output");
  add_hybrid_flags(solve, sopt.hybrid, s_formulation, s_decomposer,
                   s_subsolver, s_path, s_removal);

  // bench
  isat::cli::BenchOptions bopt;
  bopt.base.seed = default_seed();
  std::string b_formulation, b_decomposer, b_subsolver, b_path, b_removal;
  std::vector<std::string> b_formulations, b_decomposers;
  auto* bench = app.add_subcommand(
      "bench", "sweep a grid of configurations over an instance directory");
  bench->add_option("--instances", bopt.instances_dir,
                    "directory of .cnf files")
      ->required();
  bench->add_option("-o,--out", bopt.out_csv, "output CSV path")->required();
  bench->add_option("--formulations", b_formulations,
                    "formulations to sweep")
      ->delimiter(',');
  bench->add_option("--decomposers", b_decomposers, "decomposers to sweep")
      ->delimiter(',');
  bench->add_option("--scales", bopt.scales, "chip scales to sweep")
      ->delimiter(',');
  bench->add_option("--lfros-list", bopt.lfros, "LFRO counts to sweep")
      ->delimiter(',');
  bench->add_option("--jobs", bopt.jobs, "parallel worker threads");
  add_hybrid_flags(bench, bopt.base, b_formulation, b_decomposer, b_subsolver,
                   b_path, b_removal);

  // gen
  isat::cli::GenOptions gopt;
  auto* gen = app.add_subcommand(
      "gen", "generate a seeded random 3SAT instance");
  gen->add_option("output", gopt.output, "output .cnf")->required();
  gen->add_option("--n", gopt.num_vars, "variables");
  gen->add_option("--m", gopt.num_clauses, "clauses");
  gen->add_option("--seed", gopt.seed, "seed");
  gen->add_flag("--satisfiable", gopt.satisfiable_only,
                "advance the seed until the instance is satisfiable");

  CLI11_PARSE(app, argc, argv);

  try {
    if (formulate->parsed()) {
      fopt.formulation = isat::formulation_from_name(f_formulation);
      return isat::cli::run_formulate(fopt, std::cout, std::cerr);
    }
    if (solve->parsed()) {
      finish_hybrid_flags(sopt.hybrid, s_formulation, s_decomposer,
                          s_subsolver, s_path, s_removal);
      return isat::cli::run_solve(sopt, std::cout, std::cerr);
    }
    if (bench->parsed()) {
      finish_hybrid_flags(bopt.base, b_formulation, b_decomposer, b_subsolver,
                          b_path, b_removal);
      for (const auto& name : b_formulations) {
        bopt.formulations.push_back(isat::formulation_from_name(name));
      }
      if (bopt.formulations.empty()) {
        bopt.formulations = {isat::FormulationId::Chancellor};
      }
      for (const auto& name : b_decomposers) {
        bopt.decomposers.push_back(isat::decomposer_from_name(name));
      }
      if (bopt.decomposers.empty()) {
        bopt.decomposers = {isat::DecomposerKind::Bfs};
      }
      return isat::cli::run_bench(bopt, std::cout, std::cerr);
    }
    if (gen->parsed()) {
      return isat::cli::run_gen(gopt, std::cout, std::cerr);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return isat::cli::kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return isat::cli::kExitError;
  }
  return isat::cli::kExitError;
}
