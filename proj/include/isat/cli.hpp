#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "isat/hybrid.hpp"

namespace isat::cli {

// exit codes: 0 success, 1 invalid configuration or incomplete run, 2 IO and
// parse failures
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitIo = 2;

struct FormulateOptions {
  std::string input;
  std::string output;
  FormulationId formulation = FormulationId::Chancellor;
  bool pretty = true;
};

struct SolveOptions {
  std::string input;  // .cnf instance or .json encoded model
  std::string output_csv;
  HybridConfig hybrid;
};

struct BenchOptions {
  std::string instances_dir;
  std::vector<FormulationId> formulations;
  std::vector<DecomposerKind> decomposers;
  std::vector<double> scales{12.0};
  std::vector<int> lfros{4};
  HybridConfig base;  // path, capacity, repeats, iterations, seed, engines
  int jobs = 1;
  std::string out_csv;
};

struct GenOptions {
  int num_vars = 20;
  int num_clauses = 91;
  std::uint64_t seed = 1;
  bool satisfiable_only = false;  // retry seeds until brute-force satisfiable
  std::string output;
};

std::string csv_header();
std::string csv_row(const std::string& instance, const HybridConfig& cfg,
                    int repeat, const RepeatRecord& record);

int run_formulate(const FormulateOptions& opt, std::ostream& out,
                  std::ostream& err);
int run_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err);
int run_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err);
int run_gen(const GenOptions& opt, std::ostream& out, std::ostream& err);

// stable shortest-ish decimal formatting used in all CSV output
std::string format_double(double value);

}  // namespace isat::cli
