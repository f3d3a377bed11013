#include "isat/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "isat/json_io.hpp"
#include "isat/subsolvers.hpp"

namespace isat::cli {

namespace fs = std::filesystem;

std::string format_double(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

namespace {

std::string instance_label(const std::string& path) {
  return fs::path(path).stem().string();
}

bool has_extension(const std::string& path, const std::string& ext) {
  return fs::path(path).extension() == ext;
}

std::string mean_rate_field(const RepeatRecord& record) {
  if (record.energy_rates.empty()) return "";
  double sum = 0.0;
  for (double r : record.energy_rates) sum += r;
  return format_double(sum / static_cast<double>(record.energy_rates.size()));
}

}  // namespace

std::string csv_header() {
  return "instance,formulation,decomposer,subsolver,S,scale,lfros,repeat,"
         "iterations_to_allsat,all_sat,final_energy,mean_energy_rate,"
         "clamp_total,zeroed_total,removed_total,seed";
}

std::string csv_row(const std::string& instance, const HybridConfig& cfg,
                    int repeat, const RepeatRecord& record) {
  std::ostringstream row;
  row << instance << ',' << formulation_name(cfg.formulation) << ','
      << decomposer_name(cfg.decomposer) << ','
      << subsolver_name(cfg.subsolver.kind) << ',' << cfg.capacity << ','
      << format_double(cfg.chip.scale) << ',' << cfg.chip.lfro_count << ','
      << repeat << ',' << record.iterations_to_allsat << ','
      << (record.all_sat ? 1 : 0) << ',' << format_double(record.final_energy)
      << ',' << mean_rate_field(record) << ',' << record.clamp_total << ','
      << record.zeroed_total << ',' << record.removed_total << ','
      << cfg.seed;
  return row.str();
}

int run_formulate(const FormulateOptions& opt, std::ostream& out,
                  std::ostream& err) {
  CnfInstance instance;
  try {
    instance = parse_dimacs_file(opt.input);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  FormulationModel model = encode(instance, opt.formulation);
  try {
    write_text_file(opt.output,
                    formulation_to_json(model, opt.pretty ? 2 : -1));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  out << instance_label(opt.input) << ": " << formulation_name(model.id)
      << " model with " << model.size() << " spins, "
      << model.ising.couplings().size() << " couplings ("
      << instance.num_vars << " vars, " << instance.num_clauses()
      << " clauses)\n";
  if (instance.clause_count_mismatch) {
    err << "warning: declared clause count differs from parsed count\n";
  }
  return kExitOk;
}

namespace {

struct LoadedProblem {
  FormulationModel model;
  std::string label;
};

LoadedProblem load_problem(const std::string& input, FormulationId id) {
  LoadedProblem lp;
  lp.label = instance_label(input);
  if (has_extension(input, ".json")) {
    lp.model = formulation_from_json(read_text_file(input));
  } else {
    lp.model = encode(parse_dimacs_file(input), id);
  }
  return lp;
}

void write_rows(std::ostream& out, const std::string& label,
                const HybridConfig& cfg, const RunMetrics& metrics) {
  for (std::size_t r = 0; r < metrics.repeats.size(); ++r) {
    out << csv_row(label, cfg, static_cast<int>(r), metrics.repeats[r])
        << '\n';
  }
}

}  // namespace

int run_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
  LoadedProblem lp;
  try {
    lp = load_problem(opt.input, opt.hybrid.formulation);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  HybridConfig cfg = opt.hybrid;
  cfg.formulation = lp.model.id;
  RunMetrics metrics;
  try {
    metrics = run_hybrid(lp.model, cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  if (!opt.output_csv.empty()) {
    std::ostringstream csv;
    csv << csv_header() << '\n';
    write_rows(csv, lp.label, cfg, metrics);
    try {
      write_text_file(opt.output_csv, csv.str());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitIo;
    }
  }
  out << lp.label << ": all_sat_rate=" << format_double(metrics.all_sat_rate)
      << " mean_iterations=" << format_double(metrics.mean_iterations);
  if (metrics.mean_energy_rate.has_value()) {
    out << " mean_energy_rate=" << format_double(*metrics.mean_energy_rate);
  }
  out << "\n";
  return kExitOk;
}

namespace {

struct BenchCell {
  std::string instance_path;
  std::string label;
  FormulationId formulation;
  DecomposerKind decomposer;
  double scale;
  int lfros;
  std::size_t index;
};

struct ConfigAggregate {
  long repeats = 0;
  long sat = 0;
  long iteration_sum = 0;
  double rate_sum = 0.0;
  long rate_count = 0;
};

HybridConfig cell_config(const BenchOptions& opt, const BenchCell& cell) {
  HybridConfig cfg = opt.base;
  cfg.formulation = cell.formulation;
  cfg.decomposer = cell.decomposer;
  cfg.chip.scale = cell.scale;
  cfg.chip.lfro_count = cell.lfros;
  cfg.seed = derive_seed(opt.base.seed, cell.index);
  return cfg;
}

// aggregate key, also the first columns of the aggregate CSV
std::string config_key(const BenchCell& cell) {
  std::ostringstream key;
  key << formulation_name(cell.formulation) << ','
      << decomposer_name(cell.decomposer) << ',' << format_double(cell.scale)
      << ',' << cell.lfros;
  return key.str();
}

}  // namespace

int run_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<std::string> instance_files;
  try {
    for (const auto& entry : fs::directory_iterator(opt.instances_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".cnf") {
        instance_files.push_back(entry.path().string());
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  std::sort(instance_files.begin(), instance_files.end());
  if (instance_files.empty()) {
    err << "error: no .cnf files in " << opt.instances_dir << "\n";
    return kExitIo;
  }
  if (opt.formulations.empty() || opt.decomposers.empty() ||
      opt.scales.empty() || opt.lfros.empty()) {
    err << "error: empty benchmark grid axis\n";
    return kExitError;
  }

  std::vector<BenchCell> cells;
  for (const auto& path : instance_files) {
    for (auto f : opt.formulations) {
      for (auto d : opt.decomposers) {
        for (double s : opt.scales) {
          for (int g : opt.lfros) {
            cells.push_back({path, instance_label(path), f, d, s, g,
                             cells.size()});
          }
        }
      }
    }
  }

  const fs::path ckpt_dir = fs::path(opt.out_csv).string() + ".ckpt";
  std::error_code ec;
  fs::create_directories(ckpt_dir, ec);
  if (ec) {
    err << "error: cannot create " << ckpt_dir.string() << "\n";
    return kExitIo;
  }
  auto fragment_path = [&](std::size_t idx) {
    char name[32];
    std::snprintf(name, sizeof(name), "cell_%06zu.csv", idx);
    return ckpt_dir / name;
  };
  auto error_path = [&](std::size_t idx) {
    char name[32];
    std::snprintf(name, sizeof(name), "cell_%06zu.err", idx);
    return ckpt_dir / name;
  };

  // instances are encoded once per (path, formulation) and shared by cells
  std::map<std::pair<std::string, FormulationId>, FormulationModel> encoded;
  std::mutex encoded_mutex;
  auto get_model = [&](const BenchCell& cell) -> const FormulationModel& {
    std::lock_guard<std::mutex> lock(encoded_mutex);
    auto key = std::make_pair(cell.instance_path, cell.formulation);
    auto it = encoded.find(key);
    if (it == encoded.end()) {
      it = encoded
               .emplace(key, encode(parse_dimacs_file(cell.instance_path),
                                    cell.formulation))
               .first;
    }
    return it->second;
  };

  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};
  std::atomic<long> computed{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const BenchCell& cell = cells[i];
      if (fs::exists(fragment_path(i))) continue;  // resume: already done
      fs::remove(error_path(i), ec);
      try {
        const FormulationModel& model = get_model(cell);
        HybridConfig cfg = cell_config(opt, cell);
        RunMetrics metrics = run_hybrid(model, cfg);
        std::ostringstream rows;
        write_rows(rows, cell.label, cfg, metrics);
        const fs::path tmp = fragment_path(i).string() + ".tmp";
        write_text_file(tmp.string(), rows.str());
        fs::rename(tmp, fragment_path(i));
        ++computed;
      } catch (const std::exception& e) {
        write_text_file(error_path(i).string(), std::string(e.what()) + "\n");
        ++failures;
      }
    }
  };

  const int jobs = std::max(1, opt.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // deterministic assembly in cell order, independent of completion order
  std::ofstream data(opt.out_csv, std::ios::binary);
  if (!data) {
    err << "error: cannot write " << opt.out_csv << "\n";
    return kExitIo;
  }
  data << csv_header() << '\n';
  std::map<std::string, ConfigAggregate> aggregates;
  std::size_t done = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!fs::exists(fragment_path(i))) {
      err << "cell " << i << " (" << cells[i].label << ','
          << config_key(cells[i]) << ") failed";
      if (fs::exists(error_path(i))) {
        err << ": " << read_text_file(error_path(i).string());
      } else {
        err << "\n";
      }
      continue;
    }
    ++done;
    const std::string rows = read_text_file(fragment_path(i).string());
    data << rows;
    auto& agg = aggregates[config_key(cells[i])];
    std::istringstream in(rows);
    std::string line;
    while (std::getline(in, line)) {
      // columns: ...,repeat(7),iterations(8),all_sat(9),...,rate(11),...
      std::vector<std::string> cols;
      std::stringstream ls(line);
      std::string col;
      while (std::getline(ls, col, ',')) cols.push_back(col);
      ++agg.repeats;
      agg.iteration_sum += std::stol(cols[8]);
      agg.sat += std::stol(cols[9]);
      if (!cols[11].empty()) {
        agg.rate_sum += std::stod(cols[11]);
        ++agg.rate_count;
      }
    }
  }
  data.close();

  const std::string agg_path =
      (fs::path(opt.out_csv).parent_path() /
       (fs::path(opt.out_csv).stem().string() + "_agg.csv"))
          .string();
  std::ofstream agg_out(agg_path, std::ios::binary);
  agg_out << "formulation,decomposer,scale,lfros,repeats,all_sat_rate,"
             "mean_iterations,mean_energy_rate\n";
  for (const auto& [key, agg] : aggregates) {
    agg_out << key << ',' << agg.repeats << ','
            << format_double(static_cast<double>(agg.sat) /
                             static_cast<double>(agg.repeats))
            << ','
            << format_double(static_cast<double>(agg.iteration_sum) /
                             static_cast<double>(agg.repeats))
            << ',';
    if (agg.rate_count > 0) {
      agg_out << format_double(agg.rate_sum /
                               static_cast<double>(agg.rate_count));
    }
    agg_out << '\n';
  }
  agg_out.close();

  out << "bench: " << done << "/" << cells.size() << " cells ("
      << computed.load() << " computed, " << cells.size() - done
      << " failed), rows in " << opt.out_csv << ", aggregates in " << agg_path
      << "\n";
  return done == cells.size() ? kExitOk : kExitError;
}

int run_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
  CnfInstance instance;
  std::uint64_t seed = opt.seed;
  try {
    for (;;) {
      instance = random_3sat(opt.num_vars, opt.num_clauses, seed);
      if (!opt.satisfiable_only) break;
      if (max_3sat_brute_force(instance).satisfied == instance.num_clauses()) {
        break;
      }
      ++seed;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  try {
    write_text_file(opt.output, to_dimacs(instance));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  out << "wrote " << opt.output << " (n=" << instance.num_vars
      << ", m=" << instance.num_clauses() << ", seed=" << seed << ")\n";
  return kExitOk;
}

}  // namespace isat::cli
