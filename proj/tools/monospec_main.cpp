#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "monospec/asymptotics.hpp"
#include "monospec/bench.hpp"
#include "monospec/csv.hpp"
#include "monospec/errors.hpp"
#include "monospec/estimators.hpp"
#include "monospec/models.hpp"
#include "monospec/periodogram.hpp"
#include "monospec/rng.hpp"
#include "monospec/simulate.hpp"

namespace {

using namespace monospec;

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = nullptr;

  explicit OutputTarget(const std::string& path) {
    if (path == "-") {
      stream = &std::cout;
      return;
    }
    file.open(path, std::ios::binary);
    if (!file) throw DataError("cannot open output file: " + path);
    stream = &file;
  }
  std::ostream& out() { return *stream; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot read model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct ModelArgs {
  std::string model;
  int example = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model,
                    "Model: example1 | example2 | inline JSON | path (or @path) to JSON");
    cmd->add_option("--example", example, "Built-in example model (1 or 2)");
  }

  // 1, 2, or 0 for custom models.
  int example_id() const {
    if (example != 0) return example;
    if (model == "example1") return 1;
    if (model == "example2") return 2;
    return 0;
  }

  SpectralModel resolve() const {
    if (example != 0) {
      if (!model.empty())
        throw ParameterError("--model and --example are mutually exclusive");
      if (example == 1) return example1();
      if (example == 2) return example2();
      throw ParameterError("--example must be 1 or 2");
    }
    if (model.empty())
      throw ParameterError("a model is required: pass --model or --example");
    if (model == "example1") return example1();
    if (model == "example2") return example2();
    std::string text = model;
    if (text[0] == '@')
      text = read_file(text.substr(1));
    else if (text[0] != '{')
      text = read_file(text);
    return model_from_json(text);
  }
};

Eigen::VectorXd read_series(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read input series: " + path);
  std::vector<double> values;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t begin = line.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    std::size_t end = line.find_last_not_of(" \t");
    const std::string token = line.substr(begin, end - begin + 1);
    char* parse_end = nullptr;
    const double value = std::strtod(token.c_str(), &parse_end);
    if (parse_end != token.c_str() + token.size()) {
      if (first) {
        first = false;  // header row
        continue;
      }
      throw DataError("non-numeric input row: " + token);
    }
    first = false;
    values.push_back(value);
  }
  Eigen::VectorXd x(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) x[static_cast<Eigen::Index>(i)] = values[i];
  return x;
}

std::vector<Estimator> parse_estimator_list(const std::string& arg) {
  if (arg == "all")
    return {Estimator::raw_periodogram, Estimator::fhat, Estimator::ftilde};
  std::vector<Estimator> out;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(estimator_from_name(item));
  }
  if (out.empty()) throw ParameterError("no estimators requested");
  return out;
}

void check_levels_non_increasing(const Eigen::VectorXd& levels) {
  for (Eigen::Index i = 0; i + 1 < levels.size(); ++i) {
    if (levels[i + 1] > levels[i] + 1e-12 * std::max(1.0, std::abs(levels[i])))
      throw InvariantError("estimated levels are not non-increasing");
  }
}

double interquartile_range(const std::vector<double>& v) {
  return sample_quantile(v, 0.75) - sample_quantile(v, 0.25);
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateCmd {
  ModelArgs model_args;
  int n = 0;
  std::uint64_t seed = 12345;
  long arfima_truncation = 0;
  std::string out_path = "-";

  void run() const {
    const SpectralModel model = model_args.resolve();
    SimOptions opts;
    opts.arfima_truncation = arfima_truncation;
    RngStream rng(seed);
    const Eigen::VectorXd x = simulate_path(model, n, rng, opts);
    OutputTarget target(out_path);
    target.out() << "x\n";
    for (Eigen::Index i = 0; i < x.size(); ++i) target.out() << format_double(x[i]) << "\n";
  }
};

// ---------------------------------------------------------------------------
// estimate

struct EstimateCmd {
  ModelArgs model_args;
  std::string input_path;
  int n = 0;
  std::uint64_t seed = 12345;
  std::string estimator = "fhat";
  bool demean = false;
  long arfima_truncation = 0;
  std::string out_path = "-";

  void run() const {
    if (estimator != "fhat" && estimator != "ftilde" && estimator != "both" &&
        estimator != "raw")
      throw ParameterError("--estimator must be fhat, ftilde, both, or raw");

    Eigen::VectorXd x;
    bool have_model = false;
    SpectralModel model;
    if (!input_path.empty()) {
      if (!model_args.model.empty() || model_args.example != 0)
        throw ParameterError("--input and --model/--example are mutually exclusive");
      x = read_series(input_path);
    } else {
      model = model_args.resolve();
      have_model = true;
      if (n <= 0) throw ParameterError("--n is required when simulating the input");
      SimOptions opts;
      opts.arfima_truncation = arfima_truncation;
      RngStream rng(seed);
      x = simulate_path(model, n, rng, opts);
    }
    if (demean) x.array() -= x.mean();

    const Periodogram pg = periodogram(x);
    const bool want_fhat = estimator == "fhat" || estimator == "both";
    const bool want_ftilde = estimator == "ftilde" || estimator == "both";

    Eigen::VectorXd fhat_levels, ftilde_levels;
    if (want_fhat) {
      fhat_levels = estimate_fhat(pg).levels;
      check_levels_non_increasing(fhat_levels);
    }
    if (want_ftilde) {
      ftilde_levels = estimate_ftilde(pg).levels;
      check_levels_non_increasing(ftilde_levels);
    }

    OutputTarget target(out_path);
    std::ostream& out = target.out();
    out << "lambda";
    if (estimator == "raw") out << ",ordinate";
    if (want_fhat) out << ",fhat";
    if (want_ftilde) out << ",ftilde";
    if (have_model) out << ",f_true";
    out << "\n";
    for (int k = 0; k < pg.k_max(); ++k) {
      out << format_double(pg.freqs[k]);
      if (estimator == "raw") out << "," << format_double(pg.ordinates[k]);
      if (want_fhat) out << "," << format_double(fhat_levels[k]);
      if (want_ftilde) out << "," << format_double(ftilde_levels[k]);
      if (have_model) out << "," << format_double(spectral_density(model, pg.freqs[k]));
      out << "\n";
    }
  }
};

// ---------------------------------------------------------------------------
// bench

struct BenchCmd {
  ModelArgs model_args;
  std::vector<int> n_list{100, 500, 1000, 5000};
  int reps = 1000;
  std::string estimators = "all";
  std::uint64_t seed = 12345;
  int threads = 1;
  long arfima_truncation = 0;
  std::string format = "csv";
  std::string out_path = "-";

  void run() const {
    if (format != "csv" && format != "json")
      throw ParameterError("--format must be csv or json");
    const SpectralModel model = model_args.resolve();
    const int example_id = model_args.example_id();
    const std::vector<Estimator> ests = parse_estimator_list(estimators);
    SimOptions opts;
    opts.arfima_truncation = arfima_truncation;
    const std::vector<MiseRow> rows =
        mise_table(model, n_list, reps, ests, seed, threads, opts);

    const std::string example_label =
        example_id != 0 ? std::to_string(example_id) : std::string("custom");
    OutputTarget target(out_path);
    std::ostream& out = target.out();
    if (format == "csv") {
      out << "example,estimator,n,reps,mise,mc_se,reference\n";
      for (const MiseRow& row : rows) {
        out << example_label << "," << estimator_name(row.estimator) << "," << row.n << ","
            << row.reps << "," << format_double(row.mise) << "," << format_double(row.mc_se)
            << ",";
        const auto ref = table_reference(example_id, row.estimator, row.n);
        if (ref) out << format_double_short(*ref);
        out << "\n";
      }
    } else {
      nlohmann::ordered_json doc = nlohmann::ordered_json::array();
      for (const MiseRow& row : rows) {
        nlohmann::ordered_json item;
        item["example"] = example_label;
        item["estimator"] = estimator_name(row.estimator);
        item["n"] = row.n;
        item["reps"] = row.reps;
        item["mise"] = row.mise;
        item["mc_se"] = row.mc_se;
        const auto ref = table_reference(example_id, row.estimator, row.n);
        if (ref)
          item["reference"] = *ref;
        else
          item["reference"] = nullptr;
        doc.push_back(std::move(item));
      }
      out << doc.dump(2) << "\n";
    }
  }
};

// ---------------------------------------------------------------------------
// limit-check

struct LimitCheckCmd {
  ModelArgs model_args;
  std::string estimator = "fhat";
  double t0 = 1.0;
  int n = 0;
  int reps = 1000;
  std::uint64_t seed = 12345;
  int threads = 1;
  long arfima_truncation = 0;
  int chernoff_count = 10000;
  double half_width = 4.0;
  double step = 0.005;
  std::string out_path = "-";

  void run() const {
    if (estimator != "fhat" && estimator != "ftilde")
      throw ParameterError("--estimator must be fhat or ftilde");
    LimitExperiment exp;
    exp.model = model_args.resolve();
    exp.t0 = t0;
    exp.n = n;
    exp.reps = reps;
    exp.estimator = estimator == "fhat" ? EstimatorKind::fhat : EstimatorKind::ftilde;
    exp.sim.arfima_truncation = arfima_truncation;

    RngStream root(seed);
    RngStream norm_rng = root.child(1);
    const std::vector<double> samples = normalized_error_samples(exp, norm_rng, threads);

    ChernoffSamplerConfig cfg;
    cfg.half_width = half_width;
    cfg.step = step;
    cfg.sample_count = chernoff_count;
    RngStream cher_rng = root.child(2);
    const std::vector<double> chernoff = chernoff_sample(cfg, cher_rng);

    nlohmann::ordered_json doc;
    doc["estimator"] = estimator;
    doc["t0"] = t0;
    doc["n"] = n;
    doc["reps"] = reps;
    doc["ks"] = ks_distance(samples, chernoff);
    doc["median"] = sample_quantile(samples, 0.5);
    doc["iqr_ratio"] = interquartile_range(samples) / interquartile_range(chernoff);
    if (exp.estimator == EstimatorKind::fhat) {
      doc["constant"] = limit_constant_fhat(exp.model, t0);
    } else {
      doc["constant"] = limit_constant_ftilde(exp.model, t0);
      doc["constant_log"] = limit_constant_ftilde_log(exp.model, t0);
    }
    doc["normalized_samples"] = samples;
    doc["chernoff_samples"] = chernoff;

    OutputTarget target(out_path);
    target.out() << doc.dump(2) << "\n";
  }
};

// ---------------------------------------------------------------------------
// chernoff-sample

struct ChernoffCmd {
  int count = 10000;
  double half_width = 4.0;
  double step = 0.005;
  std::uint64_t seed = 12345;
  std::string out_path = "-";

  void run() const {
    ChernoffSamplerConfig cfg;
    cfg.half_width = half_width;
    cfg.step = step;
    cfg.sample_count = count;
    RngStream rng(seed);
    const std::vector<double> samples = chernoff_sample(cfg, rng);

    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= static_cast<double>(samples.size());
    double se = 0.0;
    if (samples.size() > 1) {
      double ss = 0.0;
      for (double s : samples) ss += (s - mean) * (s - mean);
      se = std::sqrt(ss / static_cast<double>(samples.size() - 1) /
                     static_cast<double>(samples.size()));
    }

    OutputTarget target(out_path);
    target.out() << "# mean=" << format_double(mean) << " se=" << format_double(se) << "\n";
    target.out() << "zeta\n";
    for (double s : samples) target.out() << format_double(s) << "\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone (non-increasing) spectral density estimation toolkit"};
  app.require_subcommand(1);

  SimulateCmd sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Simulate a stationary Gaussian path");
  sim.model_args.attach(sim_cmd);
  sim_cmd->add_option("--n", sim.n, "Path length")->required();
  sim_cmd->add_option("--seed", sim.seed, "Master RNG seed");
  sim_cmd->add_option("--arfima-truncation", sim.arfima_truncation,
                      "Moving-average truncation for ARFIMA components (0 = auto)");
  sim_cmd->add_option("--out", sim.out_path, "Output path or - for stdout");

  EstimateCmd est;
  CLI::App* est_cmd =
      app.add_subcommand("estimate", "Monotone spectral density estimates from a series");
  est.model_args.attach(est_cmd);
  est_cmd->add_option("--input", est.input_path, "Input series CSV (single column)");
  est_cmd->add_option("--n", est.n, "Path length when simulating the input");
  est_cmd->add_option("--seed", est.seed, "Master RNG seed");
  est_cmd->add_option("--estimator", est.estimator, "fhat | ftilde | both | raw");
  est_cmd->add_flag("--demean", est.demean, "Subtract the sample mean before estimating");
  est_cmd->add_option("--arfima-truncation", est.arfima_truncation,
                      "Moving-average truncation for ARFIMA components (0 = auto)");
  est_cmd->add_option("--out", est.out_path, "Output path or - for stdout");

  BenchCmd bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Monte Carlo MISE benchmark");
  bench.model_args.attach(bench_cmd);
  bench_cmd->add_option("--n-list", bench.n_list, "Comma-separated sample sizes")
      ->delimiter(',');
  bench_cmd->add_option("--reps", bench.reps, "Replications per cell");
  bench_cmd->add_option("--estimator", bench.estimators,
                        "all or comma-separated raw_periodogram,fhat,ftilde");
  bench_cmd->add_option("--seed", bench.seed, "Master RNG seed");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads");
  bench_cmd->add_option("--arfima-truncation", bench.arfima_truncation,
                        "Moving-average truncation for ARFIMA components (0 = auto)");
  bench_cmd->add_option("--format", bench.format, "csv | json");
  bench_cmd->add_option("--out", bench.out_path, "Output path or - for stdout");

  LimitCheckCmd limit;
  CLI::App* limit_cmd =
      app.add_subcommand("limit-check", "Compare normalized errors with the limit law");
  limit.model_args.attach(limit_cmd);
  limit_cmd->add_option("--estimator", limit.estimator, "fhat | ftilde");
  limit_cmd->add_option("--t0", limit.t0, "Evaluation point in (0, pi)");
  limit_cmd->add_option("--n", limit.n, "Path length")->required();
  limit_cmd->add_option("--reps", limit.reps, "Monte Carlo replications");
  limit_cmd->add_option("--seed", limit.seed, "Master RNG seed");
  limit_cmd->add_option("--threads", limit.threads, "Worker threads");
  limit_cmd->add_option("--arfima-truncation", limit.arfima_truncation,
                        "Moving-average truncation for ARFIMA components (0 = auto)");
  limit_cmd->add_option("--chernoff-count", limit.chernoff_count,
                        "Reference sample count for the limit distribution");
  limit_cmd->add_option("--half-width", limit.half_width, "Argmax grid half-width");
  limit_cmd->add_option("--step", limit.step, "Argmax grid step");
  limit_cmd->add_option("--out", limit.out_path, "Output path or - for stdout");

  ChernoffCmd cher;
  CLI::App* cher_cmd =
      app.add_subcommand("chernoff-sample", "Draw from the limit distribution argmax(W(s)-s^2)");
  cher_cmd->add_option("--count", cher.count, "Sample count");
  cher_cmd->add_option("--half-width", cher.half_width, "Grid half-width");
  cher_cmd->add_option("--step", cher.step, "Grid step");
  cher_cmd->add_option("--seed", cher.seed, "Master RNG seed");
  cher_cmd->add_option("--out", cher.out_path, "Output path or - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim_cmd->parsed()) sim.run();
    if (est_cmd->parsed()) est.run();
    if (bench_cmd->parsed()) bench.run();
    if (limit_cmd->parsed()) limit.run();
    if (cher_cmd->parsed()) cher.run();
    return 0;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const HypothesisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
