// modalstats command line: load generation, demo-chain eigensolution, field
// analysis with critical-plane sweep, benchmarking and path validation.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "modalstats/errors.hpp"
#include "modalstats/loadgen.hpp"
#include "modalstats/modal.hpp"
#include "modalstats/model_io.hpp"
#include "modalstats/response.hpp"
#include "modalstats/sigstats.hpp"
#include "modalstats/synthetic.hpp"

namespace ms = modalstats;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

// exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure
constexpr int kUsageError = 2;
constexpr int kDataError = 3;
constexpr int kNumericalError = 4;

class usage_error : public std::runtime_error {
public:
  explicit usage_error(const std::string& msg) : std::runtime_error(msg) {}
};

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

// Merges a JSON config file into the argument list: {"flag": value} becomes
// --flag value unless the flag was given explicitly (explicit wins).
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string config_path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
  }
  if (config_path.empty()) return args;

  std::ifstream is(config_path);
  if (!is) throw ms::data_error("config: cannot open " + config_path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ms::data_error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ms::data_error("config: expected an object of flag/value pairs");

  std::vector<std::string> injected;
  for (const auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(flag);
      continue;
    }
    injected.push_back(flag);
    injected.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  // config values go after the subcommand token
  const std::size_t at = args.empty() ? 0 : 1;
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
  return args;
}

struct GenLoadOptions {
  double fs = 2000.0;
  double duration = 120.0;
  double sigma = 10.0;
  double amplitude = 22.0;
  double f_start = 150.0;
  double f_end = 300.0;
  double rate = 1.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  int channels = 1;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen_load(const GenLoadOptions& opt) {
  if (opt.duration <= 0.0) throw usage_error("gen-load: duration must be positive");
  if (opt.fs <= 0.0) throw usage_error("gen-load: fs must be positive");
  if (opt.channels < 1) throw usage_error("gen-load: need at least one channel");
  if (opt.out.empty()) throw usage_error("gen-load: --out is required");

  ms::NoiseSpec noise;
  noise.sigma = opt.sigma;
  noise.fs = opt.fs;
  noise.duration = opt.duration;
  noise.f_lo = opt.band_lo;
  noise.f_hi = opt.band_hi;
  noise.seed = opt.seed;

  ms::SweepSpec sweep;
  sweep.amplitude = opt.amplitude;
  sweep.f_start = opt.f_start;
  sweep.f_end = opt.f_end;
  sweep.rate_oct_per_min = opt.rate;
  sweep.fs = opt.fs;
  sweep.duration = opt.duration;

  const bool with_sweep = opt.amplitude > 0.0;
  const ms::TimeSeriesSet set = ms::sine_on_random_set(noise, sweep, opt.channels, with_sweep);
  ms::write_signals(set, opt.out);

  std::printf("wrote %s: %d channel(s), %lld samples at fs=%g Hz\n", opt.out.c_str(),
              set.num_channels(), static_cast<long long>(set.num_samples()), opt.fs);
  for (int u = 0; u < set.num_channels(); ++u) {
    const ms::TimeSeries ch = set.channel_series(u);
    std::printf("  ch%d: sigma=%.4f beta=%.4f\n", u + 1, std::sqrt(ms::central_moment(ch, 2)),
                ms::kurtosis(ch));
  }
  return 0;
}

struct EigenOptions {
  int masses = 10;
  double mass = 1.0;
  double stiffness = 1.0e4;
  std::string mass_list;
  std::string stiffness_list;
  int nr = 8;
  double zeta = 0.02;
  std::string inputs = "0";
  bool free_left = false;
  bool free_right = false;
  bool binary_nodes = false;
  std::string out;
};

int cmd_eigen(const EigenOptions& opt) {
  if (opt.out.empty()) throw usage_error("eigen: --out is required");
  ms::LumpedChainModel chain;
  if (!opt.mass_list.empty())
    chain.masses = parse_double_list(opt.mass_list);
  else
    chain.masses.assign(static_cast<std::size_t>(opt.masses), opt.mass);
  chain.clamped_left = !opt.free_left;
  chain.clamped_right = !opt.free_right;
  if (!opt.stiffness_list.empty())
    chain.stiffnesses = parse_double_list(opt.stiffness_list);
  else
    chain.stiffnesses.assign(static_cast<std::size_t>(chain.num_springs()), opt.stiffness);

  if (opt.nr < 1 || opt.nr > chain.num_masses())
    throw usage_error("eigen: requested mode count must be in [1, number of masses]");

  const ms::ModalModel model =
      ms::chain_to_modal_model(chain, opt.nr, opt.zeta, parse_int_list(opt.inputs));
  ms::write_model(model, opt.out, opt.binary_nodes);

  // orthogonality report on the full solution
  const Eigen::MatrixXd M = ms::chain_mass(chain);
  const ms::EigenSolution sol = ms::eigen_solve(ms::chain_stiffness(chain), M);
  const Eigen::MatrixXd gram = sol.shapes.transpose() * M * sol.shapes;
  const double max_off =
      (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();

  std::printf("wrote %s: %d mode(s), %zu spring node(s)\n", opt.out.c_str(), model.num_modes(),
              model.nodes.size());
  for (int r = 0; r < model.num_modes(); ++r)
    std::printf("  mode %d: f=%.6g Hz zeta=%g\n", r + 1,
                model.omega0(r) / (2.0 * std::numbers::pi), model.zeta(r));
  std::printf("orthogonality: max |Phi^T M Phi - I| = %.3e\n", max_off);
  return 0;
}

struct ValidationReport {
  double max_beta_deviation = 0.0;
  double max_cd_rms_deviation = 0.0;
  int nodes_checked = 0;
};

// Cross-checks the three response paths on a sample of nodes: FRF filtering
// (c), mode-shape-scaled series (d) and mode-shape-scaled statistics (e).
ValidationReport run_validation(const ms::ModalModel& model, const ms::TimeSeriesSet& loads,
                                const std::vector<ms::NodalFieldResult>& field, int max_nodes) {
  ValidationReport report;
  const std::size_t step =
      std::max<std::size_t>(1, model.nodes.size() / static_cast<std::size_t>(max_nodes));
  for (std::size_t i = 0; i < model.nodes.size(); i += step) {
    const auto& node = model.nodes[i];
    const ms::DirectResponse resp = ms::direct_response_oracle(model, loads, node.id);
    const double rms = std::sqrt(resp.via_modes.data().squaredNorm() /
                                 static_cast<double>(resp.via_modes.data().size()));
    if (rms > 0.0) {
      const double dev = (resp.via_frf.data() - resp.via_modes.data()).norm() /
                         std::sqrt(static_cast<double>(resp.via_modes.data().size())) / rms;
      report.max_cd_rms_deviation = std::max(report.max_cd_rms_deviation, dev);
    }
    const auto& stats = field[i];
    for (int c = 0; c < resp.via_modes.num_channels(); ++c) {
      if (!stats.beta_defined[static_cast<std::size_t>(c)]) continue;
      const double beta_direct = ms::kurtosis(resp.via_modes.channel_series(c));
      const double dev = std::abs(stats.beta(c) - beta_direct) / std::abs(beta_direct);
      report.max_beta_deviation = std::max(report.max_beta_deviation, dev);
    }
    ++report.nodes_checked;
  }
  return report;
}

struct AnalyzeOptions {
  std::string model_path;
  std::string loads_path;
  std::string out_dir = ".";
  double delta_alpha = 2.0;
  int top_k = 5;
  int threads = 0;
  bool validate = false;
  bool no_rotation = false;
  std::string padding = "pow2";
};

ms::PaddingPolicy parse_padding(const std::string& text) {
  if (text == "pow2") return ms::PaddingPolicy::pow2_2x;
  if (text == "none") return ms::PaddingPolicy::none;
  throw usage_error("padding must be 'pow2' or 'none'");
}

int cmd_analyze(const AnalyzeOptions& opt) {
  if (opt.model_path.empty() || opt.loads_path.empty())
    throw usage_error("analyze: --model and --loads are required");
  const ms::ModalModel model = ms::read_model(opt.model_path);
  if (model.nodes.empty()) throw usage_error("analyze: model has an empty node list");
  const ms::TimeSeriesSet loads = ms::read_signals(opt.loads_path);
  if (loads.num_channels() != model.num_inputs())
    throw ms::data_error("analyze: loads have " + std::to_string(loads.num_channels()) +
                         " channels but the model expects " +
                         std::to_string(model.num_inputs()));

  ms::FieldOptions options;
  options.sweep.delta_deg = opt.delta_alpha;
  options.with_rotation = !opt.no_rotation;
  options.threads = opt.threads;
  options.padding = parse_padding(opt.padding);

  ms::FieldRunStats stats;
  const auto results = ms::field_analysis(model, loads, options, &stats);

  fs::create_directories(opt.out_dir);
  const std::string csv_path = (fs::path(opt.out_dir) / "field.csv").string();
  const std::string summary_path = (fs::path(opt.out_dir) / "summary.json").string();
  ms::write_field_csv(results, csv_path);
  ms::write_field_summary(results, stats, opt.top_k, summary_path);

  std::printf("analyzed %zu node(s): modal solution %.3fs, modal stats %.3fs, per-node %.3fs\n",
              results.size(), stats.seconds_modal_solution, stats.seconds_modal_stats,
              stats.seconds_nodes);
  std::printf("wrote %s and %s\n", csv_path.c_str(), summary_path.c_str());

  if (opt.validate) {
    const ValidationReport report = run_validation(model, loads, results, 16);
    std::printf("validation over %d node(s): max |beta_e - beta_d| / beta_d = %.3e, "
                "max path c/d rms deviation = %.3e\n",
                report.nodes_checked, report.max_beta_deviation, report.max_cd_rms_deviation);
    if (report.max_beta_deviation >= 1e-8 || report.max_cd_rms_deviation >= 1e-8) {
      std::fprintf(stderr, "validation failed: path deviation above 1e-8\n");
      return kNumericalError;
    }
  }
  return 0;
}

struct ValidateOptions {
  std::string model_path;
  std::string loads_path;
  int node = 0;  // 0 = sample across the model
  int threads = 0;
};

int cmd_validate(const ValidateOptions& opt) {
  if (opt.model_path.empty() || opt.loads_path.empty())
    throw usage_error("validate: --model and --loads are required");
  const ms::ModalModel model = ms::read_model(opt.model_path);
  if (model.nodes.empty()) throw usage_error("validate: model has an empty node list");
  const ms::TimeSeriesSet loads = ms::read_signals(opt.loads_path);
  if (loads.num_channels() != model.num_inputs())
    throw ms::data_error("validate: loads channel count does not match the model inputs");

  ms::FieldOptions options;
  options.with_rotation = false;
  options.threads = opt.threads;

  ValidationReport report;
  if (opt.node != 0) {
    ms::ModalModel single = model;
    single.nodes = {model.node_by_id(opt.node)};
    const auto results = ms::field_analysis(single, loads, options);
    report = run_validation(single, loads, results, 1);
  } else {
    const auto results = ms::field_analysis(model, loads, options);
    report = run_validation(model, loads, results, 16);
  }
  std::printf("checked %d node(s): max |beta_e - beta_d| / beta_d = %.3e, "
              "max path c/d rms deviation = %.3e\n",
              report.nodes_checked, report.max_beta_deviation, report.max_cd_rms_deviation);
  return (report.max_beta_deviation < 1e-8 && report.max_cd_rms_deviation < 1e-8)
             ? 0
             : kNumericalError;
}

struct BenchOptions {
  std::string nodes = "1000,2000,4000,8000";
  int nr = 8;
  int nsigma = 3;
  int inputs = 2;
  double fs = 2000.0;
  double duration = 60.0;
  int length_factor = 8;
  int threads = 0;
  std::uint64_t seed = 1;
  std::string out = "bench.csv";
};

int cmd_bench(const BenchOptions& opt) {
  const std::vector<int> node_counts = parse_int_list(opt.nodes);
  if (node_counts.empty()) throw usage_error("bench: --nodes list is empty");

  std::ofstream csv(opt.out);
  if (!csv) throw ms::data_error("bench: cannot open " + opt.out);
  csv << "nodes,samples,modal_solution_s,modal_stats_s,per_node_s,per_node_us,"
         "direct_sampled_nodes,direct_per_node_s,direct_est_total_s\n";

  ms::NoiseSpec noise;
  noise.sigma = 10.0;
  noise.fs = opt.fs;
  noise.duration = opt.duration;
  noise.seed = opt.seed;
  ms::SweepSpec sweep;
  sweep.fs = opt.fs;
  sweep.duration = opt.duration;
  sweep.amplitude = 22.0;
  sweep.f_start = 150.0;
  sweep.f_end = 300.0;
  const ms::TimeSeriesSet loads = ms::sine_on_random_set(noise, sweep, opt.inputs);

  ms::FieldOptions options;
  options.threads = opt.threads;
  options.with_rotation = (opt.nsigma == 3);

  for (int count : node_counts) {
    const ms::ModalModel model =
        ms::make_synthetic_model(count, opt.nr, opt.nsigma, opt.inputs, opt.seed);
    ms::FieldRunStats stats;
    ms::field_analysis(model, loads, options, &stats);

    // direct path on a node sample, extrapolated
    const int sample = std::min(count, 16);
    const auto t0 = clock_type::now();
    for (int i = 0; i < sample; ++i) {
      const auto resp =
          ms::direct_response_oracle(model, loads, model.nodes[static_cast<std::size_t>(i)].id);
      for (int c = 0; c < resp.via_modes.num_channels(); ++c)
        (void)ms::kurtosis(resp.via_modes.channel_series(c));
    }
    const double direct_per_node = seconds_since(t0) / sample;

    csv << count << "," << loads.num_samples() << "," << stats.seconds_modal_solution << ","
        << stats.seconds_modal_stats << "," << stats.seconds_nodes << ","
        << 1e6 * stats.seconds_nodes / count << "," << sample << "," << direct_per_node << ","
        << direct_per_node * count << "\n";
    std::printf("nodes=%d: per-node %.3fs total (%.2f us/node), direct est. %.1fs total\n",
                count, stats.seconds_nodes, 1e6 * stats.seconds_nodes / count,
                direct_per_node * count);
  }

  // per-node cost must not depend on the record length
  {
    const int count = node_counts.front();
    const ms::ModalModel model =
        ms::make_synthetic_model(count, opt.nr, opt.nsigma, opt.inputs, opt.seed);
    ms::NoiseSpec long_noise = noise;
    long_noise.duration = opt.duration * opt.length_factor;
    ms::SweepSpec long_sweep = sweep;
    long_sweep.duration = long_noise.duration;
    const ms::TimeSeriesSet long_loads =
        ms::sine_on_random_set(long_noise, long_sweep, opt.inputs);

    ms::FieldRunStats short_stats, long_stats;
    ms::field_analysis(model, loads, options, &short_stats);
    ms::field_analysis(model, long_loads, options, &long_stats);
    const double ratio = long_stats.seconds_nodes / short_stats.seconds_nodes;
    csv << "# per-node time ratio for " << opt.length_factor << "x samples: " << ratio << "\n";
    std::printf("per-node time ratio (%dx samples): %.3f\n", opt.length_factor, ratio);
  }

  std::printf("wrote %s\n", opt.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modal response statistics toolkit"};
  app.require_subcommand(1);

  GenLoadOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-load", "generate a sine-on-random load file");
  gen_cmd->add_option("--fs", gen.fs, "sampling rate [Hz]");
  gen_cmd->add_option("--duration", gen.duration, "record length [s]");
  gen_cmd->add_option("--sigma", gen.sigma, "noise RMS");
  gen_cmd->add_option("--amplitude", gen.amplitude, "sweep amplitude (0 disables the sweep)");
  gen_cmd->add_option("--f-start", gen.f_start, "sweep start frequency [Hz]");
  gen_cmd->add_option("--f-end", gen.f_end, "sweep end frequency [Hz]");
  gen_cmd->add_option("--rate", gen.rate, "sweep rate [oct/min]");
  gen_cmd->add_option("--band-lo", gen.band_lo, "noise band lower edge [Hz]");
  gen_cmd->add_option("--band-hi", gen.band_hi, "noise band upper edge [Hz] (0 = Nyquist)");
  gen_cmd->add_option("--channels", gen.channels, "number of load channels");
  gen_cmd->add_option("--seed", gen.seed, "PRNG seed");
  gen_cmd->add_option("--out", gen.out, "output file (.csv or binary)");

  EigenOptions eig;
  auto* eig_cmd = app.add_subcommand("eigen", "solve a lumped chain and write a model file");
  eig_cmd->add_option("--masses", eig.masses, "number of masses");
  eig_cmd->add_option("--mass", eig.mass, "uniform mass [kg]");
  eig_cmd->add_option("--stiffness", eig.stiffness, "uniform spring stiffness [N/m]");
  eig_cmd->add_option("--mass-list", eig.mass_list, "comma-separated masses");
  eig_cmd->add_option("--stiffness-list", eig.stiffness_list, "comma-separated stiffnesses");
  eig_cmd->add_option("--nr", eig.nr, "number of modes to keep");
  eig_cmd->add_option("--zeta", eig.zeta, "uniform modal damping ratio");
  eig_cmd->add_option("--inputs", eig.inputs, "comma-separated input mass indices");
  eig_cmd->add_flag("--free-left", eig.free_left, "leave the left end unclamped");
  eig_cmd->add_flag("--free-right", eig.free_right, "leave the right end unclamped");
  eig_cmd->add_flag("--binary-nodes", eig.binary_nodes, "stress shapes to a binary sidecar");
  eig_cmd->add_option("--out", eig.out, "output model file");

  AnalyzeOptions ana;
  auto* ana_cmd = app.add_subcommand("analyze", "field statistics and critical-plane export");
  ana_cmd->add_option("--model", ana.model_path, "model file");
  ana_cmd->add_option("--loads", ana.loads_path, "loads file");
  ana_cmd->add_option("--out-dir", ana.out_dir, "output directory");
  ana_cmd->add_option("--delta-alpha", ana.delta_alpha, "rotation increment [deg]");
  ana_cmd->add_option("--top-k", ana.top_k, "nodes per statistic in the summary");
  ana_cmd->add_option("--threads", ana.threads, "worker threads (0 = cores)");
  ana_cmd->add_flag("--validate", ana.validate, "cross-check against the direct path");
  ana_cmd->add_flag("--no-rotation", ana.no_rotation, "skip the rotation sweep");
  ana_cmd->add_option("--padding", ana.padding, "fft padding: pow2 or none");

  ValidateOptions val;
  auto* val_cmd = app.add_subcommand("validate", "compare the response paths");
  val_cmd->add_option("--model", val.model_path, "model file");
  val_cmd->add_option("--loads", val.loads_path, "loads file");
  val_cmd->add_option("--node", val.node, "single node id (default: sample)");
  val_cmd->add_option("--threads", val.threads, "worker threads");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "time the modal path against the direct path");
  bench_cmd->add_option("--nodes", bench.nodes, "comma-separated node counts");
  bench_cmd->add_option("--nr", bench.nr, "modes");
  bench_cmd->add_option("--nsigma", bench.nsigma, "stress components per node");
  bench_cmd->add_option("--inputs", bench.inputs, "load channels");
  bench_cmd->add_option("--fs", bench.fs, "sampling rate [Hz]");
  bench_cmd->add_option("--duration", bench.duration, "record length [s]");
  bench_cmd->add_option("--length-factor", bench.length_factor,
                        "length ratio for the scaling check");
  bench_cmd->add_option("--threads", bench.threads, "worker threads");
  bench_cmd->add_option("--seed", bench.seed, "PRNG seed");
  bench_cmd->add_option("--out", bench.out, "output csv");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = apply_config(std::move(args));
    std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
    app.parse(args);

    if (gen_cmd->parsed()) return cmd_gen_load(gen);
    if (eig_cmd->parsed()) return cmd_eigen(eig);
    if (ana_cmd->parsed()) return cmd_analyze(ana);
    if (val_cmd->parsed()) return cmd_validate(val);
    if (bench_cmd->parsed()) return cmd_bench(bench);
    return kUsageError;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  } catch (const usage_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsageError;
  } catch (const ms::numerical_error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumericalError;
  } catch (const ms::singular_statistic_error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumericalError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kDataError;
  }
}
