// covertsim: desk-scale simulator for square-root-law covert communication
// over a complex AWGN channel.
//
// Subcommands:
//   calibrate  estimate the warden's SNR from a calibration packet
//   run        full multi-duration, multi-trial experiment
//   trial      single trial, for debugging
//   analyze    re-aggregate a results CSV
//   bound      covertness assessment for given parameters

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "covert/analysis.hpp"
#include "covert/channel.hpp"
#include "covert/config.hpp"
#include "covert/harness.hpp"
#include "covert/protocol.hpp"

namespace {

using covert::fmt_g9;

struct ConfigCli {
  std::string config_path;
  std::vector<std::string> sets;  // generic section.key=value overrides
  std::vector<std::pair<std::string, std::string>> flag_values;
};

const std::vector<std::string> kConfigKeys = {
    "experiment.durations", "experiment.trials_per_duration", "experiment.delta",
    "experiment.master_seed", "experiment.workers", "experiment.alpha_override",
    "experiment.bob_phase", "experiment.ci_method", "experiment.sync_window",
    "experiment.calibration_duration",
    "signal.sample_rate", "signal.slot_len", "signal.filter_len",
    "signal.gaussian_sigma", "signal.pulse_amplitude",
    "preamble.repetitions", "preamble.samples_per_symbol", "preamble.span_symbols",
    "preamble.rolloff", "preamble.amplitude",
    "channel.bob.h", "channel.bob.theta", "channel.bob.sigma_sq", "channel.bob.snr_db",
    "channel.willie.h", "channel.willie.theta", "channel.willie.sigma_sq",
    "channel.willie.snr_db",
    "output.dir", "output.results_csv", "output.bob_plot_csv", "output.willie_plot_csv",
    "output.summary", "output.calibration", "output.store_iq"};

// Registers --config, --set, and one flag per config key on a subcommand.
void add_config_options(CLI::App* cmd, ConfigCli& cli) {
  cmd->add_option("-c,--config", cli.config_path, "Configuration file (key/value sections)");
  cmd->add_option("--set", cli.sets,
                  "Override one field, e.g. --set experiment.delta=0.01")
      ->expected(-1);
  for (const auto& key : kConfigKeys) {
    cmd->add_option_function<std::string>(
        "--" + key,
        [&cli, key](const std::string& v) { cli.flag_values.emplace_back(key, v); },
        "Override " + key);
  }
}

covert::ExperimentConfig build_config(const ConfigCli& cli) {
  covert::ExperimentConfig cfg;
  if (!cli.config_path.empty()) cfg = covert::load_config_file(cli.config_path);
  bool dir_overridden = false;
  for (const auto& s : cli.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--set", "expected section.key=value, got '" + s + "'");
    covert::apply_config_override(cfg, s.substr(0, eq), s.substr(eq + 1));
    if (s.substr(0, eq) == "output.dir") dir_overridden = true;
  }
  for (const auto& [key, value] : cli.flag_values) {
    covert::apply_config_override(cfg, key, value);
    if (key == "output.dir") dir_overridden = true;
  }
  if (!dir_overridden) {
    if (const char* env = std::getenv("COVERTSIM_OUTPUT_DIR"); env && *env)
      cfg.output.dir = env;
  }
  covert::validate_config(cfg);
  return cfg;
}

void print_snr_estimate(const covert::SnrEstimate& est) {
  std::cout << "h_sq_hat      " << fmt_g9(est.h_sq_hat) << "\n"
            << "sigma_sq_hat  " << fmt_g9(est.sigma_sq_hat) << "\n"
            << "snr_hat       " << fmt_g9(est.snr_hat) << " ("
            << fmt_g9(covert::linear_to_db(est.snr_hat)) << " dB)\n"
            << "pulse slots   " << est.n_pulse_slots_used << "\n"
            << "empty slots   " << est.n_empty_slots_used << "\n";
}

void print_cells(const std::vector<covert::CellSummary>& cells) {
  std::cout << "duration_s n n_p alpha_n trials aborted mean_n_t p_e_bsc b_bsc "
               "willie_p_e snr_db\n";
  for (const auto& c : cells) {
    std::cout << fmt_g9(c.duration_s) << ' ' << c.n << ' ' << c.n_p << ' '
              << fmt_g9(c.alpha_n) << ' ' << c.trials << ' ' << c.aborted << ' '
              << fmt_g9(c.mean_n_t) << ' ' << fmt_g9(c.p_e) << ' ' << fmt_g9(c.b_bsc)
              << ' ' << fmt_g9(c.willie_p_e) << ' ' << fmt_g9(c.snr_db.mean) << "\n";
  }
}

void print_fit(const covert::PowerLawFit& fit, bool valid) {
  if (!valid) {
    std::cout << "loglog fit: not enough positive-throughput cells\n";
    return;
  }
  std::cout << "loglog fit: slope " << fmt_g9(fit.slope) << ", intercept "
            << fmt_g9(fit.intercept) << ", r_sq " << fmt_g9(fit.r_sq)
            << ", slope-1/2 r_sq " << fmt_g9(fit.constrained_r_sq) << "\n";
}

int cmd_calibrate(const ConfigCli& cli) {
  const auto cfg = build_config(cli);
  const auto ctx = covert::make_context(cfg);
  const auto est = covert::run_calibration(ctx);
  print_snr_estimate(est);
  std::filesystem::create_directories(cfg.output.dir);
  const auto path = std::filesystem::path(cfg.output.dir) / cfg.output.calibration;
  covert::write_calibration_text(path.string(), est);
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_run(const ConfigCli& cli) {
  const auto cfg = build_config(cli);
  const auto summary = covert::run_experiment(cfg);
  std::cout << "calibration snr " << fmt_g9(summary.calibration_snr_db) << " dB\n";
  print_cells(summary.cells);
  print_fit(summary.fit, summary.fit_valid);
  std::cout << "wrote " << cfg.output.dir << "/{" << cfg.output.results_csv << ", "
            << cfg.output.bob_plot_csv << ", " << cfg.output.willie_plot_csv << ", "
            << cfg.output.summary << ", " << cfg.output.calibration << "}\n";
  return 0;
}

int cmd_trial(const ConfigCli& cli, std::size_t duration_index, std::size_t trial_index,
              bool dump_iq, const std::string& secret_out) {
  auto cfg = build_config(cli);
  if (duration_index >= cfg.durations.size())
    throw CLI::ValidationError("--duration-index", "outside the configured durations");
  if (trial_index >= cfg.trials_per_duration)
    throw CLI::ValidationError("--trial-index", "outside trials_per_duration");
  if (dump_iq) cfg.output.store_iq = true;

  const auto ctx = covert::make_context(cfg);
  const auto cal = covert::run_calibration(ctx);
  const auto rec = covert::run_trial(ctx, duration_index, trial_index, cal.snr_hat);

  std::cout << "trial " << rec.trial_id << " duration " << fmt_g9(rec.duration_s)
            << " s, n " << rec.n << ", n_p " << rec.n_p << "\n"
            << "alpha_n " << fmt_g9(rec.alpha_n) << (rec.alpha_clipped ? " (clipped)" : "")
            << ", n_t " << rec.n_t << ", seed " << rec.trial_seed << "\n";
  if (rec.aborted) {
    std::cout << "aborted: " << rec.abort_reason << "\n";
    return 1;
  }
  std::cout << "preamble offset " << rec.preamble_offset << " score "
            << fmt_g9(rec.preamble_score) << "\n"
            << "theta_hat " << fmt_g9(rec.theta_hat) << "\n"
            << "bob: errors " << rec.bit_errors << "/" << rec.data_bits << " p_e "
            << fmt_g9(rec.p_e_bsc) << " c_bsc " << fmt_g9(rec.c_bsc) << " b_bsc "
            << fmt_g9(rec.b_bsc) << (rec.degenerate_inversion ? " (sign inversion)" : "")
            << "\n"
            << "willie: snr_hat " << fmt_g9(rec.snr_hat_db) << " dB, llr_on "
            << fmt_g9(rec.llr_on) << " -> " << (rec.detect_on ? "H1" : "H0")
            << ", llr_off " << fmt_g9(rec.llr_off) << " -> "
            << (rec.detect_off ? "H1" : "H0") << "\n"
            << "bound: d_taylor " << fmt_g9(rec.d_taylor) << " d_quad "
            << fmt_g9(rec.d_quadrature) << " pe_low_taylor "
            << fmt_g9(rec.pe_lower_taylor) << " pe_low_quad "
            << fmt_g9(rec.pe_lower_quadrature) << "\n";
  if (dump_iq)
    std::cout << "iq dumps under " << cfg.output.dir << "/iq/\n";

  if (!secret_out.empty()) {
    covert::CovertBudget budget;
    budget.alpha_n = rec.alpha_n;
    budget.n_p = rec.n_p;
    const auto key = covert::generate_secret(budget, rec.trial_seed);
    covert::save_secret(key, rec.alpha_n, secret_out);
    std::cout << "wrote secret to " << secret_out << "\n";
  }
  return 0;
}

int cmd_analyze(const std::string& results_path, const std::string& out_dir,
                const std::string& ci_method) {
  const auto records = covert::read_results_csv(results_path);
  const auto ci = ci_method == "normal" ? covert::CiMethod::normal : covert::CiMethod::wilson;
  const auto cells = covert::aggregate_cells(
      records, ci, std::numeric_limits<double>::quiet_NaN());
  bool fit_valid = false;
  const auto fit = covert::fit_cells(cells, fit_valid);
  print_cells(cells);
  print_fit(fit, fit_valid);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    covert::write_bob_plot_csv((dir / "plot_bob.csv").string(), cells);
    covert::write_willie_plot_csv((dir / "plot_willie.csv").string(), cells);
    std::cout << "wrote " << out_dir << "/{plot_bob.csv, plot_willie.csv}\n";
  }
  return 0;
}

int cmd_bound(double snr_db, double snr_linear, double delta, std::size_t n_p,
              double alpha_flag) {
  double snr = snr_linear;
  if (std::isfinite(snr_db)) snr = covert::db_to_linear(snr_db);
  if (!(snr > 0.0)) throw CLI::ValidationError("--snr", "need --snr-db or a positive --snr");

  double alpha = alpha_flag;
  covert::CovertBudget budget;
  if (alpha < 0.0) {
    budget = covert::compute_alpha(snr, delta, n_p);
    alpha = budget.alpha_n;
    std::cout << "alpha_n " << fmt_g9(alpha) << (budget.clipped ? " (clipped to 1)" : "")
              << "  delta_re " << fmt_g9(budget.delta_re) << "\n";
  } else {
    std::cout << "alpha_n " << fmt_g9(alpha) << " (given)\n";
  }

  const auto a = covert::assess_covertness(alpha, snr, n_p);
  const bool sweep = covert::verify_taylor_upper_bound(std::sqrt(snr), alpha);
  std::cout << "d_taylor          " << fmt_g9(a.d_taylor) << "\n"
            << "d_quadrature      " << fmt_g9(a.d_quadrature) << "\n"
            << "pe_lower_taylor   " << fmt_g9(a.pe_lower_taylor) << "\n"
            << "pe_lower_quad     " << fmt_g9(a.pe_lower_quadrature) << "\n"
            << "taylor upper bound at endpoint: " << (a.taylor_is_upper_bound ? "yes" : "no")
            << ", across amplitude sweep: " << (sweep ? "yes" : "no") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square-root-law covert communication simulator"};
  app.require_subcommand(1);

  ConfigCli cal_cli, run_cli, trial_cli;
  auto* calibrate = app.add_subcommand("calibrate", "Estimate the warden's SNR");
  add_config_options(calibrate, cal_cli);

  auto* run = app.add_subcommand("run", "Run the full experiment");
  add_config_options(run, run_cli);

  auto* trial = app.add_subcommand("trial", "Run one trial and print its record");
  add_config_options(trial, trial_cli);
  std::size_t duration_index = 0, trial_index = 0;
  bool dump_iq = false;
  std::string secret_out;
  trial->add_option("--duration-index", duration_index, "Index into the durations list");
  trial->add_option("--trial-index", trial_index, "Trial index within the duration");
  trial->add_flag("--dump-iq", dump_iq, "Write tx/bob/willie IQ captures");
  trial->add_option("--secret-out", secret_out, "Write the trial's secret to this path");

  auto* analyze = app.add_subcommand("analyze", "Re-aggregate a results CSV");
  std::string results_path, out_dir, ci_method = "wilson";
  analyze->add_option("--results", results_path, "results.csv from a previous run")
      ->required();
  analyze->add_option("--out-dir", out_dir, "Where to write plot CSVs (optional)");
  analyze->add_option("--ci", ci_method, "wilson|normal")
      ->check(CLI::IsMember({"wilson", "normal"}));

  auto* bound = app.add_subcommand("bound", "Covertness assessment for given parameters");
  double snr_db = std::numeric_limits<double>::quiet_NaN();
  double snr_linear = std::numeric_limits<double>::quiet_NaN();
  double delta = 0.05, alpha_flag = -1.0;
  std::size_t n_p = 10000;
  bound->add_option("--snr-db", snr_db, "Warden SNR in dB");
  bound->add_option("--snr", snr_linear, "Warden SNR, linear");
  bound->add_option("--delta", delta, "Covertness parameter in (0, 1/2)");
  bound->add_option("--n-p", n_p, "Pulse slots per segment");
  bound->add_option("--alpha", alpha_flag, "Use this alpha instead of the budget formula");

  CLI11_PARSE(app, argc, argv);

  try {
    if (calibrate->parsed()) return cmd_calibrate(cal_cli);
    if (run->parsed()) return cmd_run(run_cli);
    if (trial->parsed())
      return cmd_trial(trial_cli, duration_index, trial_index, dump_iq, secret_out);
    if (analyze->parsed()) return cmd_analyze(results_path, out_dir, ci_method);
    if (bound->parsed()) return cmd_bound(snr_db, snr_linear, delta, n_p, alpha_flag);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
