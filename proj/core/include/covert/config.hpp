#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace covert {

struct ChannelConfig {
  double h = 1.0;
  double theta = 0.0;
  double sigma_sq = 10.0;
  // When finite, overrides sigma_sq so the pulse arrives at this SNR.
  double snr_db = std::numeric_limits<double>::quiet_NaN();
};

struct OutputConfig {
  std::string dir = "covertsim_out";
  std::string results_csv = "results.csv";
  std::string bob_plot_csv = "plot_bob.csv";
  std::string willie_plot_csv = "plot_willie.csv";
  std::string summary = "summary.txt";
  std::string calibration = "calibration.txt";
  bool store_iq = false;
};

enum class BobPhaseMode { pilot, known };
enum class CiMethod { wilson, normal };

struct ExperimentConfig {
  // [experiment]
  std::vector<double> durations = {0.008, 0.0133, 0.0221, 0.0368, 0.0613,
                                   0.102, 0.170, 0.283, 0.471, 0.784};
  std::size_t trials_per_duration = 50;
  double delta = 0.05;
  std::uint64_t master_seed = 1;
  std::size_t workers = 0;          // 0 = hardware concurrency
  double alpha_override = -1.0;     // >= 0 replaces the computed budget
  BobPhaseMode bob_phase = BobPhaseMode::pilot;
  CiMethod ci_method = CiMethod::wilson;
  std::size_t sync_window = 8192;   // preamble search lags at the receiver
  double calibration_duration = 0.0;  // seconds; 0 = longest duration

  // [signal]
  double sample_rate = 12.5e6;
  std::size_t slot_len = 76;
  std::size_t filter_len = 37;
  double gaussian_sigma = 9.0;
  double pulse_amplitude = 1.0;

  // [preamble]
  std::size_t preamble_repetitions = 5;
  std::size_t preamble_sps = 76;
  std::size_t preamble_span_symbols = 12;
  double preamble_rolloff = 0.35;
  double preamble_amplitude = 0.0;  // 0 = auto: 6x the larger noise std

  ChannelConfig bob;
  ChannelConfig willie;
  OutputConfig output;

  ExperimentConfig() { willie.theta = 0.0; bob.theta = 0.3; }
};

// Parses the key/value configuration file (INI-style sections; '#' or ';'
// comments) on top of the defaults. Unknown keys are an error.
ExperimentConfig load_config_file(const std::string& path);

// Applies one "section.key=value" override (the CLI flag path).
void apply_config_override(ExperimentConfig& cfg, const std::string& dotted_key,
                           const std::string& value);

// Throws std::invalid_argument describing the first violated constraint.
void validate_config(const ExperimentConfig& cfg);

// n for a duration: duration * sample_rate floored to a slot multiple.
std::size_t channel_uses_for_duration(const ExperimentConfig& cfg, double duration_s);

// Geometrically spaced values, endpoints included.
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

}  // namespace covert
