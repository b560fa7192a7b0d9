#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covert/analysis.hpp"
#include "covert/channel.hpp"
#include "covert/config.hpp"
#include "covert/dsp.hpp"
#include "covert/protocol.hpp"
#include "covert/willie.hpp"

namespace covert {

// Everything derived from an ExperimentConfig that trials share: the pulse,
// the shaped preamble, and the resolved channel parameters.
struct HarnessContext {
  ExperimentConfig cfg;
  PulseShape pulse;
  PreambleSpec preamble_spec;
  std::vector<double> preamble_wave;
  std::size_t preamble_len = 0;
  double preamble_amplitude = 0.0;
  ChannelParams bob;     // seed filled per use
  ChannelParams willie;
};

HarnessContext make_context(const ExperimentConfig& cfg);

struct TrialRecord {
  std::size_t trial_id = 0;
  std::size_t duration_index = 0;
  std::size_t trial_index = 0;
  double duration_s = 0.0;
  std::size_t n = 0;    // channel uses per segment
  std::size_t n_p = 0;  // pulse slots per segment
  double alpha_n = 0.0;
  bool alpha_clipped = false;
  std::size_t n_t = 0;
  std::uint64_t trial_seed = 0;

  // Bob
  std::size_t preamble_offset = 0;
  double preamble_score = 0.0;
  double theta_hat = 0.0;
  std::size_t bit_errors = 0;
  std::size_t data_bits = 0;  // n_t minus the pilot
  double p_e_bsc = 0.0;
  double c_bsc = 0.0;
  double b_bsc = 0.0;
  bool degenerate_inversion = false;

  // Willie
  double h_sq_hat = 0.0;
  double sigma_sq_hat = 0.0;
  double snr_hat_db = 0.0;
  double llr_on = 0.0;
  double llr_off = 0.0;
  bool detect_on = false;   // H1 declared on the Alice-on segment
  bool detect_off = false;  // H1 declared on the Alice-off segment

  // Covertness bound evaluated at this trial's SNR estimate
  double d_taylor = 0.0;
  double d_quadrature = 0.0;
  double pe_lower_taylor = 0.0;
  double pe_lower_quadrature = 0.0;

  bool aborted = false;
  std::string abort_reason;
};

struct CellSummary {
  std::size_t duration_index = 0;
  double duration_s = 0.0;
  std::size_t n = 0;
  std::size_t n_p = 0;
  double alpha_n = 0.0;
  std::size_t trials = 0;
  std::size_t aborted = 0;
  double mean_n_t = 0.0;

  std::size_t total_data_bits = 0;
  std::size_t total_bit_errors = 0;
  double p_e = 0.0;  // pooled over the cell's data bits
  Interval p_e_ci;
  double c_bsc = 0.0;
  double b_bsc = 0.0;  // mean_n_t * c_bsc
  Interval b_ci;

  std::size_t willie_errors = 0;
  std::size_t willie_decisions = 0;
  double willie_p_e = 0.0;
  Interval willie_ci;

  MeanCi snr_db;            // per-trial warden SNR estimates
  MeanCi pe_bound_taylor;   // per-trial Pinsker bounds (Taylor route)
  MeanCi pe_bound_quad;     // per-trial Pinsker bounds (quadrature route)

  CovertnessAssessment assessment;  // at the calibration SNR
};

struct ExperimentSummary {
  SnrEstimate calibration;
  double calibration_snr_db = 0.0;
  std::vector<TrialRecord> records;
  std::vector<CellSummary> cells;
  PowerLawFit fit;
  bool fit_valid = false;
};

// Calibration transmission: every fifth pulse slot carries a known random
// bit, no Alice-off segment; the warden-side SNR estimate seeds the
// covertness budget for the whole experiment.
SnrEstimate run_calibration(const HarnessContext& ctx);

TrialRecord run_trial(const HarnessContext& ctx, std::size_t duration_index,
                      std::size_t trial_index, double calibrated_snr);

// Calibration plus every (duration x trial) cell on a worker pool, followed
// by aggregation, the square-root-law fit, and file emission into
// cfg.output.dir.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

// Aggregation alone (also used by `analyze` to re-process a results CSV).
std::vector<CellSummary> aggregate_cells(const std::vector<TrialRecord>& records,
                                         CiMethod ci_method, double calibrated_snr);
PowerLawFit fit_cells(const std::vector<CellSummary>& cells, bool& valid);

void write_results_csv(const std::string& path, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_results_csv(const std::string& path);
void write_bob_plot_csv(const std::string& path, const std::vector<CellSummary>& cells);
void write_willie_plot_csv(const std::string& path, const std::vector<CellSummary>& cells);
void write_summary_text(const std::string& path, const ExperimentSummary& summary);
void write_calibration_text(const std::string& path, const SnrEstimate& est);

// Floating-point CSV convention: 9 significant digits.
std::string fmt_g9(double v);

}  // namespace covert
