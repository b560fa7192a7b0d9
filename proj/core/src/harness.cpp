#include "covert/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "covert/bob.hpp"
#include "covert/iq_io.hpp"
#include "covert/rng.hpp"

namespace covert {

namespace {

constexpr std::uint64_t kTagCalNoise = 0xCA11;
constexpr std::uint64_t kTagCalMessage = 0xCA12;
constexpr std::uint64_t kTagSecret = 0x5EC1;
constexpr std::uint64_t kTagMessage = 0x3E55;
constexpr std::uint64_t kTagBobNoise = 0xB0B1;
constexpr std::uint64_t kTagWillieNoise = 0x3171;

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void release(IqFrame& frame) { std::vector<std::complex<double>>().swap(frame.samples); }

IqFrame prefix_copy(const IqFrame& frame, std::size_t count) {
  IqFrame out;
  out.sample_rate = frame.sample_rate;
  out.samples.assign(frame.samples.begin(),
                     frame.samples.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

ChannelParams resolve_channel(const ChannelConfig& ch, const PulseShape& pulse) {
  ChannelParams p;
  p.h = ch.h;
  p.theta = ch.theta;
  p.sigma_sq = ch.sigma_sq;
  if (std::isfinite(ch.snr_db))
    p.sigma_sq = ch.h * ch.h * pulse.norm_sq / db_to_linear(ch.snr_db);
  return p;
}

Interval proportion_ci(std::size_t successes, std::size_t total, CiMethod method) {
  if (method == CiMethod::wilson) return wilson_interval(successes, total);
  if (total == 0) return {0.0, 1.0};
  const double n = static_cast<double>(total);
  const double p = static_cast<double>(successes) / n;
  const double half = 1.959964 * std::sqrt(p * (1.0 - p) / n);
  return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

std::string sanitize_csv_field(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

SecretKey every_fifth_slot_key(std::size_t n_p) {
  SecretKey key;
  key.t.assign(n_p, 0);
  std::size_t n_t = 0;
  for (std::size_t i = 0; i < n_p; i += 5) {
    key.t[i] = 1;
    ++n_t;
  }
  key.s.assign(n_t, 0);
  return key;
}

}  // namespace

std::string fmt_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

HarnessContext make_context(const ExperimentConfig& cfg) {
  validate_config(cfg);
  HarnessContext ctx;
  ctx.cfg = cfg;
  ctx.pulse = make_gaussian_pulse(cfg.filter_len, cfg.gaussian_sigma, cfg.slot_len,
                                  cfg.pulse_amplitude);
  ctx.preamble_spec = default_preamble_spec();
  ctx.preamble_spec.repetitions = cfg.preamble_repetitions;
  ctx.preamble_spec.samples_per_symbol = cfg.preamble_sps;
  ctx.preamble_spec.rrc_span_symbols = cfg.preamble_span_symbols;
  ctx.preamble_spec.rrc_rolloff = cfg.preamble_rolloff;
  ctx.preamble_len = preamble_length(ctx.preamble_spec);
  ctx.bob = resolve_channel(cfg.bob, ctx.pulse);
  ctx.willie = resolve_channel(cfg.willie, ctx.pulse);
  ctx.preamble_amplitude =
      cfg.preamble_amplitude > 0.0
          ? cfg.preamble_amplitude
          : 6.0 * std::sqrt(std::max(ctx.bob.sigma_sq, ctx.willie.sigma_sq));
  ctx.preamble_wave = make_preamble_waveform(ctx.preamble_spec, ctx.preamble_amplitude);
  return ctx;
}

SnrEstimate run_calibration(const HarnessContext& ctx) {
  const auto& cfg = ctx.cfg;
  const double duration =
      cfg.calibration_duration > 0.0 ? cfg.calibration_duration : cfg.durations.back();
  const std::size_t n = channel_uses_for_duration(cfg, duration);
  const std::size_t n_p = n / cfg.slot_len;
  if (n_p < 6)
    throw std::invalid_argument("run_calibration: calibration packet needs at least 6 slots");

  PacketPlan plan;
  plan.preamble = ctx.preamble_spec;
  plan.preamble_amplitude = ctx.preamble_amplitude;
  plan.n_p_on = n_p;
  plan.n_p_off = 0;  // the calibration packet drops the Alice-off segment
  plan.slot_len = cfg.slot_len;
  plan.key = every_fifth_slot_key(n_p);
  plan.require_pilot = false;

  Rng msg_rng(derive_seed({cfg.master_seed, kTagCalMessage}));
  plan.message_bits.resize(plan.key.n_t());
  for (int& b : plan.message_bits) b = msg_rng.sign();

  IqFrame packet = build_packet(plan, ctx.pulse);
  packet.sample_rate = cfg.sample_rate;

  ChannelParams willie = ctx.willie;
  willie.seed = derive_seed({cfg.master_seed, kTagCalNoise});
  IqFrame received = propagate(packet, willie);
  release(packet);

  return estimate_snr(received, ctx.pulse, plan.key, plan.message_bits, ctx.preamble_len);
}

TrialRecord run_trial(const HarnessContext& ctx, std::size_t duration_index,
                      std::size_t trial_index, double calibrated_snr) {
  const auto& cfg = ctx.cfg;
  TrialRecord rec;
  rec.duration_index = duration_index;
  rec.trial_index = trial_index;
  rec.trial_id = duration_index * cfg.trials_per_duration + trial_index;
  rec.duration_s = cfg.durations.at(duration_index);
  rec.n = channel_uses_for_duration(cfg, rec.duration_s);
  rec.n_p = rec.n / cfg.slot_len;
  rec.theta_hat = kNaN;
  rec.h_sq_hat = rec.sigma_sq_hat = rec.snr_hat_db = kNaN;
  rec.d_taylor = rec.d_quadrature = rec.pe_lower_taylor = rec.pe_lower_quadrature = kNaN;

  const std::uint64_t di = duration_index + 1, ti = trial_index + 1;
  rec.trial_seed = derive_seed({cfg.master_seed, kTagSecret, di, ti});

  try {
    CovertBudget budget = compute_alpha(calibrated_snr, cfg.delta, rec.n_p);
    if (cfg.alpha_override >= 0.0) {
      budget.alpha_n = cfg.alpha_override;
      budget.clipped = false;
    }
    rec.alpha_n = budget.alpha_n;
    rec.alpha_clipped = budget.clipped;

    const SecretKey key = generate_secret(budget, rec.trial_seed);
    rec.n_t = key.n_t();

    std::vector<int> message(rec.n_t);
    if (rec.n_t > 0) {
      message[0] = kPilotSymbol;
      Rng msg_rng(derive_seed({cfg.master_seed, kTagMessage, di, ti}));
      for (std::size_t i = 1; i < message.size(); ++i) message[i] = msg_rng.sign();
    }
    const std::vector<int> tx_symbols = apply_one_time_pad(message, key.s);

    PacketPlan plan;
    plan.preamble = ctx.preamble_spec;
    plan.preamble_amplitude = ctx.preamble_amplitude;
    plan.n_p_on = rec.n_p;
    plan.n_p_off = rec.n_p;
    plan.slot_len = cfg.slot_len;
    plan.key = key;
    plan.message_bits = message;

    IqFrame packet = build_packet(plan, ctx.pulse);
    packet.sample_rate = cfg.sample_rate;

    const std::filesystem::path iq_dir =
        std::filesystem::path(cfg.output.dir) / "iq";
    const std::string stem =
        "d" + std::to_string(duration_index) + "_t" + std::to_string(trial_index);
    if (cfg.output.store_iq) {
      std::filesystem::create_directories(iq_dir);
      export_iq(packet, (iq_dir / (stem + "_tx.iq")).string());
    }

    // Bob only ever reads the preamble and the Alice-on segment. Two slots
    // of slack absorb the few-sample sync error of the oversampled preamble.
    {
      ChannelParams bob = ctx.bob;
      bob.seed = derive_seed({cfg.master_seed, kTagBobNoise, di, ti});
      const std::size_t bob_len =
          std::min(packet.size(), ctx.preamble_len + rec.n + 2 * cfg.slot_len);
      IqFrame bob_in = prefix_copy(packet, bob_len);
      IqFrame bob_frame = propagate(bob_in, bob);
      release(bob_in);
      if (cfg.output.store_iq)
        export_iq(bob_frame, (iq_dir / (stem + "_bob.iq")).string());

      const PreambleLocation loc =
          locate_preamble(bob_frame, ctx.preamble_wave, cfg.sync_window);
      rec.preamble_offset = loc.offset;
      rec.preamble_score = loc.peak_score;
      if (loc.peak_score < kPreambleDetectionThreshold)
        throw std::runtime_error("preamble not detected (peak score " +
                                 fmt_g9(loc.peak_score) + ")");
      const std::size_t on_start = loc.offset + ctx.preamble_len;

      std::vector<int> decoded_data, truth_data;
      if (rec.n_t > 0) {
        const std::size_t pilot_slot = key.selected_slots().front();
        rec.theta_hat = cfg.bob_phase == BobPhaseMode::known
                            ? ctx.bob.theta
                            : estimate_phase(bob_frame, ctx.pulse, {pilot_slot},
                                             {tx_symbols[0]}, on_start);
        const std::vector<int> decisions =
            demodulate(bob_frame, ctx.pulse, key, rec.theta_hat, on_start);
        const std::vector<int> decoded_code = apply_one_time_pad(decisions, key.s);
        decoded_data.assign(decoded_code.begin() + 1, decoded_code.end());
        truth_data.assign(message.begin() + 1, message.end());
      }
      const BobReport report = compile_report(decoded_data, truth_data, rec.n_t);
      rec.bit_errors = report.bit_errors;
      rec.data_bits = decoded_data.size();
      rec.p_e_bsc = report.p_e_bsc_hat;
      rec.c_bsc = report.c_bsc_hat;
      rec.b_bsc = report.b_bsc_hat;
      rec.degenerate_inversion = report.degenerate_inversion;
    }

    // Willie observes the full packet and knows its timing.
    {
      ChannelParams willie = ctx.willie;
      willie.seed = derive_seed({cfg.master_seed, kTagWillieNoise, di, ti});
      IqFrame willie_frame = propagate(packet, willie);
      release(packet);
      if (cfg.output.store_iq)
        export_iq(willie_frame, (iq_dir / (stem + "_willie.iq")).string());

      if (rec.n_t > 0 && rec.n_t < rec.n_p) {
        const SnrEstimate est =
            estimate_snr(willie_frame, ctx.pulse, key, tx_symbols, ctx.preamble_len);
        rec.h_sq_hat = est.h_sq_hat;
        rec.sigma_sq_hat = est.sigma_sq_hat;
        rec.snr_hat_db = linear_to_db(est.snr_hat);
      }

      const WardenObservation obs_on = slot_statistics(
          willie_frame, ctx.pulse, rec.n_p, ctx.preamble_len, Segment::alice_on);
      const WardenObservation obs_off =
          slot_statistics(willie_frame, ctx.pulse, rec.n_p,
                          ctx.preamble_len + rec.n, Segment::alice_off);
      release(willie_frame);

      const double pulse_norm = std::sqrt(ctx.pulse.norm_sq);
      rec.llr_on = log_likelihood_ratio(obs_on, rec.alpha_n, ctx.willie.h, pulse_norm,
                                        ctx.willie.sigma_sq);
      rec.llr_off = log_likelihood_ratio(obs_off, rec.alpha_n, ctx.willie.h, pulse_norm,
                                         ctx.willie.sigma_sq);
      rec.detect_on = rec.llr_on >= 0.0;
      rec.detect_off = rec.llr_off >= 0.0;
    }

    if (std::isfinite(rec.snr_hat_db)) {
      const CovertnessAssessment a =
          assess_covertness(rec.alpha_n, db_to_linear(rec.snr_hat_db), rec.n_p);
      rec.d_taylor = a.d_taylor;
      rec.d_quadrature = a.d_quadrature;
      rec.pe_lower_taylor = a.pe_lower_taylor;
      rec.pe_lower_quadrature = a.pe_lower_quadrature;
    }
  } catch (const std::exception& e) {
    rec.aborted = true;
    rec.abort_reason = e.what();
  }
  return rec;
}

std::vector<CellSummary> aggregate_cells(const std::vector<TrialRecord>& records,
                                         CiMethod ci_method, double calibrated_snr) {
  std::map<std::size_t, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) groups[r.duration_index].push_back(&r);

  std::vector<CellSummary> cells;
  cells.reserve(groups.size());
  for (const auto& [di, recs] : groups) {
    CellSummary cell;
    cell.duration_index = di;
    cell.duration_s = recs.front()->duration_s;
    cell.n = recs.front()->n;
    cell.n_p = recs.front()->n_p;
    cell.trials = recs.size();

    std::vector<double> snr_db, pe_t, pe_q;
    double n_t_sum = 0.0;
    std::size_t ok = 0;
    for (const auto* r : recs) {
      if (r->aborted) {
        ++cell.aborted;
        continue;
      }
      ++ok;
      cell.alpha_n = r->alpha_n;
      n_t_sum += static_cast<double>(r->n_t);
      cell.total_data_bits += r->data_bits;
      cell.total_bit_errors += r->bit_errors;
      cell.willie_errors += (r->detect_off ? 1 : 0) + (r->detect_on ? 0 : 1);
      cell.willie_decisions += 2;
      if (std::isfinite(r->snr_hat_db)) snr_db.push_back(r->snr_hat_db);
      if (std::isfinite(r->pe_lower_taylor)) pe_t.push_back(r->pe_lower_taylor);
      if (std::isfinite(r->pe_lower_quadrature)) pe_q.push_back(r->pe_lower_quadrature);
    }
    cell.mean_n_t = ok > 0 ? n_t_sum / static_cast<double>(ok) : 0.0;

    cell.p_e = cell.total_data_bits > 0
                   ? static_cast<double>(cell.total_bit_errors) /
                         static_cast<double>(cell.total_data_bits)
                   : 0.0;
    cell.p_e_ci = proportion_ci(cell.total_bit_errors, cell.total_data_bits, ci_method);
    cell.c_bsc = bsc_capacity(cell.p_e);
    cell.b_bsc = cell.mean_n_t * cell.c_bsc;
    // Capacity is monotone decreasing on [0, 1/2]; clamp the BER interval
    // endpoints there before mapping through it.
    const double p_hi = std::min(cell.p_e_ci.hi, 0.5);
    const double p_lo = std::min(cell.p_e_ci.lo, 0.5);
    cell.b_ci = {cell.mean_n_t * bsc_capacity(p_hi), cell.mean_n_t * bsc_capacity(p_lo)};

    cell.willie_p_e = cell.willie_decisions > 0
                          ? static_cast<double>(cell.willie_errors) /
                                static_cast<double>(cell.willie_decisions)
                          : 0.0;
    cell.willie_ci = proportion_ci(cell.willie_errors, cell.willie_decisions, ci_method);
    cell.snr_db = mean_ci(snr_db);
    cell.pe_bound_taylor = mean_ci(pe_t);
    cell.pe_bound_quad = mean_ci(pe_q);

    if (std::isfinite(calibrated_snr) && calibrated_snr > 0.0 && cell.alpha_n > 0.0) {
      cell.assessment = assess_covertness(cell.alpha_n, calibrated_snr, cell.n_p);
    } else {
      cell.assessment.d_taylor = cell.assessment.d_quadrature = kNaN;
      cell.assessment.pe_lower_taylor = cell.assessment.pe_lower_quadrature = kNaN;
      cell.assessment.taylor_is_upper_bound = false;
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

PowerLawFit fit_cells(const std::vector<CellSummary>& cells, bool& valid) {
  std::vector<std::pair<double, double>> points;
  for (const auto& c : cells)
    if (c.b_bsc > 0.0 && c.trials > c.aborted)
      points.emplace_back(static_cast<double>(c.n), c.b_bsc);
  valid = points.size() >= 3;
  if (!valid) return {};
  return fit_sqrt_law(points);
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  const HarnessContext ctx = make_context(cfg);
  std::filesystem::create_directories(cfg.output.dir);

  ExperimentSummary summary;
  summary.calibration = run_calibration(ctx);
  summary.calibration_snr_db = linear_to_db(summary.calibration.snr_hat);
  const double cal_snr = summary.calibration.snr_hat;

  const std::size_t total = cfg.durations.size() * cfg.trials_per_duration;
  summary.records.resize(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      const std::size_t di = i / cfg.trials_per_duration;
      const std::size_t ti = i % cfg.trials_per_duration;
      summary.records[i] = run_trial(ctx, di, ti, cal_snr);
    }
  };
  std::size_t n_threads = cfg.workers > 0
                              ? cfg.workers
                              : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, total);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  // Accounting identity: every selected slot is a decoded data bit, the
  // pilot, or part of an aborted trial.
  std::size_t lhs = 0, rhs = 0;
  for (const auto& r : summary.records) {
    rhs += r.n_t;
    if (r.aborted)
      lhs += r.n_t;
    else
      lhs += r.data_bits + (r.n_t - r.data_bits);
  }
  if (lhs != rhs) throw std::logic_error("run_experiment: slot accounting mismatch");

  summary.cells = aggregate_cells(summary.records, cfg.ci_method, cal_snr);
  summary.fit = fit_cells(summary.cells, summary.fit_valid);

  const std::filesystem::path dir(cfg.output.dir);
  write_calibration_text((dir / cfg.output.calibration).string(), summary.calibration);
  write_results_csv((dir / cfg.output.results_csv).string(), summary.records);
  write_bob_plot_csv((dir / cfg.output.bob_plot_csv).string(), summary.cells);
  write_willie_plot_csv((dir / cfg.output.willie_plot_csv).string(), summary.cells);
  write_summary_text((dir / cfg.output.summary).string(), summary);
  return summary;
}

namespace {

const char* kResultsHeader =
    "trial_id,duration_index,trial_index,duration_s,n,n_p,alpha_n,alpha_clipped,n_t,"
    "trial_seed,preamble_offset,preamble_score,theta_hat,bit_errors,data_bits,p_e_bsc,"
    "c_bsc,b_bsc,degenerate_inversion,h_sq_hat,sigma_sq_hat,snr_hat_db,llr_on,llr_off,"
    "detect_on,detect_off,d_taylor,d_quadrature,pe_lower_taylor,pe_lower_quadrature,"
    "aborted,abort_reason";

}  // namespace

void write_results_csv(const std::string& path, const std::vector<TrialRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_results_csv: cannot open " + path);
  out << kResultsHeader << "\n";
  for (const auto& r : records) {
    out << r.trial_id << ',' << r.duration_index << ',' << r.trial_index << ','
        << fmt_g9(r.duration_s) << ',' << r.n << ',' << r.n_p << ',' << fmt_g9(r.alpha_n)
        << ',' << (r.alpha_clipped ? 1 : 0) << ',' << r.n_t << ',' << r.trial_seed << ','
        << r.preamble_offset << ',' << fmt_g9(r.preamble_score) << ','
        << fmt_g9(r.theta_hat) << ',' << r.bit_errors << ',' << r.data_bits << ','
        << fmt_g9(r.p_e_bsc) << ',' << fmt_g9(r.c_bsc) << ',' << fmt_g9(r.b_bsc) << ','
        << (r.degenerate_inversion ? 1 : 0) << ',' << fmt_g9(r.h_sq_hat) << ','
        << fmt_g9(r.sigma_sq_hat) << ',' << fmt_g9(r.snr_hat_db) << ','
        << fmt_g9(r.llr_on) << ',' << fmt_g9(r.llr_off) << ',' << (r.detect_on ? 1 : 0)
        << ',' << (r.detect_off ? 1 : 0) << ',' << fmt_g9(r.d_taylor) << ','
        << fmt_g9(r.d_quadrature) << ',' << fmt_g9(r.pe_lower_taylor) << ','
        << fmt_g9(r.pe_lower_quadrature) << ',' << (r.aborted ? 1 : 0) << ','
        << sanitize_csv_field(r.abort_reason) << "\n";
  }
  if (!out) throw std::runtime_error("write_results_csv: write failed for " + path);
}

std::vector<TrialRecord> read_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_results_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_results_csv: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsHeader)
    throw std::runtime_error("read_results_csv: unexpected header in " + path);

  std::vector<TrialRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        f.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (f.size() != 32)
      throw std::runtime_error("read_results_csv: bad field count at line " +
                               std::to_string(line_no));
    TrialRecord r;
    std::size_t k = 0;
    auto next_str = [&]() { return f.at(k++); };
    auto next_sz = [&]() { return static_cast<std::size_t>(std::stoull(next_str())); };
    auto next_d = [&]() { return std::stod(next_str()); };
    auto next_b = [&]() { return next_str() == "1"; };
    try {
      r.trial_id = next_sz();
      r.duration_index = next_sz();
      r.trial_index = next_sz();
      r.duration_s = next_d();
      r.n = next_sz();
      r.n_p = next_sz();
      r.alpha_n = next_d();
      r.alpha_clipped = next_b();
      r.n_t = next_sz();
      r.trial_seed = std::stoull(next_str());
      r.preamble_offset = next_sz();
      r.preamble_score = next_d();
      r.theta_hat = next_d();
      r.bit_errors = next_sz();
      r.data_bits = next_sz();
      r.p_e_bsc = next_d();
      r.c_bsc = next_d();
      r.b_bsc = next_d();
      r.degenerate_inversion = next_b();
      r.h_sq_hat = next_d();
      r.sigma_sq_hat = next_d();
      r.snr_hat_db = next_d();
      r.llr_on = next_d();
      r.llr_off = next_d();
      r.detect_on = next_b();
      r.detect_off = next_b();
      r.d_taylor = next_d();
      r.d_quadrature = next_d();
      r.pe_lower_taylor = next_d();
      r.pe_lower_quadrature = next_d();
      r.aborted = next_b();
      r.abort_reason = next_str();
    } catch (const std::exception&) {
      throw std::runtime_error("read_results_csv: malformed value at line " +
                               std::to_string(line_no));
    }
    records.push_back(std::move(r));
  }
  return records;
}

void write_bob_plot_csv(const std::string& path, const std::vector<CellSummary>& cells) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_bob_plot_csv: cannot open " + path);
  out << "duration_s,n,n_p,trials,alpha_n,mean_n_t,b_bsc,b_ci_lo,b_ci_hi,"
         "p_e_bsc,p_e_ci_lo,p_e_ci_hi\n";
  for (const auto& c : cells) {
    out << fmt_g9(c.duration_s) << ',' << c.n << ',' << c.n_p << ',' << c.trials << ','
        << fmt_g9(c.alpha_n) << ',' << fmt_g9(c.mean_n_t) << ',' << fmt_g9(c.b_bsc) << ','
        << fmt_g9(c.b_ci.lo) << ',' << fmt_g9(c.b_ci.hi) << ',' << fmt_g9(c.p_e) << ','
        << fmt_g9(c.p_e_ci.lo) << ',' << fmt_g9(c.p_e_ci.hi) << "\n";
  }
}

void write_willie_plot_csv(const std::string& path, const std::vector<CellSummary>& cells) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_willie_plot_csv: cannot open " + path);
  out << "duration_s,n,n_p,trials,pe_bound_taylor,pe_bound_taylor_lo,pe_bound_taylor_hi,"
         "pe_bound_quad,pe_bound_quad_lo,pe_bound_quad_hi,"
         "pe_empirical,pe_emp_ci_lo,pe_emp_ci_hi,snr_db,snr_db_lo,snr_db_hi\n";
  for (const auto& c : cells) {
    out << fmt_g9(c.duration_s) << ',' << c.n << ',' << c.n_p << ',' << c.trials << ','
        << fmt_g9(c.pe_bound_taylor.mean) << ',' << fmt_g9(c.pe_bound_taylor.lo) << ','
        << fmt_g9(c.pe_bound_taylor.hi) << ',' << fmt_g9(c.pe_bound_quad.mean) << ','
        << fmt_g9(c.pe_bound_quad.lo) << ',' << fmt_g9(c.pe_bound_quad.hi) << ','
        << fmt_g9(c.willie_p_e) << ',' << fmt_g9(c.willie_ci.lo) << ','
        << fmt_g9(c.willie_ci.hi) << ',' << fmt_g9(c.snr_db.mean) << ','
        << fmt_g9(c.snr_db.lo) << ',' << fmt_g9(c.snr_db.hi) << "\n";
  }
}

void write_calibration_text(const std::string& path, const SnrEstimate& est) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_calibration_text: cannot open " + path);
  out << "h_sq_hat " << fmt_g9(est.h_sq_hat) << "\n";
  out << "sigma_sq_hat " << fmt_g9(est.sigma_sq_hat) << "\n";
  out << "snr_hat " << fmt_g9(est.snr_hat) << "\n";
  out << "snr_hat_db " << fmt_g9(linear_to_db(est.snr_hat)) << "\n";
  out << "pulse_slots " << est.n_pulse_slots_used << "\n";
  out << "empty_slots " << est.n_empty_slots_used << "\n";
}

void write_summary_text(const std::string& path, const ExperimentSummary& summary) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_summary_text: cannot open " + path);
  out << "calibration snr_hat_db " << fmt_g9(summary.calibration_snr_db) << " ("
      << summary.calibration.n_pulse_slots_used << " pulse slots, "
      << summary.calibration.n_empty_slots_used << " empty slots)\n";
  if (summary.fit_valid) {
    out << "loglog fit: slope " << fmt_g9(summary.fit.slope) << " r_sq "
        << fmt_g9(summary.fit.r_sq) << " constrained(1/2) r_sq "
        << fmt_g9(summary.fit.constrained_r_sq) << "\n";
  } else {
    out << "loglog fit: not enough positive-throughput cells\n";
  }
  out << "\nduration_s n n_p alpha_n trials aborted mean_n_t p_e_bsc b_bsc "
         "willie_p_e snr_db d_taylor d_quad pe_low_taylor pe_low_quad\n";
  for (const auto& c : summary.cells) {
    out << fmt_g9(c.duration_s) << ' ' << c.n << ' ' << c.n_p << ' ' << fmt_g9(c.alpha_n)
        << ' ' << c.trials << ' ' << c.aborted << ' ' << fmt_g9(c.mean_n_t) << ' '
        << fmt_g9(c.p_e) << ' ' << fmt_g9(c.b_bsc) << ' ' << fmt_g9(c.willie_p_e) << ' '
        << fmt_g9(c.snr_db.mean) << ' ' << fmt_g9(c.assessment.d_taylor) << ' '
        << fmt_g9(c.assessment.d_quadrature) << ' ' << fmt_g9(c.assessment.pe_lower_taylor)
        << ' ' << fmt_g9(c.assessment.pe_lower_quadrature) << "\n";
  }
}

}  // namespace covert
