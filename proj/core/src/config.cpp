#include "covert/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace covert {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (...) {
    throw std::invalid_argument("config: bad number for " + key + ": '" + v + "'");
  }
}

std::size_t parse_size(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long n = std::stoll(v, &pos);
    if (pos != v.size() || n < 0) throw std::invalid_argument("");
    return static_cast<std::size_t>(n);
  } catch (...) {
    throw std::invalid_argument("config: bad non-negative integer for " + key + ": '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long n = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return n;
  } catch (...) {
    throw std::invalid_argument("config: bad integer for " + key + ": '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config: bad boolean for " + key + ": '" + v + "'");
}

std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
  std::string s = v;
  for (auto& c : s)
    if (c == ',') c = ' ';
  std::istringstream iss(s);
  std::vector<double> out;
  double d;
  while (iss >> d) out.push_back(d);
  if (!iss.eof()) throw std::invalid_argument("config: bad list for " + key + ": '" + v + "'");
  return out;
}

void set_channel(ChannelConfig& ch, const std::string& key, const std::string& field,
                 const std::string& value) {
  if (field == "h")
    ch.h = parse_double(key, value);
  else if (field == "theta")
    ch.theta = parse_double(key, value);
  else if (field == "sigma_sq")
    ch.sigma_sq = parse_double(key, value);
  else if (field == "snr_db")
    ch.snr_db = parse_double(key, value);
  else
    throw std::invalid_argument("config: unknown key '" + key + "'");
}

}  // namespace

void apply_config_override(ExperimentConfig& cfg, const std::string& dotted_key,
                           const std::string& raw_value) {
  const std::string key = trim(dotted_key);
  const std::string value = trim(raw_value);
  const auto dot = key.find('.');
  if (dot == std::string::npos)
    throw std::invalid_argument("config: key '" + key + "' must be section.name");
  const std::string section = key.substr(0, dot);
  const std::string name = key.substr(dot + 1);

  if (section == "experiment") {
    if (name == "durations")
      cfg.durations = parse_double_list(key, value);
    else if (name == "trials_per_duration")
      cfg.trials_per_duration = parse_size(key, value);
    else if (name == "delta")
      cfg.delta = parse_double(key, value);
    else if (name == "master_seed")
      cfg.master_seed = parse_u64(key, value);
    else if (name == "workers")
      cfg.workers = parse_size(key, value);
    else if (name == "alpha_override")
      cfg.alpha_override = parse_double(key, value);
    else if (name == "bob_phase") {
      if (value == "pilot")
        cfg.bob_phase = BobPhaseMode::pilot;
      else if (value == "known")
        cfg.bob_phase = BobPhaseMode::known;
      else
        throw std::invalid_argument("config: bob_phase must be 'pilot' or 'known'");
    } else if (name == "ci_method") {
      if (value == "wilson")
        cfg.ci_method = CiMethod::wilson;
      else if (value == "normal")
        cfg.ci_method = CiMethod::normal;
      else
        throw std::invalid_argument("config: ci_method must be 'wilson' or 'normal'");
    } else if (name == "sync_window")
      cfg.sync_window = parse_size(key, value);
    else if (name == "calibration_duration")
      cfg.calibration_duration = parse_double(key, value);
    else
      throw std::invalid_argument("config: unknown key '" + key + "'");
  } else if (section == "signal") {
    if (name == "sample_rate")
      cfg.sample_rate = parse_double(key, value);
    else if (name == "slot_len")
      cfg.slot_len = parse_size(key, value);
    else if (name == "filter_len")
      cfg.filter_len = parse_size(key, value);
    else if (name == "gaussian_sigma")
      cfg.gaussian_sigma = parse_double(key, value);
    else if (name == "pulse_amplitude")
      cfg.pulse_amplitude = parse_double(key, value);
    else
      throw std::invalid_argument("config: unknown key '" + key + "'");
  } else if (section == "preamble") {
    if (name == "repetitions")
      cfg.preamble_repetitions = parse_size(key, value);
    else if (name == "samples_per_symbol")
      cfg.preamble_sps = parse_size(key, value);
    else if (name == "span_symbols")
      cfg.preamble_span_symbols = parse_size(key, value);
    else if (name == "rolloff")
      cfg.preamble_rolloff = parse_double(key, value);
    else if (name == "amplitude")
      cfg.preamble_amplitude = parse_double(key, value);
    else
      throw std::invalid_argument("config: unknown key '" + key + "'");
  } else if (section == "channel") {
    const auto dot2 = name.find('.');
    if (dot2 == std::string::npos)
      throw std::invalid_argument("config: channel keys look like channel.bob.h");
    const std::string who = name.substr(0, dot2);
    const std::string field = name.substr(dot2 + 1);
    if (who == "bob")
      set_channel(cfg.bob, key, field, value);
    else if (who == "willie")
      set_channel(cfg.willie, key, field, value);
    else
      throw std::invalid_argument("config: unknown channel '" + who + "'");
  } else if (section == "output") {
    if (name == "dir")
      cfg.output.dir = value;
    else if (name == "results_csv")
      cfg.output.results_csv = value;
    else if (name == "bob_plot_csv")
      cfg.output.bob_plot_csv = value;
    else if (name == "willie_plot_csv")
      cfg.output.willie_plot_csv = value;
    else if (name == "summary")
      cfg.output.summary = value;
    else if (name == "calibration")
      cfg.output.calibration = value;
    else if (name == "store_iq")
      cfg.output.store_iq = parse_bool(key, value);
    else
      throw std::invalid_argument("config: unknown key '" + key + "'");
  } else {
    throw std::invalid_argument("config: unknown section '" + section + "'");
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);

  ExperimentConfig cfg;
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config: malformed section at line " + std::to_string(line_no));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key = value at line " + std::to_string(line_no));
    const std::string name = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw std::runtime_error("config: key outside any section at line " + std::to_string(line_no));
    apply_config_override(cfg, section + "." + name, value);
  }
  return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.durations.empty()) throw std::invalid_argument("config: durations list is empty");
  for (double d : cfg.durations)
    if (!(d > 0.0)) throw std::invalid_argument("config: durations must be positive");
  for (std::size_t i = 1; i < cfg.durations.size(); ++i)
    if (!(cfg.durations[i] > cfg.durations[i - 1]))
      throw std::invalid_argument("config: durations must be strictly increasing");
  if (cfg.trials_per_duration == 0)
    throw std::invalid_argument("config: trials_per_duration must be positive");
  if (!(cfg.delta > 0.0 && cfg.delta < 0.5))
    throw std::invalid_argument("config: delta must lie in (0, 1/2)");
  if (!(cfg.sample_rate > 0.0)) throw std::invalid_argument("config: sample_rate must be positive");
  if (cfg.slot_len == 0 || cfg.filter_len == 0 || cfg.filter_len > cfg.slot_len)
    throw std::invalid_argument("config: need 0 < filter_len <= slot_len");
  if (!(cfg.gaussian_sigma > 0.0) || !(cfg.pulse_amplitude > 0.0))
    throw std::invalid_argument("config: gaussian_sigma and pulse_amplitude must be positive");
  if (cfg.preamble_repetitions == 0 || cfg.preamble_sps == 0 || cfg.preamble_span_symbols == 0)
    throw std::invalid_argument("config: preamble geometry must be positive");
  if (!(cfg.preamble_rolloff > 0.0 && cfg.preamble_rolloff <= 1.0))
    throw std::invalid_argument("config: preamble rolloff must lie in (0, 1]");
  if (cfg.preamble_amplitude < 0.0)
    throw std::invalid_argument("config: preamble amplitude must be >= 0 (0 = auto)");
  for (const auto* ch : {&cfg.bob, &cfg.willie}) {
    if (!(ch->h >= 0.0)) throw std::invalid_argument("config: path loss h must be >= 0");
    if (!std::isfinite(ch->snr_db) && !(ch->sigma_sq > 0.0))
      throw std::invalid_argument("config: sigma_sq must be positive (or set snr_db)");
  }
  if (cfg.alpha_override > 1.0)
    throw std::invalid_argument("config: alpha_override must be <= 1");
  if (cfg.calibration_duration < 0.0)
    throw std::invalid_argument("config: calibration_duration must be >= 0");
  const std::size_t smallest = channel_uses_for_duration(cfg, cfg.durations.front());
  if (smallest == 0)
    throw std::invalid_argument("config: shortest duration is less than one slot");
}

std::size_t channel_uses_for_duration(const ExperimentConfig& cfg, double duration_s) {
  const double raw = duration_s * cfg.sample_rate;
  const auto slots = static_cast<std::size_t>(raw / static_cast<double>(cfg.slot_len));
  return slots * cfg.slot_len;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw std::invalid_argument("log_spaced: need 0 < lo < hi and count >= 2");
  std::vector<double> out(count);
  const double ratio = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = lo * std::exp(ratio * static_cast<double>(i));
  out.back() = hi;
  return out;
}

}  // namespace covert
