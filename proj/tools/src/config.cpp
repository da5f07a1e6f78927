// Copyright 2026 The acmag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "acmag_cli/cli.hpp"

namespace acmag::cli {

namespace {

constexpr double kMHz = kTwoPi;  // MHz -> rad/us

// Typed access to one JSON object; remembers which keys were read so the
// rest can be reported as unknown.
class Reader {
 public:
  Reader(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail("", "must be an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  double number(const std::string& key, double fallback) {
    return has(key) ? required_number(key) : mark(key, fallback);
  }

  double required_number(const std::string& key) {
    const Json& v = at(key);
    if (!v.is_number()) fail(key, "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(key, "must be finite");
    return d;
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    if (!has(key)) return mark(key, fallback);
    const Json& v = at(key);
    if (!v.is_number_integer()) fail(key, "must be an integer");
    return v.get<std::int64_t>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return mark(key, fallback);
    const Json& v = at(key);
    if (!v.is_number_unsigned()) fail(key, "must be a non-negative integer");
    return v.get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return mark(key, fallback);
    const Json& v = at(key);
    if (!v.is_boolean()) fail(key, "must be true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return mark(key, fallback);
    const Json& v = at(key);
    if (!v.is_string()) fail(key, "must be a string");
    return v.get<std::string>();
  }

  std::vector<int> int_list(const std::string& key, std::vector<int> fallback) {
    if (!has(key)) return mark(key, std::move(fallback));
    const Json& v = at(key);
    if (!v.is_array()) fail(key, "must be a list of integers");
    std::vector<int> out;
    for (const Json& e : v) {
      if (!e.is_number_integer()) fail(key, "must be a list of integers");
      const auto n = e.get<std::int64_t>();
      if (n < 1 || n > 1'000'000) fail(key, "entries must lie in [1, 1000000]");
      out.push_back(static_cast<int>(n));
    }
    return out;
  }

  Reader section(const std::string& key) {
    static const Json empty = Json::object();
    if (!has(key)) {
      seen_.insert(key);
      return Reader(empty, join(key));
    }
    return Reader(at(key), join(key));
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      (void)value;
      if (!seen_.count(key)) fail(key, "unknown key");
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const std::string name = key.empty() ? path_ : join(key);
    throw ConfigError((name.empty() ? std::string("config") : name) + ": " + what);
  }

 private:
  const Json& at(const std::string& key) {
    if (!has(key)) fail(key, "required");
    seen_.insert(key);
    return obj_.at(key);
  }

  template <typename T>
  T mark(const std::string& key, T value) {
    seen_.insert(key);
    return value;
  }

  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const Json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename Fn>
void check(const std::string& where, Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

void require(bool ok, const std::string& where, const std::string& what) {
  if (!ok) throw ConfigError(where + ": " + what);
}

}  // namespace

Command parse_command(const std::string& name) {
  static const std::pair<const char*, Command> table[] = {
      {"qfim-scan", Command::qfim_scan},       {"convergence", Command::convergence},
      {"bounds", Command::bounds},             {"probe-search", Command::probe_search},
      {"nv-sweep", Command::nv_sweep},         {"nv-scaling", Command::nv_scaling},
      {"adaptive", Command::adaptive}};
  for (const auto& [n, c] : table) {
    if (name == n) return c;
  }
  throw ConfigError("unknown command '" + name + "'");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::qfim_scan: return "qfim-scan";
    case Command::convergence: return "convergence";
    case Command::bounds: return "bounds";
    case Command::probe_search: return "probe-search";
    case Command::nv_sweep: return "nv-sweep";
    case Command::nv_scaling: return "nv-scaling";
    case Command::adaptive: return "adaptive";
  }
  return "unknown";
}

RunConfig parse_config(const Json& doc, Command command) {
  RunConfig cfg;
  cfg.command = command;
  cfg.echo = doc;
  Reader top(doc, "");

  {
    Reader f = top.section("field");
    if (!doc.contains("field")) f.fail("", "required");
    FieldParams& p = cfg.field;
    p.B = f.required_number("B_gauss");
    p.omega = kMHz * f.required_number("omega_mhz");
    p.phi = f.number("phi_rad", 0.0);
    p.B_c = f.number("B_c_gauss", p.B);
    p.omega_c = kMHz * f.number("omega_c_mhz", p.omega / kMHz);
    p.phi_c = f.number("phi_c_rad", p.phi);
    p.gamma = kMHz * f.number("gamma_mhz_per_gauss", 1.0 / kMHz);
    f.finish();
    check("field", [&] { p.validate(); });
  }
  {
    Reader t = top.section("time");
    cfg.T = t.number("T_us", 1.0);
    t.finish();
    require(cfg.T > 0.0, "time.T_us", "must be > 0");
  }
  {
    Reader s = top.section("scan");
    cfg.scan.omega_T_min = s.number("omega_T_min", cfg.scan.omega_T_min);
    cfg.scan.omega_T_max = s.number("omega_T_max", cfg.scan.omega_T_max);
    cfg.scan.points = static_cast<int>(s.integer("points", cfg.scan.points));
    s.finish();
    require(cfg.scan.omega_T_min > 0.0, "scan.omega_T_min", "must be > 0");
    require(cfg.scan.omega_T_max > cfg.scan.omega_T_min, "scan.omega_T_max",
            "must exceed scan.omega_T_min");
    require(cfg.scan.points >= 2 && cfg.scan.points <= 1'000'000, "scan.points",
            "must lie in [2, 1000000]");
    if (command == Command::convergence) {
      require(cfg.scan.omega_T_min > 2.0 * std::numbers::pi, "scan.omega_T_min",
              "must exceed 2 pi for convergence");
    }
  }
  {
    Reader n = top.section("nv");
    NvParams& nv = cfg.nv;
    nv.D = kMHz * n.number("D_mhz", nv.D / kMHz);
    nv.Q = kMHz * n.number("Q_mhz", nv.Q / kMHz);
    nv.A = kMHz * n.number("A_mhz", nv.A / kMHz);
    nv.gamma_e = kMHz * n.number("gamma_e_mhz_per_gauss", nv.gamma_e / kMHz);
    nv.gamma_n = kMHz * n.number("gamma_n_mhz_per_gauss", nv.gamma_n / kMHz);
    nv.B_z0 = n.number("B_z0_gauss", nv.B_z0);
    n.finish();
    check("nv", [&] { nv.validate(); });
  }
  {
    Reader s = top.section("sequence");
    SequenceConfig& q = cfg.sequence;
    q.N = static_cast<int>(s.integer("N", q.N));
    q.tau = s.number("tau_us", q.tau);
    const std::string pulse = s.text("pulse", "ideal");
    const double rabi = kMHz * s.number("rabi_mhz", q.pulse.rabi_freq / kMHz);
    const bool hyperfine = s.boolean("hyperfine_on", true);
    const std::string clock = s.text("clock", "contiguous");
    s.finish();
    require(q.N >= 1 && q.N <= 100000, "sequence.N", "must lie in [1, 100000]");
    require(q.tau > 0.0, "sequence.tau_us", "must be > 0");
    if (pulse == "ideal") {
      q.pulse = PiPulseModel::ideal();
    } else if (pulse == "finite") {
      q.pulse = PiPulseModel::finite(rabi, hyperfine);
    } else {
      throw ConfigError("sequence.pulse: must be \"ideal\" or \"finite\"");
    }
    check("sequence.rabi_mhz", [&] { q.pulse.validate(); });
    if (clock == "contiguous") {
      q.clock = TargetClock::contiguous;
    } else if (clock == "interleaved") {
      q.clock = TargetClock::interleaved;
    } else {
      throw ConfigError("sequence.clock: must be \"contiguous\" or \"interleaved\"");
    }
  }
  {
    Reader r = top.section("readout");
    ReadoutModel& m = cfg.readout;
    m.n_avg = r.number("n_avg", m.n_avg);
    require(m.n_avg > 0.0, "readout.n_avg", "must be > 0");
    m.sigma = r.number("sigma", shot_noise_sigma(m.n_avg));
    m.spam_contrast = r.number("spam_contrast", m.spam_contrast);
    m.spam_baseline = r.number("spam_baseline", m.spam_baseline);
    const std::int64_t signals = r.integer("signals", 2);
    r.finish();
    require(signals == 2 || signals == 3, "readout.signals", "must be 2 or 3");
    m.signals_used = signals == 2 ? SignalSet::two : SignalSet::three;
    check("readout", [&] { m.validate(); });
  }
  {
    Reader s = top.section("sweep");
    cfg.sweep.half_width_b = s.number("B_half_width_gauss", cfg.sweep.half_width_b);
    cfg.sweep.half_width_omega =
        kMHz * s.number("omega_half_width_mhz", cfg.sweep.half_width_omega / kMHz);
    cfg.sweep.points = static_cast<int>(s.integer("points", cfg.sweep.points));
    cfg.sweep.noise = s.boolean("noise", cfg.sweep.noise);
    s.finish();
    require(cfg.sweep.half_width_b > 0.0, "sweep.B_half_width_gauss", "must be > 0");
    require(cfg.sweep.half_width_omega > 0.0, "sweep.omega_half_width_mhz", "must be > 0");
    require(cfg.sweep.points >= 3 && cfg.sweep.points <= 10001, "sweep.points",
            "must lie in [3, 10001]");
  }
  {
    Reader s = top.section("scaling");
    cfg.scaling_n = s.int_list("N_values", cfg.scaling_n);
    cfg.scaling_noise = s.boolean("noise", cfg.scaling_noise);
    s.finish();
    require(cfg.scaling_n.size() >= 3, "scaling.N_values", "needs at least 3 entries");
  }
  {
    Reader a = top.section("adaptive");
    AdaptiveSettings& s = cfg.adaptive;
    s.rounds = static_cast<int>(a.integer("rounds", s.rounds));
    s.B_guess = a.number("B_guess_gauss", cfg.field.B_c);
    s.omega_guess = kMHz * a.number("omega_guess_mhz", cfg.field.omega_c / kMHz);
    s.window_b = a.number("window_B_gauss", s.window_b);
    s.window_omega = kMHz * a.number("window_omega_mhz", s.window_omega / kMHz);
    s.noise = a.boolean("noise", s.noise);
    a.finish();
    require(s.rounds >= 0 && s.rounds <= 10000, "adaptive.rounds", "must lie in [0, 10000]");
    require(s.B_guess >= 0.0, "adaptive.B_guess_gauss", "must be >= 0");
    require(s.omega_guess > 0.0, "adaptive.omega_guess_mhz", "must be > 0");
    require(s.window_b > 0.0, "adaptive.window_B_gauss", "must be > 0");
    require(s.window_omega > 0.0, "adaptive.window_omega_mhz", "must be > 0");
  }
  {
    Reader p = top.section("probe_search");
    const std::int64_t samples = p.integer("samples", 1000);
    const std::int64_t threads = p.integer("threads", 0);
    const std::string gens = p.text("generators", "asymptotic");
    p.finish();
    require(samples >= 1 && samples <= 100'000'000, "probe_search.samples",
            "must lie in [1, 100000000]");
    require(threads >= 0 && threads <= 1024, "probe_search.threads", "must lie in [0, 1024]");
    cfg.probe.samples = static_cast<std::size_t>(samples);
    cfg.probe.threads = static_cast<unsigned>(threads);
    if (gens == "asymptotic") {
      cfg.probe.generators = GeneratorMode::asymptotic;
    } else if (gens == "exact") {
      cfg.probe.generators = GeneratorMode::exact;
    } else {
      throw ConfigError("probe_search.generators: must be \"asymptotic\" or \"exact\"");
    }
  }
  cfg.seed = top.unsigned_integer("seed", cfg.seed);
  cfg.output_dir = top.text("output_dir", cfg.output_dir);
  require(!cfg.output_dir.empty(), "output_dir", "must not be empty");
  top.finish();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, Command command,
                      std::optional<std::uint64_t> seed, std::optional<std::string> out) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: must be an object");
  if (seed) doc["seed"] = *seed;
  if (out) doc["output_dir"] = *out;
  return parse_config(doc, command);
}

}  // namespace acmag::cli
