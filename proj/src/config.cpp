#include "dwl/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dwl {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(unsigned(s[a]))) ++a;
  while (b > a && std::isspace(unsigned(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double parse_real(const std::string& key, const std::string& raw) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw BadValue(key, "expected a real number, got '" + raw + "'");
  }
}

}  // namespace

ExperimentKind experiment_from_name(const std::string& name) {
  if (name == "dini-check") return ExperimentKind::DiniCheck;
  if (name == "simulate") return ExperimentKind::Simulate;
  if (name == "decay-sweep") return ExperimentKind::DecaySweep;
  if (name == "profile-check") return ExperimentKind::ProfileCheck;
  if (name == "lifespan-sweep") return ExperimentKind::LifespanSweep;
  if (name == "picard-demo") return ExperimentKind::PicardDemo;
  throw BadValue("experiment", "unknown experiment kind: " + name);
}

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::DiniCheck: return "dini-check";
    case ExperimentKind::Simulate: return "simulate";
    case ExperimentKind::DecaySweep: return "decay-sweep";
    case ExperimentKind::ProfileCheck: return "profile-check";
    case ExperimentKind::LifespanSweep: return "lifespan-sweep";
    case ExperimentKind::PicardDemo: return "picard-demo";
  }
  return "?";
}

KeyValues KeyValues::parse_text(const std::string& text) {
  KeyValues out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw BadValue("line " + std::to_string(lineno),
                     "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw BadValue("line " + std::to_string(lineno), "empty key");
    }
    out.kv_[key] = val;
  }
  return out;
}

KeyValues KeyValues::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

bool KeyValues::has(const std::string& key) const {
  return kv_.count(key) != 0;
}

std::string KeyValues::get_string(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) throw MissingKey(key);
  used_.insert(key);
  return unquote(it->second);
}

std::string KeyValues::get_string(const std::string& key,
                                  const std::string& dflt) const {
  return has(key) ? get_string(key) : dflt;
}

double KeyValues::get_real(const std::string& key) const {
  return parse_real(key, get_string(key));
}

double KeyValues::get_real(const std::string& key, double dflt) const {
  return has(key) ? get_real(key) : dflt;
}

long KeyValues::get_int(const std::string& key) const {
  const double v = get_real(key);
  if (v != std::floor(v)) throw BadValue(key, "expected an integer");
  return long(v);
}

long KeyValues::get_int(const std::string& key, long dflt) const {
  return has(key) ? get_int(key) : dflt;
}

bool KeyValues::get_bool(const std::string& key, bool dflt) const {
  if (!has(key)) return dflt;
  const std::string v = get_string(key);
  if (v == "true" || v == "on" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "off" || v == "0" || v == "no") return false;
  throw BadValue(key, "expected a boolean, got '" + v + "'");
}

std::vector<double> KeyValues::get_list(const std::string& key) const {
  const std::string raw = get_string(key);
  std::vector<double> out;
  std::string item;
  std::istringstream in(raw);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_real(key, item));
  }
  if (out.empty()) throw BadValue(key, "expected a list of reals");
  return out;
}

std::vector<std::string> KeyValues::unused() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : kv_) {
    if (!used_.count(k)) out.push_back(k);
  }
  return out;
}

namespace {

DataComponent parse_component(const KeyValues& kv, const std::string& prefix,
                              double default_amplitude) {
  DataComponent c;
  const std::string fam = kv.get_string(prefix + ".family", "gaussian");
  if (fam == "gaussian") {
    c.family = DataComponent::Family::Gaussian;
  } else if (fam == "constant") {
    c.family = DataComponent::Family::Constant;
  } else {
    throw BadValue(prefix + ".family", "expected gaussian|constant");
  }
  c.amplitude = kv.get_real(prefix + ".amplitude", default_amplitude);
  c.width = kv.get_real(prefix + ".width", 1.0);
  if (!(c.width > 0.0)) throw BadValue(prefix + ".width", "must be positive");
  return c;
}

ModulusSpec parse_mu(const KeyValues& kv) {
  const std::string fam = kv.get_string("mu.family");
  const bool has_s0 = kv.has("mu.s0");
  const double s0 = kv.get_real("mu.s0", ModulusSpec::kDefaultCap);
  try {
    if (fam == "power") {
      return ModulusSpec::power(kv.get_real("mu.kappa"), s0);
    }
    if (fam == "logpower") {
      return ModulusSpec::logpower(kv.get_real("mu.gamma"), s0);
    }
    if (fam == "constant") {
      return ModulusSpec::constant(kv.get_real("mu.m"));
    }
    if (fam == "iterlog") {
      return ModulusSpec::iterlog(kv.get_real("mu.gamma"),
                                  has_s0 ? s0 : -1.0);
    }
  } catch (const InvalidArg& e) {
    throw BadValue("mu", e.what());
  }
  throw UnknownFamily(fam);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  const KeyValues kv = KeyValues::parse_text(text);
  ExperimentConfig cfg;

  cfg.dim = int(kv.get_int("grid.n"));
  if (cfg.dim < 1 || cfg.dim > 4) throw BadValue("grid.n", "must be 1..4");
  cfg.points_per_axis = int(kv.get_int("grid.N"));
  const int N = cfg.points_per_axis;
  if (N < 2 || (N & (N - 1)) != 0) {
    throw BadValue("grid.N", "must be a power of two >= 2");
  }
  if (std::pow(double(N), cfg.dim) > double(1 << 24)) {
    throw BadValue("grid.N", "total modes N^n exceed 2^24");
  }
  cfg.half_length = kv.get_real("grid.L");
  if (!(cfg.half_length >= 10.0 * Grid::kPi)) {
    throw BadValue("grid.L", "must be >= 10*pi so that pi/L <= 0.1");
  }

  SolverConfig& s = cfg.solver;
  s.dt = kv.get_real("solver.dt", 0.05);
  if (!(s.dt > 0.0) || s.dt > 0.1) {
    throw BadValue("solver.dt", "must lie in (0, 0.1]");
  }
  const std::string scheme = kv.get_string("solver.scheme", "etd2");
  if (scheme == "etd1") {
    s.scheme = Scheme::ETD1;
  } else if (scheme == "etd2") {
    s.scheme = Scheme::ETD2;
  } else {
    throw BadValue("solver.scheme", "expected etd1|etd2");
  }
  s.t_max = kv.get_real("solver.Tmax", 10.0);
  if (!(s.t_max > 0.0)) throw BadValue("solver.Tmax", "must be positive");
  s.blowup_threshold = kv.get_real("solver.blowup_threshold", 1e3);
  if (!(s.blowup_threshold > 0.0)) {
    throw BadValue("solver.blowup_threshold", "must be positive");
  }
  s.dealias = kv.get_bool("solver.dealias", false);
  s.linear_only = kv.get_bool("solver.linear_only", false);
  if (kv.has("solver.sample_times")) {
    s.sample_times = kv.get_list("solver.sample_times");
    if (!std::is_sorted(s.sample_times.begin(), s.sample_times.end())) {
      throw BadValue("solver.sample_times", "must be sorted ascending");
    }
    if (s.sample_times.front() < 0.0 ||
        s.sample_times.back() > s.t_max + 1e-9) {
      throw BadValue("solver.sample_times", "must lie within [0, Tmax]");
    }
  } else if (kv.has("solver.sample_count")) {
    const long count = kv.get_int("solver.sample_count");
    if (count < 2) throw BadValue("solver.sample_count", "must be >= 2");
    for (long i = 0; i <= count; ++i) {
      s.sample_times.push_back(s.t_max * double(i) / double(count));
    }
  }

  s.eps = kv.get_real("data.eps", 0.0);
  if (s.eps < 0.0) throw BadValue("data.eps", "must be >= 0");
  s.u0 = parse_component(kv, "data.u0", 1.0);
  s.u1 = parse_component(kv, "data.u1", 0.0);

  cfg.mu = parse_mu(kv);

  if (kv.has("sweep.eps")) {
    cfg.eps_list = kv.get_list("sweep.eps");
    for (double e : cfg.eps_list) {
      if (!(e > 0.0)) throw BadValue("sweep.eps", "entries must be positive");
    }
  }
  cfg.fit_window_lo = kv.get_real("fit.window_lo", -1.0);
  cfg.fit_window_hi = kv.get_real("fit.window_hi", -1.0);
  cfg.picard_iterations = int(kv.get_int("picard.iterations", 4));
  if (cfg.picard_iterations < 2) {
    throw BadValue("picard.iterations", "must be >= 2");
  }
  if (kv.has("functional.radii")) {
    cfg.functional_radii = kv.get_list("functional.radii");
    for (double r : cfg.functional_radii) {
      if (!(r >= 1.0)) throw BadValue("functional.radii", "radii must be >= 1");
    }
  }
  cfg.dump_fields = kv.get_bool("output.dump_fields", false);

  return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace dwl
