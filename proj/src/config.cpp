#include "levygas/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "levygas/errors.hpp"

namespace levygas {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_doubles(const std::vector<double>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += fmt_double(vs[i]);
  }
  return out;
}

std::string fmt_ints(const std::vector<std::int64_t>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(vs[i]);
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw config_error(key + ": not a number: '" + v + "'");
  }
  if (pos != v.size()) throw config_error(key + ": trailing junk in '" + v + "'");
  return d;
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long long i;
  try {
    i = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw config_error(key + ": not an integer: '" + v + "'");
  }
  if (pos != v.size()) throw config_error(key + ": trailing junk in '" + v + "'");
  return i;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  unsigned long long i;
  try {
    i = std::stoull(v, &pos);
  } catch (const std::exception&) {
    throw config_error(key + ": not an unsigned integer: '" + v + "'");
  }
  if (pos != v.size()) throw config_error(key + ": trailing junk in '" + v + "'");
  return i;
}

std::vector<double> parse_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split_commas(v)) out.push_back(parse_double(key, item));
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& key, const std::string& v) {
  std::vector<std::int64_t> out;
  for (const auto& item : split_commas(v)) out.push_back(parse_int(key, item));
  return out;
}

}  // namespace

GapDistribution ExperimentConfig::gap_distribution() const {
  return GapDistribution::pareto(alpha, gap_x_min);
}

WalkSpec ExperimentConfig::walk_spec() const {
  if (walk == "simple-symmetric") return WalkSpec::simple_symmetric();
  std::vector<std::pair<int, double>> pmf;
  for (const auto& item : split_commas(walk_pmf)) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw config_error("walk_pmf: expected increment:probability, got '" + item + "'");
    pmf.emplace_back(
        static_cast<int>(parse_int("walk_pmf", trim(item.substr(0, colon)))),
        parse_double("walk_pmf", trim(item.substr(colon + 1))));
  }
  return WalkSpec::from_pmf(std::move(pmf));
}

void ExperimentConfig::validate() const {
  std::vector<std::string> issues;
  auto bad = [&](const std::string& msg) { issues.push_back(msg); };

  if (!(alpha > 0.0 && alpha < 1.0)) bad("alpha: must lie in (0,1)");
  if (gap_law != "pareto") bad("gap_law: only 'pareto' is supported");
  if (!(gap_x_min > 0.0)) bad("gap_x_min: must be positive");
  if (walk != "simple-symmetric" && walk != "pmf")
    bad("walk: must be 'simple-symmetric' or 'pmf'");
  if (walk == "pmf" || !walk_pmf.empty()) {
    try {
      WalkSpec spec = walk_spec();
      if (alpha > 0.0 && alpha < 1.0 && !(spec.gamma_check() > 2.0 / alpha))
        bad("walk_pmf: moment order gamma must exceed 2/alpha");
    } catch (const std::exception& e) {
      bad(std::string("walk_pmf: ") + e.what());
    }
  }
  if (n_trajectories < 1) bad("n_trajectories: must be >= 1");
  if (scale_grid.empty()) bad("scale_grid: must be nonempty");
  for (std::size_t i = 0; i < scale_grid.size(); ++i) {
    if (scale_grid[i] < 1) bad("scale_grid: entries must be >= 1");
    if (i > 0 && scale_grid[i] <= scale_grid[i - 1]) {
      bad("scale_grid: must be strictly increasing");
      break;
    }
  }
  for (double t : time_points)
    if (!(t > 0.0)) bad("time_points: entries must be positive");
  for (double s : s_points)
    if (s < 0.0) bad("s_points: entries must be nonnegative");
  if (x_times.empty()) bad("x_times: must be nonempty");
  for (double t : x_times)
    if (!(t > 0.0)) bad("x_times: entries must be positive");
  if (!(xbar_q >= 1.0)) bad("xbar_q: must be >= 1");
  for (double q : quantile_levels)
    if (!(q > 0.0 && q < 1.0)) bad("quantile_levels: entries must lie in (0,1)");
  if (limit_times.empty()) bad("limit_times: must be nonempty");
  for (double t : limit_times)
    if (!(t > 0.0)) bad("limit_times: entries must be positive");
  if (!(dt_over_tmax > 0.0 && dt_over_tmax <= 0.01))
    bad("dt_over_tmax: must lie in (0, 0.01]");
  if (!(dx > 0.0)) bad("dx: must be positive");
  if (limit_replicas < 1) bad("limit_replicas: must be >= 1");
  if (rwrs_n < 1) bad("rwrs_n: must be >= 1");
  if (rwrs_replicas < 1) bad("rwrs_replicas: must be >= 1");
  if (growth_replicas < 1) bad("growth_replicas: must be >= 1");
  if (calib_n_block < 10000) bad("calib_n_block: must be >= 10000");
  if (calib_n_samples < 1000) bad("calib_n_samples: must be >= 1000");
  if (!(calib_ks_ceiling > 0.0)) bad("calib_ks_ceiling: must be positive");
  if (workers < 0) bad("workers: must be >= 0");
  if (out_dir.empty()) bad("out_dir: must be nonempty");

  if (!issues.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& s : issues) msg += "\n  " + s;
    throw config_error(msg);
  }
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream out;
  out << "alpha = " << fmt_double(alpha) << "\n";
  out << "gap_law = " << gap_law << "\n";
  out << "gap_x_min = " << fmt_double(gap_x_min) << "\n";
  out << "walk = " << walk << "\n";
  out << "walk_pmf = " << walk_pmf << "\n";
  out << "master_seed = " << master_seed << "\n";
  out << "n_trajectories = " << n_trajectories << "\n";
  out << "scale_grid = " << fmt_ints(scale_grid) << "\n";
  out << "time_points = " << fmt_doubles(time_points) << "\n";
  out << "s_points = " << fmt_doubles(s_points) << "\n";
  out << "x_times = " << fmt_doubles(x_times) << "\n";
  out << "xbar_q = " << fmt_double(xbar_q) << "\n";
  out << "quantile_levels = " << fmt_doubles(quantile_levels) << "\n";
  out << "limit_times = " << fmt_doubles(limit_times) << "\n";
  out << "dt_over_tmax = " << fmt_double(dt_over_tmax) << "\n";
  out << "dx = " << fmt_double(dx) << "\n";
  out << "limit_replicas = " << limit_replicas << "\n";
  out << "rwrs_n = " << rwrs_n << "\n";
  out << "rwrs_replicas = " << rwrs_replicas << "\n";
  out << "growth_replicas = " << growth_replicas << "\n";
  out << "calib_n_block = " << calib_n_block << "\n";
  out << "calib_n_samples = " << calib_n_samples << "\n";
  out << "calib_ks_ceiling = " << fmt_double(calib_ks_ceiling) << "\n";
  out << "workers = " << workers << "\n";
  out << "out_dir = " << out_dir << "\n";
  return out.str();
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));

    if (key == "alpha") cfg.alpha = parse_double(key, val);
    else if (key == "gap_law") cfg.gap_law = val;
    else if (key == "gap_x_min") cfg.gap_x_min = parse_double(key, val);
    else if (key == "walk") cfg.walk = val;
    else if (key == "walk_pmf") cfg.walk_pmf = val;
    else if (key == "master_seed") cfg.master_seed = parse_uint(key, val);
    else if (key == "n_trajectories") cfg.n_trajectories = parse_int(key, val);
    else if (key == "scale_grid") cfg.scale_grid = parse_ints(key, val);
    else if (key == "time_points") cfg.time_points = parse_doubles(key, val);
    else if (key == "s_points") cfg.s_points = parse_doubles(key, val);
    else if (key == "x_times") cfg.x_times = parse_doubles(key, val);
    else if (key == "xbar_q") cfg.xbar_q = parse_double(key, val);
    else if (key == "quantile_levels") cfg.quantile_levels = parse_doubles(key, val);
    else if (key == "limit_times") cfg.limit_times = parse_doubles(key, val);
    else if (key == "dt_over_tmax") cfg.dt_over_tmax = parse_double(key, val);
    else if (key == "dx") cfg.dx = parse_double(key, val);
    else if (key == "limit_replicas") cfg.limit_replicas = parse_int(key, val);
    else if (key == "rwrs_n") cfg.rwrs_n = parse_int(key, val);
    else if (key == "rwrs_replicas") cfg.rwrs_replicas = parse_int(key, val);
    else if (key == "growth_replicas") cfg.growth_replicas = parse_int(key, val);
    else if (key == "calib_n_block") cfg.calib_n_block = parse_int(key, val);
    else if (key == "calib_n_samples") cfg.calib_n_samples = parse_int(key, val);
    else if (key == "calib_ks_ceiling") cfg.calib_ks_ceiling = parse_double(key, val);
    else if (key == "workers") cfg.workers = static_cast<int>(parse_int(key, val));
    else if (key == "out_dir") cfg.out_dir = val;
    else throw config_error("unknown key '" + key + "'");
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void ExperimentConfig::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write config file: " + path);
  out << serialize();
}

std::string config_to_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["alpha"] = cfg.alpha;
  j["gap_law"] = cfg.gap_law;
  j["gap_x_min"] = cfg.gap_x_min;
  j["walk"] = cfg.walk;
  j["walk_pmf"] = cfg.walk_pmf;
  j["master_seed"] = cfg.master_seed;
  j["n_trajectories"] = cfg.n_trajectories;
  j["scale_grid"] = cfg.scale_grid;
  j["time_points"] = cfg.time_points;
  j["s_points"] = cfg.s_points;
  j["x_times"] = cfg.x_times;
  j["xbar_q"] = cfg.xbar_q;
  j["quantile_levels"] = cfg.quantile_levels;
  j["limit_times"] = cfg.limit_times;
  j["dt_over_tmax"] = cfg.dt_over_tmax;
  j["dx"] = cfg.dx;
  j["limit_replicas"] = cfg.limit_replicas;
  j["rwrs_n"] = cfg.rwrs_n;
  j["rwrs_replicas"] = cfg.rwrs_replicas;
  j["growth_replicas"] = cfg.growth_replicas;
  j["calib_n_block"] = cfg.calib_n_block;
  j["calib_n_samples"] = cfg.calib_n_samples;
  j["calib_ks_ceiling"] = cfg.calib_ks_ceiling;
  j["workers"] = cfg.workers;
  j["out_dir"] = cfg.out_dir;
  return j.dump();
}

}  // namespace levygas
