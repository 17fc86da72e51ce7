#include "mael/config.hpp"

#include <fstream>
#include <sstream>

namespace mael {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (...) {
    throw ConfigError(key + ": not a number: '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError(key + ": trailing characters in '" + v + "'");
  return x;
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  std::int64_t x;
  try {
    x = std::stoll(v, &pos);
  } catch (...) {
    throw ConfigError(key + ": not an integer: '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError(key + ": trailing characters in '" + v + "'");
  return x;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::istringstream is(v);
  std::string item;
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(origin + ": malformed section at line " +
                                                std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ": expected key = value at line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    std::string full = "[" + section + "] " + key;

    if (section == "domain") {
      if (key == "preset") {
        try {
          cfg.preset = preset_from_name(val);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(origin + ": " + full + ": " + e.what());
        }
      }
      else if (key == "resolution") cfg.resolution = static_cast<int>(to_int(full, val));
      else throw ConfigError(origin + ": unknown key " + full);
    } else if (section == "measure") {
      if (key == "kind") {
        if (val == "constant") cfg.measure.kind = MeasureSpec::Kind::Constant;
        else if (val == "radial-profile") cfg.measure.kind = MeasureSpec::Kind::RadialProfile;
        else if (val == "gaussian-bump") cfg.measure.kind = MeasureSpec::Kind::GaussianBump;
        else if (val == "csv-path") cfg.measure.kind = MeasureSpec::Kind::CsvPath;
        else throw ConfigError(full + ": unknown measure kind '" + val + "'");
      } else if (key == "params") cfg.measure.params = to_list(full, val);
      else if (key == "path") cfg.measure.path = val;
      else if (key == "normalization") cfg.measure.normalization = to_double(full, val);
      else throw ConfigError(origin + ": unknown key " + full);
    } else if (section == "solver") {
      if (key == "max_iters") cfg.solver.max_iters = static_cast<int>(to_int(full, val));
      else if (key == "tol_residual") cfg.solver.tol_residual = to_double(full, val);
      else if (key == "tol_J") cfg.solver.tol_J = to_double(full, val);
      else if (key == "step0") cfg.solver.step0 = to_double(full, val);
      else if (key == "cg_tol") cfg.solver.cg_tol = to_double(full, val);
      else if (key == "seed") cfg.solver.seed = static_cast<std::uint64_t>(to_int(full, val));
      else if (key == "start") {
        if (val == "zero") cfg.solver.start = SolveOptions::Start::Zero;
        else if (val == "scaled-radial") cfg.solver.start = SolveOptions::Start::ScaledRadial;
        else if (val == "random-admissible")
          cfg.solver.start = SolveOptions::Start::RandomAdmissible;
        else throw ConfigError(full + ": unknown start '" + val + "'");
      } else throw ConfigError(origin + ": unknown key " + full);
    } else if (section == "envelope") {
      if (key == "eps_env") cfg.solver.env.eps_env = to_double(full, val);
      else if (key == "max_sweeps") cfg.solver.env.max_sweeps = static_cast<int>(to_int(full, val));
      else if (key == "omega") cfg.solver.env.omega = to_double(full, val);
      else throw ConfigError(origin + ": unknown key " + full);
    } else if (section == "family") {
      if (key == "kind") {
        if (val == "seeded-smooth") cfg.family.kind = FamilySpec::Kind::SeededSmooth;
        else if (val == "singular-probe") cfg.family.kind = FamilySpec::Kind::SingularProbe;
        else throw ConfigError(full + ": unknown family kind '" + val + "'");
      } else if (key == "seed") cfg.family.seed = static_cast<std::uint64_t>(to_int(full, val));
      else if (key == "size") cfg.family.size = static_cast<int>(to_int(full, val));
      else if (key == "eps") cfg.family.eps = to_list(full, val);
      else throw ConfigError(origin + ": unknown key " + full);
    } else if (section == "output") {
      if (key == "dir") cfg.output_dir = val;
      else throw ConfigError(origin + ": unknown key " + full);
    } else {
      throw ConfigError(origin + ": unknown section [" + section + "]");
    }
  }
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), path);
}

}  // namespace mael
