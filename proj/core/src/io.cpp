#include "mael/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mael {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t hash_doubles(const std::vector<double>& xs) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (double x : xs) {
    std::uint64_t bits;
    static_assert(sizeof bits == sizeof x);
    std::memcpy(&bits, &x, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  }
  return h;
}

namespace {

void write_field_csv(const std::string& path, const GridDomain& dom,
                     const std::vector<double>& values,
                     const std::vector<std::uint8_t>* contact) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << "n,res,h\n"
    << dom.n() << ',' << dom.resolution() << ',' << format_double(dom.h()) << '\n';
  const int d = dom.dim();
  for (int i = 0; i < d; ++i) f << 'i' << i << ',';
  f << (contact ? "value,contact\n" : "value\n");
  std::vector<int> ix(d);
  for (std::int64_t idx = 0; idx < dom.node_count(); ++idx) {
    dom.node_index(idx, ix.data());
    for (int i = 0; i < d; ++i) f << ix[i] << ',';
    f << format_double(values[idx]);
    if (contact) f << ',' << int((*contact)[idx]);
    f << '\n';
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::vector<double> read_field_csv(const std::string& path, const GridDomain& dom) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error(path + ": empty file");
  if (!std::getline(f, line)) throw std::runtime_error(path + ": missing header values");
  {
    std::istringstream is(line);
    int n = -1, res = -1;
    char c;
    double h;
    if (!(is >> n >> c >> res >> c >> h) || n != dom.n() || res != dom.resolution())
      throw std::runtime_error(path + ": grid shape mismatch with domain");
  }
  std::getline(f, line);  // column names
  std::vector<double> values(dom.node_count(), 0.0);
  const int d = dom.dim();
  std::vector<int> ix(d);
  std::int64_t rows = 0;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream is(line);
    char c;
    std::int64_t idx = 0;
    for (int i = 0; i < d; ++i) {
      if (!(is >> ix[i] >> c)) throw std::runtime_error(path + ": bad row");
      if (ix[i] < 0 || ix[i] >= dom.resolution())
        throw std::runtime_error(path + ": index out of range");
      idx += ix[i] * dom.stride(i);
    }
    double v;
    if (!(is >> v)) throw std::runtime_error(path + ": bad value");
    values[idx] = v;
    ++rows;
  }
  if (rows != dom.node_count())
    throw std::runtime_error(path + ": row count mismatch");
  return values;
}

}  // namespace

void write_function_csv(const std::string& path, const GridFunction& u,
                        const std::vector<std::uint8_t>* contact) {
  write_field_csv(path, *u.domain, u.values, contact);
}

GridFunction read_function_csv(const std::string& path, const DomainPtr& domain) {
  GridFunction u(domain);
  u.values = read_field_csv(path, *domain);
  check_function_invariants(u);
  return u;
}

void write_measure_csv(const std::string& path, const DiscreteMeasure& mu) {
  write_field_csv(path, *mu.domain, mu.density, nullptr);
}

DiscreteMeasure read_measure_csv(const std::string& path, const DomainPtr& domain) {
  DiscreteMeasure mu(domain);
  mu.density = read_field_csv(path, *domain);
  for (std::int64_t idx = 0; idx < domain->node_count(); ++idx) {
    if (mu.density[idx] < 0) throw std::runtime_error(path + ": negative density");
    if (!domain->is_interior(idx) && mu.density[idx] != 0)
      throw std::runtime_error(path + ": density off the interior");
  }
  update_mass(mu);
  return mu;
}

std::string report_line(const CheckRecord& rec) {
  nlohmann::json j;
  j["name"] = rec.name;
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", (unsigned long long)rec.inputs_hash);
  j["inputs_hash"] = hash;
  j["samples"] = rec.samples;
  j["worst_gap"] = format_double(rec.worst_gap);
  j["tolerance"] = format_double(rec.tolerance);
  j["verdict"] = rec.pass ? "pass" : "fail";
  return j.dump();
}

void append_report_line(const std::string& path, const CheckRecord& rec) {
  std::ofstream f(path, std::ios::app);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << report_line(rec) << '\n';
}

}  // namespace mael
