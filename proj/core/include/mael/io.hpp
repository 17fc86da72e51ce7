// CSV serialization of grid fields (bit-exact round-trip via 17 significant
// digits) and line-oriented JSON check reports.
#pragma once

#include <cstdint>
#include <string>

#include "mael/calculus.hpp"

namespace mael {

// Layout: "n,res,h" header, a values row, an "i0,...,value[,contact]" column
// row, then one row per node with integer index coordinates.
void write_function_csv(const std::string& path, const GridFunction& u,
                        const std::vector<std::uint8_t>* contact = nullptr);
GridFunction read_function_csv(const std::string& path, const DomainPtr& domain);

void write_measure_csv(const std::string& path, const DiscreteMeasure& mu);
DiscreteMeasure read_measure_csv(const std::string& path, const DomainPtr& domain);

// 17-significant-digit decimal rendering used everywhere a float is printed
std::string format_double(double x);

// FNV-1a over the raw bytes of a double vector; stable inputs fingerprint
std::uint64_t hash_doubles(const std::vector<double>& xs);

struct CheckRecord {
  std::string name;
  std::uint64_t inputs_hash = 0;
  int samples = 0;
  double worst_gap = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// appends one JSON object per line
void append_report_line(const std::string& path, const CheckRecord& rec);
std::string report_line(const CheckRecord& rec);

}  // namespace mael
