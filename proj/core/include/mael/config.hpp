// Flat INI-style run configuration shared by all CLI commands.
#pragma once

#include <string>

#include "mael/measures.hpp"
#include "mael/solver.hpp"

namespace mael {

struct RunConfig {
  Preset preset = Preset::Disc;
  int resolution = 65;
  MeasureSpec measure;
  SolveOptions solver;
  FamilySpec family;
  std::string output_dir = ".";

  DomainPtr make_domain() const { return build_domain(preset, resolution); }
  DiscreteMeasure make_measure(const DomainPtr& domain) const {
    return realize(measure, domain);
  }
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// key = value lines under [domain] / [measure] / [solver] / [envelope] /
// [family] / [output] sections; '#' comments; unknown keys are errors that
// name the key.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<memory>");

}  // namespace mael
