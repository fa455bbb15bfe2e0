#pragma once

#include <string>
#include <string_view>

#include "spinlab/dynamics.h"
#include "spinlab/spectrum.h"

namespace spinlab {

/// Everything a CLI run can be configured with. Defaults use e = m = c = 1 and
/// B₃ = 1 so that ω₁ = 1.
struct RunConfig {
  PhysicalParams physics;
  PlanarState initial = {1.0, 0.0, 0.0, 0.0};
  double tEnd = -1;  ///< negative: one precession period 2π/|ω₁|
  double dt = 1e-3;
  OscillatorConfig spectrum;

  double resolvedEndTime() const;
};

/// INI text with sections [physics], [simulate], [spectrum]. Syntax errors and
/// bad values throw ParseError positioned at the offending line; unknown
/// sections or keys are errors too.
RunConfig parseConfig(std::string_view text);
/// Throws IoError if the file cannot be read.
RunConfig loadConfig(const std::string& path);

/// Documentation of every key with its default, for --help.
std::string configReference();

}  // namespace spinlab
