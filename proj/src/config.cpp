#include "shellgap/config.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "shellgap/errors.hpp"
#include "shellgap/special.hpp"

namespace shellgap {

using special::kPi;

std::string_view to_string(MethodId method) noexcept {
  switch (method) {
    case MethodId::Rayleigh: return "rayleigh";
    case MethodId::Foldy: return "foldy";
    case MethodId::MAE: return "mae";
    case MethodId::CPA: return "cpa";
  }
  return "unknown";
}

std::optional<MethodId> parse_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (MethodId m : {MethodId::Rayleigh, MethodId::Foldy, MethodId::MAE, MethodId::CPA}) {
    if (lower == to_string(m)) return m;
  }
  return std::nullopt;
}

double ArrayConfig::filling_fraction() const {
  return kPi * shell.a * shell.a / lattice.area();
}

double ArrayConfig::bragg_frequency() const { return fluid.c / (2.0 * lattice.L); }

double ArrayConfig::to_hz(double k_o) const { return k_o * fluid.c / (2.0 * kPi); }

double ArrayConfig::to_wavenumber(double f_hz) const { return 2.0 * kPi * f_hz / fluid.c; }

void ArrayConfig::validate() const {
  shell.validate();
  fluid.validate();
  lattice.validate();
  if (!(shell.a < 0.5 * lattice.L)) {
    throw SolverError(ErrorKind::InvalidSpec,
                      "shells overlap: radius " + std::to_string(shell.a) + " >= L/2");
  }
}

ArrayConfig ArrayConfig::latex_default() {
  ArrayConfig cfg;
  cfg.shell = ShellSpec::from_full_thickness(0.0275, 0.00025, 1100.0, 1.75e6, 0.4997);
  cfg.fluid = FluidSpec{1.2, 344.0};
  cfg.lattice = SquareLattice{0.08};
  return cfg;
}

}  // namespace shellgap
