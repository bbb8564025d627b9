#pragma once

// Config files, CSV writers and the JSON mirror of the result types.
//
// Config format: one `key = value` per line, SI units, `#` starts a comment.
// Keys: shell.a, shell.thickness (full wall 2h), shell.rho, shell.E,
// shell.nu, fluid.rho, fluid.c, lattice.L. Keys left out keep the value of
// ArrayConfig::latex_default().

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "shellgap/config.hpp"
#include "shellgap/sweep.hpp"

namespace shellgap {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ConfigError on unknown or repeated keys, malformed lines or values,
/// and on a config that fails ArrayConfig::validate().
ArrayConfig parse_config(std::istream& in);
ArrayConfig load_config(const std::string& path);

/// Inverse of parse_config.
std::string format_config(const ArrayConfig& cfg);

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

/// One CSV/JSON row of the gaps table. `gap` is empty when the method failed.
struct GapRecord {
  MethodId method = MethodId::Foldy;
  int n_mode = 0;
  std::optional<BandGap> gap;
  std::string status = "ok";
};

std::vector<GapRecord> gap_records(const MethodGaps& gaps);

void write_curves_csv(std::ostream& out, const std::vector<DispersionCurve>& curves, const ArrayConfig& cfg);
void write_gaps_csv(std::ostream& out, const std::vector<GapRecord>& records);
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

// nlohmann::json conversions (found by ADL).
void to_json(nlohmann::json& j, const ShellSpec& v);
void from_json(const nlohmann::json& j, ShellSpec& v);
void to_json(nlohmann::json& j, const FluidSpec& v);
void from_json(const nlohmann::json& j, FluidSpec& v);
void to_json(nlohmann::json& j, const ArrayConfig& v);
void from_json(const nlohmann::json& j, ArrayConfig& v);
void to_json(nlohmann::json& j, const BandGap& v);
void from_json(const nlohmann::json& j, BandGap& v);
void to_json(nlohmann::json& j, const CurvePoint& v);
void from_json(const nlohmann::json& j, CurvePoint& v);
void to_json(nlohmann::json& j, const DispersionCurve& v);
void from_json(const nlohmann::json& j, DispersionCurve& v);
void to_json(nlohmann::json& j, const GapRecord& v);
void from_json(const nlohmann::json& j, GapRecord& v);
void to_json(nlohmann::json& j, const MethodGaps& v);
void from_json(const nlohmann::json& j, MethodGaps& v);
void to_json(nlohmann::json& j, const SweepRow& v);
void from_json(const nlohmann::json& j, SweepRow& v);

}  // namespace shellgap
