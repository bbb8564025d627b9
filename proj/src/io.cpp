#include "shellgap/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "shellgap/errors.hpp"

namespace shellgap {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, const std::string& key, int line) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError("line " + std::to_string(line) + ": bad value for " + key + ": '" + text + "'");
  }
  return v;
}

MethodId method_from(const std::string& name) {
  const auto m = parse_method(name);
  if (!m) throw std::invalid_argument("unknown method '" + name + "'");
  return *m;
}

}  // namespace

ArrayConfig parse_config(std::istream& in) {
  ArrayConfig cfg = ArrayConfig::latex_default();
  double thickness = 2.0 * cfg.shell.h;
  std::map<std::string, double*> slots{
      {"shell.a", &cfg.shell.a},     {"shell.thickness", &thickness}, {"shell.rho", &cfg.shell.rho},
      {"shell.E", &cfg.shell.E},     {"shell.nu", &cfg.shell.nu},     {"fluid.rho", &cfg.fluid.rho},
      {"fluid.c", &cfg.fluid.c},     {"lattice.L", &cfg.lattice.L},
  };
  std::map<std::string, int> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    const auto slot = slots.find(key);
    if (slot == slots.end()) throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    if (seen.count(key)) {
      throw ConfigError("line " + std::to_string(line) + ": '" + key + "' repeats line " + std::to_string(seen[key]));
    }
    seen[key] = line;
    *slot->second = parse_number(value, key, line);
  }
  if (in.bad()) throw ConfigError("read error");
  cfg.shell.h = 0.5 * thickness;
  try {
    cfg.validate();
  } catch (const SolverError& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

ArrayConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_config(const ArrayConfig& cfg) {
  std::ostringstream out;
  out << "shell.a = " << format_double(cfg.shell.a) << '\n'
      << "shell.thickness = " << format_double(2.0 * cfg.shell.h) << '\n'
      << "shell.rho = " << format_double(cfg.shell.rho) << '\n'
      << "shell.E = " << format_double(cfg.shell.E) << '\n'
      << "shell.nu = " << format_double(cfg.shell.nu) << '\n'
      << "fluid.rho = " << format_double(cfg.fluid.rho) << '\n'
      << "fluid.c = " << format_double(cfg.fluid.c) << '\n'
      << "lattice.L = " << format_double(cfg.lattice.L) << '\n';
  return out.str();
}

std::vector<GapRecord> gap_records(const MethodGaps& gaps) {
  std::vector<GapRecord> out;
  const auto add = [&](int mode, const std::optional<BandGap>& g, const std::string& err) {
    GapRecord r{gaps.method, mode, g, g ? "ok" : (err.empty() ? "failed" : err)};
    out.push_back(std::move(r));
  };
  add(0, gaps.n0, gaps.n0_error);
  if (gaps.method != MethodId::MAE) add(1, gaps.n1, gaps.n1_error);
  return out;
}

void write_curves_csv(std::ostream& out, const std::vector<DispersionCurve>& curves, const ArrayConfig& cfg) {
  out << "betaL,k_oL,frequency_hz,branch,method\n";
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      out << format_double(p.betaL) << ',' << format_double(p.k_oL) << ','
          << format_double(cfg.to_hz(p.k_oL / cfg.lattice.L)) << ',' << c.branch_index << ','
          << to_string(c.method) << '\n';
    }
  }
}

void write_gaps_csv(std::ostream& out, const std::vector<GapRecord>& records) {
  out << "method,n_mode,f_lower_hz,f_upper_hz,width_hz,status\n";
  for (const auto& r : records) {
    out << to_string(r.method) << ',' << r.n_mode << ',';
    if (r.gap) {
      out << format_double(r.gap->f_lower) << ',' << format_double(r.gap->f_upper) << ','
          << format_double(r.gap->width());
    } else {
      out << ",,";
    }
    out << ',' << r.status << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  out << "x,filling_fraction,bragg_f_hz";
  for (MethodId m : spec.methods) {
    const std::string name(to_string(m));
    out << ',' << name << "_n0_lower_hz," << name << "_n0_upper_hz";
    if (m != MethodId::MAE) out << ',' << name << "_n1_lower_hz," << name << "_n1_upper_hz";
  }
  out << ",outer_filling_fraction,flags\n";
  const auto edges = [&](const std::optional<BandGap>& g) {
    if (g) out << ',' << format_double(g->f_lower) << ',' << format_double(g->f_upper);
    else out << ",,";
  };
  for (const auto& row : rows) {
    out << format_double(row.x) << ',' << format_double(row.F) << ',' << format_double(row.bragg_f);
    for (const auto& g : row.gaps) {
      edges(g.n0);
      if (g.method != MethodId::MAE) edges(g.n1);
    }
    out << ',' << format_double(row.F_outer) << ',';
    for (std::size_t i = 0; i < row.flags.size(); ++i) out << (i ? ";" : "") << row.flags[i];
    out << '\n';
  }
}

void to_json(nlohmann::json& j, const ShellSpec& v) {
  j = {{"a", v.a}, {"h", v.h}, {"rho", v.rho}, {"E", v.E}, {"nu", v.nu}};
}
void from_json(const nlohmann::json& j, ShellSpec& v) {
  j.at("a").get_to(v.a);
  j.at("h").get_to(v.h);
  j.at("rho").get_to(v.rho);
  j.at("E").get_to(v.E);
  j.at("nu").get_to(v.nu);
}

void to_json(nlohmann::json& j, const FluidSpec& v) { j = {{"rho", v.rho}, {"c", v.c}}; }
void from_json(const nlohmann::json& j, FluidSpec& v) {
  j.at("rho").get_to(v.rho);
  j.at("c").get_to(v.c);
}

void to_json(nlohmann::json& j, const ArrayConfig& v) {
  j = {{"shell", v.shell}, {"fluid", v.fluid}, {"lattice", {{"L", v.lattice.L}}}};
}
void from_json(const nlohmann::json& j, ArrayConfig& v) {
  j.at("shell").get_to(v.shell);
  j.at("fluid").get_to(v.fluid);
  j.at("lattice").at("L").get_to(v.lattice.L);
}

void to_json(nlohmann::json& j, const BandGap& v) {
  j = {{"method", std::string(to_string(v.method))},
       {"n_mode", v.n_mode},
       {"f_lower_hz", v.f_lower},
       {"f_upper_hz", v.f_upper}};
}
void from_json(const nlohmann::json& j, BandGap& v) {
  v.method = method_from(j.at("method").get<std::string>());
  j.at("n_mode").get_to(v.n_mode);
  j.at("f_lower_hz").get_to(v.f_lower);
  j.at("f_upper_hz").get_to(v.f_upper);
}

void to_json(nlohmann::json& j, const CurvePoint& v) { j = {{"betaL", v.betaL}, {"k_oL", v.k_oL}}; }
void from_json(const nlohmann::json& j, CurvePoint& v) {
  j.at("betaL").get_to(v.betaL);
  j.at("k_oL").get_to(v.k_oL);
}

void to_json(nlohmann::json& j, const DispersionCurve& v) {
  j = {{"method", std::string(to_string(v.method))}, {"branch", v.branch_index}, {"points", v.points}};
}
void from_json(const nlohmann::json& j, DispersionCurve& v) {
  v.method = method_from(j.at("method").get<std::string>());
  j.at("branch").get_to(v.branch_index);
  j.at("points").get_to(v.points);
}

void to_json(nlohmann::json& j, const GapRecord& v) {
  j = {{"method", std::string(to_string(v.method))}, {"n_mode", v.n_mode}, {"status", v.status}};
  j["gap"] = v.gap ? nlohmann::json(*v.gap) : nlohmann::json(nullptr);
}
void from_json(const nlohmann::json& j, GapRecord& v) {
  v.method = method_from(j.at("method").get<std::string>());
  j.at("n_mode").get_to(v.n_mode);
  j.at("status").get_to(v.status);
  if (j.at("gap").is_null()) v.gap.reset();
  else v.gap = j.at("gap").get<BandGap>();
}

namespace {

nlohmann::json optional_gap(const std::optional<BandGap>& g) {
  return g ? nlohmann::json(*g) : nlohmann::json(nullptr);
}

std::optional<BandGap> read_optional_gap(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<BandGap>();
}

}  // namespace

void to_json(nlohmann::json& j, const MethodGaps& v) {
  j = {{"method", std::string(to_string(v.method))},
       {"n0", optional_gap(v.n0)},
       {"n1", optional_gap(v.n1)},
       {"n0_error", v.n0_error},
       {"n1_error", v.n1_error}};
}
void from_json(const nlohmann::json& j, MethodGaps& v) {
  v.method = method_from(j.at("method").get<std::string>());
  v.n0 = read_optional_gap(j.at("n0"));
  v.n1 = read_optional_gap(j.at("n1"));
  j.at("n0_error").get_to(v.n0_error);
  j.at("n1_error").get_to(v.n1_error);
}

void to_json(nlohmann::json& j, const SweepRow& v) {
  j = {{"x", v.x},         {"filling_fraction", v.F}, {"outer_filling_fraction", v.F_outer},
       {"bragg_f_hz", v.bragg_f}, {"gaps", v.gaps},  {"flags", v.flags}};
}
void from_json(const nlohmann::json& j, SweepRow& v) {
  j.at("x").get_to(v.x);
  j.at("filling_fraction").get_to(v.F);
  j.at("outer_filling_fraction").get_to(v.F_outer);
  j.at("bragg_f_hz").get_to(v.bragg_f);
  j.at("gaps").get_to(v.gaps);
  j.at("flags").get_to(v.flags);
}

}  // namespace shellgap
