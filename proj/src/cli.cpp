#include "microcell/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "microcell/calibration.hpp"
#include "microcell/config.hpp"
#include "microcell/design.hpp"
#include "microcell/errors.hpp"
#include "microcell/presets.hpp"
#include "microcell/resistance.hpp"
#include "microcell/sweep.hpp"
#include "microcell/units.hpp"

namespace microcell::cli {

namespace fs = std::filesystem;

namespace {

// Flat, ordered key/value summary of one run.
class Summary {
 public:
  void add(const std::string& key, Json value) { entries_.emplace_back(key, std::move(value)); }

  std::string text() const {
    std::string out;
    for (const auto& [key, value] : entries_) {
      out += key + "=";
      if (value.is_number_float()) {
        out += format_number(value.get<double>());
      } else if (value.is_string()) {
        out += value.get<std::string>();
      } else {
        out += value.dump();
      }
      out += "\n";
    }
    return out;
  }

  std::string json() const {
    Json doc = Json::object();
    for (const auto& [key, value] : entries_) doc[key] = value;
    return doc.dump(2) + "\n";
  }

 private:
  std::vector<std::pair<std::string, Json>> entries_;
};

struct Output {
  std::map<std::string, std::string> files;  // name -> contents
  Summary summary;
};

using Handler = std::function<void(const RunConfig&, Output&)>;

const Json& study_section(const RunConfig& rc, const std::string& name) {
  static const Json empty = Json::object();
  if (!rc.study.contains(name)) return empty;
  return rc.study.at(name);
}

std::vector<double> scaled(std::vector<double> v, double factor) {
  for (double& x : v) x *= factor;
  return v;
}

void add_params(Summary& s, const std::string& prefix, const PolarizationParams& p) {
  const Json j = polarization_to_json(p);
  for (const auto& [key, value] : j.items()) s.add(prefix + key, value);
}

void run_resistance(const RunConfig& rc, Output& out) {
  ConfigSection s(study_section(rc, "resistance"), "study.resistance");
  const double ratio = s.number("opening_ratio", 0.6);
  const std::vector<double> pitches =
      s.has("pitches_um") ? parse_grid(s.raw("pitches_um"), "study.resistance.pitches_um")
                          : log_grid(50.0, 5000.0, 41);
  s.finish();

  SweepContext ctx;
  ctx.preset = rc.cell;
  ctx.opening_ratio = ratio;
  resistance_sweep(rc.cell, scaled(pitches, 1e-6), ratio);  // validates ordering and range
  out.files["resistance.csv"] =
      parameter_sweep(SweepVariable::Pitch, scaled(pitches, 1e-6), ctx).to_csv();

  Summary& sum = out.summary;
  sum.add("cell", rc.cell.name);
  sum.add("opening_ratio", ratio);
  const ResistanceBreakdown both =
      series_resistance(rc.cell.geometry, rc.cell.layers, rc.cell.layers, rc.cell.collector,
                        rc.cell.collector);
  sum.add("series_resistance_both_sides_mohm_cm2", units::ohm_m2_to_mohm_cm2(both.total));
  try {
    const PitchChoice choice = optimize_pitch(rc.cell, ratio, rc.constraints);
    sum.add("optimal_pitch_um", units::m_to_um(choice.pitch));
    sum.add("in_plane_budget_mohm_cm2", units::ohm_m2_to_mohm_cm2(choice.in_plane_budget));
    sum.add("cathode_R_s_at_optimum_mohm_cm2", units::ohm_m2_to_mohm_cm2(choice.breakdown.total));
  } catch (const InfeasibleError&) {
    sum.add("optimal_pitch_um", "infeasible");
  }
}

std::vector<double> current_grid(ConfigSection& s, const PolarizationParams& p) {
  const std::string key = "current_density_mA_cm2";
  if (s.has(key)) return scaled(parse_grid(s.raw(key), s.path(key)), 10.0);
  const double top = units::A_m2_to_mA_cm2(p.limiting_current_density) * 0.9;
  return scaled(linear_grid(top / 500.0, top, 500), 10.0);
}

void run_polarization(const RunConfig& rc, Output& out) {
  ConfigSection s(study_section(rc, "polarization"), "study.polarization");
  const std::vector<double> r_s =
      s.has("r_s_mohm_cm2") ? parse_grid(s.raw("r_s_mohm_cm2"), "study.polarization.r_s_mohm_cm2")
                            : std::vector<double>{0.0, 50.0, 100.0, 200.0, 400.0};
  const std::vector<double> grid = current_grid(s, rc.polarization);
  s.finish();

  const PolarizationParams& p = rc.polarization;
  const auto rows = curve_family(p, scaled(r_s, 1e-7), grid);
  Table t;
  t.header = {"r_s_mohmcm2", "i_mA_cm2", "V", "P_mW_cm2", "eta", "rel_power_loss"};
  for (const auto& r : rows) {
    t.add_row({units::ohm_m2_to_mohm_cm2(r.r_s), units::A_m2_to_mA_cm2(r.point.current_density),
               r.point.voltage, units::W_m2_to_mW_cm2(r.point.power_density), r.point.efficiency,
               r.relative_power_loss});
  }
  out.files["polarization.csv"] = t.to_csv();

  Summary& sum = out.summary;
  add_params(sum, "", p);
  const CurvePoint best = max_efficiency_point(p);
  const CurvePoint peak = peak_power_point(p);
  sum.add("max_efficiency", best.efficiency);
  sum.add("max_efficiency_current_mA_cm2", units::A_m2_to_mA_cm2(best.current_density));
  sum.add("max_efficiency_power_mW_cm2", units::W_m2_to_mW_cm2(best.power_density));
  sum.add("peak_power_mW_cm2", units::W_m2_to_mW_cm2(peak.power_density));
  sum.add("peak_power_current_mA_cm2", units::A_m2_to_mA_cm2(peak.current_density));
  for (double r : r_s) {
    const EfficiencyResult e = efficiency(p, best.current_density, units::mohm_cm2_to_ohm_m2(r));
    char key[96];
    std::snprintf(key, sizeof key, "rel_power_loss_at_max_efficiency_rs_%s",
                  format_number(r).c_str());
    sum.add(key, 1.0 - e.power_density / best.power_density);
  }
}

void run_efficiency(const RunConfig& rc, Output& out) {
  ConfigSection s(study_section(rc, "efficiency"), "study.efficiency");
  const std::vector<double> leaks =
      s.has("leakage_mA_cm2") ? parse_grid(s.raw("leakage_mA_cm2"), "study.efficiency.leakage_mA_cm2")
                              : std::vector<double>{0.0, 0.2, 0.4, 0.55, 0.7, 1.0};
  const std::vector<double> grid = current_grid(s, rc.polarization);
  s.finish();

  const auto rows = efficiency_vs_leakage(rc.polarization, scaled(leaks, 10.0), grid);
  Table t;
  t.header = {"i_leak_mA_cm2", "i_mA_cm2", "eta"};
  for (const auto& r : rows) {
    t.add_row({units::A_m2_to_mA_cm2(r.leakage), units::A_m2_to_mA_cm2(r.current_density),
               r.efficiency});
  }
  out.files["efficiency.csv"] = t.to_csv();

  SweepContext ctx;
  ctx.params = rc.polarization;
  const Table best = parameter_sweep(SweepVariable::Leakage, scaled(leaks, 10.0), ctx);
  for (const auto& row : best.rows) {
    const std::string tag = format_number(row[0]);
    out.summary.add("eta_max_leak_" + tag, row[4]);
    out.summary.add("i_at_eta_max_mA_cm2_leak_" + tag, row[1]);
    out.summary.add("p_at_eta_max_mW_cm2_leak_" + tag, row[3]);
  }
}

const NamedCell& pick_system(const RunConfig& rc, const std::string& name) {
  if (name.empty()) return rc.systems.front();
  for (const auto& s : rc.systems) {
    if (s.name == name) return s;
  }
  throw ValidationError("no system named " + name);
}

void add_simulation_summary(Summary& sum, const SimulationSummary& s) {
  sum.add("duration_s", s.duration);
  sum.add("steps", s.steps);
  sum.add("capacity_exhausted", s.capacity_exhausted);
  sum.add("delivered_energy_J", s.delivered_energy);
  sum.add("fuel_cell_energy_J", s.fuel_cell_energy);
  sum.add("mean_power_mW", units::W_to_mW(s.mean_power));
  sum.add("h2_generated_mol", s.h2_generated);
  sum.add("h2_consumed_mol", s.h2_consumed);
  sum.add("h2_leaked_mol", s.h2_leaked);
  sum.add("plenum_delta_mol", s.plenum_delta);
  sum.add("eta_system", s.eta_system);
  sum.add("eta_fuel_cell", s.eta_fuel_cell);
  sum.add("eta_voltage_mean", s.eta_voltage_mean);
  sum.add("eta_faraday_mean", s.eta_faraday_mean);
  sum.add("starvation_time_s", s.starvation_time);
  sum.add("gas_cell_charge_used_C", s.gas_cell_charge_used);
  sum.add("max_kcl_residual_A", s.max_kcl_residual);
  sum.add("max_kvl_residual_V", s.max_kvl_residual);
  sum.add("max_complementarity_residual", s.max_complementarity_residual);
  sum.add("mole_balance_residual", s.mole_balance_residual);
}

void run_simulate(const RunConfig& rc, Output& out) {
  ConfigSection s(study_section(rc, "simulate"), "study.simulate");
  const LoadProfile profile = parse_profile(s.raw("profile"));
  const double dt = s.number("dt_s", default_time_step(profile));
  SimulationOptions opts;
  opts.start_with_empty_plenum = s.boolean("start_with_empty_plenum", false);
  const int stride = s.integer("record_every", 1);
  const NamedCell& sys = pick_system(rc, s.text("system", ""));
  s.finish();
  if (stride < 1) throw ValidationError("study.simulate.record_every must be at least 1");

  const SimulationResult r = simulate(sys.model, rc.gas, rc.circuit, profile, dt, opts);
  Table t;
  t.header = {"t_s",       "i_fc_A",     "v_fc_V",      "i_gc_A",      "v_gc_V",
              "i_diode_A", "i_bypass_A", "p_plenum_Pa", "h2_mol"};
  for (std::size_t k = 0; k < r.series.size(); ++k) {
    if (k % stride != 0 && k + 1 != r.series.size()) continue;
    const TimeSample& x = r.series[k];
    const OperatingPoint& op = x.point;
    t.add_row({x.t, op.i_fc, op.v_fc, op.i_gc, op.v_gc, op.i_diode, op.i_bypass,
               x.plenum_pressure, x.plenum_moles});
  }
  out.files["timeseries.csv"] = t.to_csv();
  out.summary.add("system", sys.name);
  out.summary.add("dt_s", dt);
  add_simulation_summary(out.summary, r.summary);
}

SweepContext system_context(const RunConfig& rc) {
  SweepContext ctx;
  ctx.preset = rc.cell;
  ctx.params = rc.polarization;
  ctx.systems = rc.systems;
  ctx.gas = rc.gas;
  ctx.circuit = rc.circuit;
  return ctx;
}

void run_duty(const RunConfig& rc, Output& out) {
  const DutyCycleStudy study = parse_duty_study(study_section(rc, "duty"));
  std::vector<FuelCellModel> cells;
  for (const auto& s : rc.systems) cells.push_back(s.model);
  const auto rows = duty_cycle_table(cells, rc.gas, rc.circuit, study);
  Table t;
  t.header = {"duty", "interval_s", "mean_power_mW"};
  for (const auto& s : rc.systems) t.header.push_back("eta_" + s.name);
  for (const auto& r : rows) {
    std::vector<double> row{r.duty, r.interval, units::W_to_mW(r.mean_power)};
    row.insert(row.end(), r.efficiency.begin(), r.efficiency.end());
    t.add_row(row);
  }
  out.files["duty.csv"] = t.to_csv();
  for (const auto& r : rows) {
    const std::string tag = format_number(r.duty);
    out.summary.add("mean_power_mW_duty_" + tag, units::W_to_mW(r.mean_power));
    for (std::size_t k = 0; k < rc.systems.size(); ++k) {
      out.summary.add("eta_" + rc.systems[k].name + "_duty_" + tag, r.efficiency[k]);
    }
  }
}

void run_energy(const RunConfig& rc, Output& out) {
  ConfigSection s(study_section(rc, "energy"), "study.energy");
  const std::vector<double> currents =
      s.has("currents_mA") ? parse_grid(s.raw("currents_mA"), "study.energy.currents_mA")
                           : std::vector<double>{5, 10, 15, 20, 30, 40};
  SweepContext ctx = system_context(rc);
  ctx.energy_steps = s.integer("steps", ctx.energy_steps);
  s.finish();
  const Table t = parameter_sweep(SweepVariable::LoadCurrent, scaled(currents, 1e-3), ctx);
  out.files["energy.csv"] = t.to_csv();
  for (const auto& row : t.rows) {
    const std::string tag = format_number(row[0]);
    for (std::size_t k = 0; k < rc.systems.size(); ++k) {
      out.summary.add(rc.systems[k].name + "_energy_J_at_" + tag + "mA", row[1 + 3 * k]);
      out.summary.add(rc.systems[k].name + "_efficiency_at_" + tag + "mA", row[3 + 3 * k]);
    }
  }
}

void run_size(const RunConfig& rc, Output& out) {
  ConfigSection s(study_section(rc, "size"), "study.size");
  const std::vector<double> powers =
      s.has("mean_power_mW") ? parse_grid(s.raw("mean_power_mW"), "study.size.mean_power_mW")
                             : std::vector<double>{0.5, 0.07};
  const double r_s = units::mohm_cm2_to_ohm_m2(s.number("series_resistance_mohm_cm2", 0.0));
  s.finish();
  const double p_opt = max_efficiency_power_density(rc.polarization, r_s);
  Table t;
  t.header = {"mean_power_mW", "area_mm2", "p_opt_mW_cm2"};
  for (double p : powers) {
    const double area = size_fuel_cell_area(units::mW_to_W(p), rc.polarization, r_s);
    t.add_row({p, units::m2_to_mm2(area), units::W_m2_to_mW_cm2(p_opt)});
    out.summary.add("area_mm2_at_" + format_number(p) + "mW", units::m2_to_mm2(area));
  }
  out.files["size.csv"] = t.to_csv();
  out.summary.add("p_opt_mW_cm2", units::W_m2_to_mW_cm2(p_opt));
}

void run_check(const RunConfig& rc, Output& out) {
  const DesignReport report = check_design(rc.cell, rc.constraints);
  out.files["report.txt"] = report.render();
  out.summary.add("cell", rc.cell.name);
  out.summary.add("pass", report.pass);
  out.summary.add("violations", report.violations.size());
}

void run_calibrate(const RunConfig& rc, Output& out) {
  ConfigSection s(study_section(rc, "calibrate"), "study.calibrate");
  const CalibrationTargets targets =
      s.has("targets") ? parse_targets(s.raw("targets"))
                       : rc.targets.value_or(default_calibration_targets());
  const std::string name = s.text("name", "PCB");
  std::map<std::string, double> derived{{"DF", units::A_m2_to_mA_cm2(kDfLeakage)}};
  if (s.has("derived")) {
    derived.clear();
    for (const auto& [key, value] : s.raw("derived").items()) {
      if (!value.is_number()) throw ValidationError("study.calibrate.derived values must be numbers");
      derived[key] = value.get<double>();
    }
  }
  s.finish();

  const CalibrationResult fit = calibrate(targets);
  PolarizationPresets presets{{name, fit.params}};
  for (const auto& [key, leak] : derived) {
    presets[key] = fit.params.with_leakage(units::mA_cm2_to_A_m2(leak));
  }
  out.files["calibrated_presets.json"] = format_polarization_presets(presets, &fit.residuals);
  out.files["polarization.json"] =
      Json{{"polarization", {{"params", polarization_to_json(fit.params)}}}}.dump(2) + "\n";

  add_params(out.summary, "", fit.params);
  out.summary.add("iterations", fit.iterations);
  out.summary.add("max_relative_residual", fit.residual);
  const char* names[] = {"ocv", "max_efficiency", "power_at_max_efficiency", "peak_power"};
  for (int k = 0; k < 4; ++k) out.summary.add(std::string("residual_") + names[k], fit.residuals[k]);
}

double sweep_scale(SweepVariable v) {
  switch (v) {
    case SweepVariable::Pitch: return 1e-6;
    case SweepVariable::OpeningRatio: return 1.0;
    case SweepVariable::SeriesResistance: return 1e-7;
    case SweepVariable::Leakage: return 10.0;
    case SweepVariable::LoadCurrent: return 1e-3;
    case SweepVariable::Duty: return 1.0;
  }
  return 1.0;
}

void run_sweep(const RunConfig& rc, Output& out) {
  ConfigSection s(study_section(rc, "sweep"), "study.sweep");
  const SweepVariable variable = sweep_variable_from_string(s.text("variable"));
  const std::vector<double> grid = parse_grid(s.raw("grid"), "study.sweep.grid");
  SweepContext ctx = system_context(rc);
  ctx.opening_ratio = s.number("opening_ratio", rc.cell.geometry.opening_ratio());
  ctx.energy_steps = s.integer("energy_steps", ctx.energy_steps);
  if (s.has("duty")) ctx.duty = parse_duty_study(s.raw("duty"));
  s.finish();
  const Table t = parameter_sweep(variable, scaled(grid, sweep_scale(variable)), ctx);
  out.files["sweep.csv"] = t.to_csv();
  out.summary.add("variable", to_string(variable));
  out.summary.add("points", t.rows.size());
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"resistance", run_resistance}, {"polarization", run_polarization},
      {"efficiency", run_efficiency}, {"simulate", run_simulate},
      {"duty", run_duty},             {"energy", run_energy},
      {"size", run_size},             {"check", run_check},
      {"calibrate", run_calibrate},   {"sweep", run_sweep},
  };
  return table;
}

std::string hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot write " + path.string());
  f << contents;
  if (!f) throw ValidationError("failed writing " + path.string());
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"resistance", "polarization", "efficiency",
                                              "simulate",   "duty",         "energy",
                                              "size",       "check",        "calibrate",
                                              "sweep"};
  return names;
}

std::string usage() {
  std::string s = "usage: microcell <command> --config <path> [--out <dir>] [--set key=value ...]\n";
  s += "commands:";
  for (const auto& c : commands()) s += " " + c;
  s += "\n";
  return s;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

int run_command(const std::string& command, const fs::path& config_path, const fs::path& out_dir,
                const std::vector<std::string>& overrides, std::ostream& out, std::ostream& err) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) {
    err << "unknown command: " << command << "\n" << usage();
    return kUsage;
  }
  try {
    const Json doc = load_document(config_path, overrides);
    const RunConfig rc = parse_config(doc, config_path.parent_path());
    Output result;
    it->second(rc, result);

    fs::create_directories(out_dir);
    std::string file_list;
    for (const auto& [name, contents] : result.files) {
      write_file(out_dir / name, contents);
      file_list += (file_list.empty() ? "" : ",") + name;
    }
    const std::string text = result.summary.text();
    write_file(out_dir / "summary.txt", text);
    write_file(out_dir / "summary.json", result.summary.json());

    std::string manifest;
    manifest += "command=" + command + "\n";
    manifest += "config_hash=fnv1a64:" + hex(fnv1a(doc.dump())) + "\n";
    manifest += "microcell_version=" + std::string(kVersion) + "\n";
    manifest += "presets_hash=fnv1a64:" + hex(fnv1a(embedded_presets_document())) + "\n";
    manifest += "nlohmann_json_version=" + std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                std::to_string(NLOHMANN_JSON_VERSION_PATCH) + "\n";
    manifest += "cli11_version=" + std::string(CLI11_VERSION) + "\n";
    manifest += "files=" + file_list + ",summary.txt,summary.json\n";
    write_file(out_dir / "manifest.txt", manifest);

    out << text;
    return kSuccess;
  } catch (const CalibrationError& e) {
    err << "calibration failed: " << e.what() << "\n";
    return kInfeasible;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << " (limit " << format_number(e.limit()) << ")\n";
    return kInfeasible;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kValidationError;
  } catch (const Json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kValidationError;
  } catch (const fs::filesystem_error& e) {
    err << "file error: " << e.what() << "\n";
    return kValidationError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << usage();
    return kUsage;
  }
  if (args.front() == "--help" || args.front() == "-h") {
    out << usage();
    return kSuccess;
  }
  if (args.front() == "--version") {
    out << "microcell " << kVersion << "\n";
    return kSuccess;
  }
  const std::string command = args.front();
  if (std::find(commands().begin(), commands().end(), command) == commands().end()) {
    err << "unknown command: " << command << "\n" << usage();
    return kUsage;
  }

  CLI::App app{"microcell"};
  std::string config;
  std::string out_dir = "microcell-out";
  std::vector<std::string> sets;
  app.add_option("--config", config, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--set", sets, "override a config value, dotted.key=value")->take_all();
  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << usage();
    return kUsage;
  }
  return run_command(command, config, out_dir, sets, out, err);
}

}  // namespace microcell::cli
