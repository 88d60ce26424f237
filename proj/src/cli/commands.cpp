#include "fluxlde/cli.hpp"

#include "fluxlde/metrics.hpp"
#include "fluxlde/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <ostream>

namespace fluxlde::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_invalid = 2;

json number_or_null(double x)
{
  if (std::isfinite(x))
    return x;
  return nullptr;
}

std::ofstream open_output(const std::string& path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw ConfigError("cannot open output file '" + path + "'");
  return out;
}

void write_csv_row(std::ostream& out, std::initializer_list<double> values)
{
  bool first = true;
  for (double v : values) {
    if (!first)
      out << ',';
    out << format_number(v);
    first = false;
  }
  out << '\n';
}

void write_json(const std::string& path, const json& doc)
{
  auto out = open_output(path);
  out << doc.dump(2) << '\n';
}

// Trace invariants checked before a command reports success.
std::vector<std::string> trace_violations(const EvolutionTrace& trace)
{
  std::vector<std::string> problems;
  if (trace.max_norm_error() >= 1e-6)
    problems.push_back("norm drift " + format_number(trace.max_norm_error()) + " exceeds 1e-6");
  if (trace.worst_density_violation > 1e-7)
    problems.push_back("reduced density matrix invariant violated by " + format_number(trace.worst_density_violation));
  for (const auto& r : trace.rows) {
    if (!std::isnan(r.fidelity) && (r.fidelity < -1e-9 || r.fidelity > 1.0 + 1e-9)) {
      problems.push_back("fidelity outside [0, 1] at t = " + format_number(r.t_ns));
      break;
    }
  }
  return problems;
}

void write_trace_csv(std::ostream& out, const EvolutionTrace& trace)
{
  out << "t_ns,control_GHz,fidelity,concurrence,norm_error\n";
  for (const auto& r : trace.rows)
    write_csv_row(out, {r.t_ns, r.control_ghz, r.fidelity, r.concurrence, r.norm_error});
}

const RunConfig& require_chain(const RunConfig& cfg)
{
  if (!cfg.protocol)
    throw ConfigError("config has no [chain] section");
  return cfg;
}

int cmd_gap_sweep(const RunConfig& cfg, const std::string& var, double from, double to, int points,
                  const std::string& out_path, std::ostream& err)
{
  require_chain(cfg);
  if (from > to)
    throw ConfigError("gap-sweep: --from must not exceed --to");
  if (points < 1)
    throw ConfigError("gap-sweep: --points must be >= 1");
  const auto grid = linspace(from, to, points);

  std::vector<SweepRow> rows;
  if (var == "delta" || var == "epsilon") {
    if (*cfg.protocol != Protocol::dc)
      throw ConfigError("gap-sweep --var " + var + " requires protocol = dc");
    rows = sweep_dc_gap_concurrence(*cfg.dc, var == "delta" ? DcSweepVariable::tunneling : DcSweepVariable::bias, grid);
  } else {
    if (*cfg.protocol != Protocol::mw)
      throw ConfigError("gap-sweep --var omega_drive requires protocol = mw");
    rows = sweep_mw_gap_concurrence(*cfg.mw, grid);
  }

  auto out = open_output(out_path);
  out << "control_GHz,gap_GHz,concurrence\n";
  for (const auto& r : rows)
    write_csv_row(out, {r.control_ghz, r.gap_ghz, r.concurrence});
  if (!out)
    throw ConfigError("failed writing '" + out_path + "'");
  for (const auto& r : rows)
    if (std::isnan(r.concurrence))
      err << "warning: degenerate ground state at control " << format_number(r.control_ghz) << " GHz\n";
  return exit_ok;
}

int cmd_evolve(const RunConfig& cfg, const std::string& model, const std::string& out_path,
               std::string summary_path, std::ostream& err)
{
  require_chain(cfg);
  EvolutionTrace trace;
  if (model == "dc") {
    if (*cfg.protocol != Protocol::dc)
      throw ConfigError("evolve --model dc requires protocol = dc");
    trace = run_protocol_dc(*cfg.dc, cfg.numerics);
  } else {
    if (*cfg.protocol != Protocol::mw)
      throw ConfigError("evolve --model " + model + " requires protocol = mw");
    trace = run_protocol_mw(*cfg.mw, model == "mw-full" ? MwModel::full : MwModel::effective, cfg.numerics);
  }
  for (const auto& w : trace.warnings)
    err << "warning: " << w << '\n';

  {
    auto out = open_output(out_path);
    write_trace_csv(out, trace);
  }
  if (summary_path.empty())
    summary_path = out_path + ".json";
  const auto& last = trace.final();
  json summary;
  summary["final_fidelity"] = number_or_null(last.fidelity);
  summary["final_concurrence"] = number_or_null(last.concurrence);
  summary["min_fidelity"] = number_or_null(trace.min_fidelity());
  summary["max_concurrence"] = number_or_null(trace.max_concurrence());
  summary["gs_concurrence_at_final_control"] = number_or_null(last.gs_concurrence);
  write_json(summary_path, summary);

  const auto problems = trace_violations(trace);
  for (const auto& p : problems)
    err << "error: " << p << '\n';
  return problems.empty() ? exit_ok : exit_invalid;
}

int cmd_disorder(const RunConfig& cfg, const std::string& prefix, std::optional<std::uint64_t> seed_override,
                 bool skip_extremes, std::ostream& err)
{
  require_chain(cfg);
  if (!cfg.delta_xi)
    throw ConfigError("disorder: [disorder] delta_xi is required");

  DisorderStudyConfig study_cfg;
  if (*cfg.protocol == Protocol::dc)
    study_cfg.base = *cfg.dc;
  else
    study_cfg.base = *cfg.mw;
  study_cfg.half_width = *cfg.delta_xi;
  study_cfg.realizations = cfg.realizations;
  study_cfg.seed = seed_override.value_or(cfg.seed);
  if (!std::isnan(cfg.numerics.t_final_ns))
    study_cfg.t_final_ns = cfg.numerics.t_final_ns;

  const auto study = run_disorder_study(study_cfg);
  const int n = study.realizations.front().xi.size();

  {
    auto out = open_output(prefix + "_realizations.csv");
    out << "index";
    for (int j = 1; j <= n; ++j)
      out << ",xi_" << j;
    out << ",gs_concurrence\n";
    for (const auto& r : study.realizations) {
      out << r.index;
      for (double x : r.xi)
        out << ',' << format_number(x);
      out << ',' << format_number(r.concurrence) << '\n';
    }
  }

  json summary;
  summary["mean"] = study.mean;
  summary["min"] = study.min();
  summary["max"] = study.max();
  summary["baseline"] = number_or_null(study.baseline);
  summary["excluded_count"] = study.excluded_count;
  summary["seed"] = study_cfg.seed;
  summary["delta_xi"] = study_cfg.half_width;
  summary["realizations"] = study_cfg.realizations;
  summary["protocol"] = *cfg.protocol == Protocol::dc ? "dc" : "mw";
  summary["min_index"] = study.min_index;
  summary["max_index"] = study.max_index;
  write_json(prefix + "_summary.json", summary);

  std::vector<std::string> problems;
  if (!skip_extremes) {
    const auto extremes = evolve_extremes(study, cfg.numerics);
    auto out = open_output(prefix + "_extremes.csv");
    out << "realization,t_ns,control_GHz,fidelity,concurrence,norm_error\n";
    for (const auto* which : {&extremes.min, &extremes.max}) {
      const char* label = which == &extremes.min ? "min" : "max";
      for (const auto& r : which->rows) {
        out << label << ',';
        write_csv_row(out, {r.t_ns, r.control_ghz, r.fidelity, r.concurrence, r.norm_error});
      }
      for (auto p : trace_violations(*which))
        problems.push_back(std::string(label) + " realization: " + p);
    }
  }
  for (const auto& p : problems)
    err << "error: " << p << '\n';
  return problems.empty() ? exit_ok : exit_invalid;
}

int cmd_readout(const RunConfig& cfg, const std::string& out_path, std::ostream& out, std::ostream& err)
{
  if (!cfg.readout)
    throw ConfigError("readout: config has no [readout] section");
  const ReadoutParams& p = *cfg.readout;

  json doc;
  std::optional<int> best_q;
  try {
    best_q = optimal_q(p);
  } catch (const std::domain_error& e) {
    err << "warning: " << e.what() << '\n';
  }
  const double q_used = cfg.readout_q_given ? p.quality : best_q.value_or(p.quality);
  const double t_meas = measurement_time(p, q_used);
  if (!std::isfinite(t_meas))
    err << "warning: measurement time is infinite (kappa = 0)\n";

  doc["t_meas_ns"] = number_or_null(t_meas);
  doc["optimal_Q"] = best_q ? json(*best_q) : json(nullptr);
  doc["Q_used"] = q_used;
  doc["crossover_Q"] = number_or_null(crossover_q(p));

  json shift = nullptr;
  if (cfg.protocol == Protocol::dc) {
    const auto eig = eigh(build_dc(*cfg.dc, 0.0));
    const double gap = eig.values(1) - eig.values(0);
    if (gap > degeneracy_tolerance) {
      const double r = r_ge(eig.vector(0), eig.vector(1), 1, cfg.dc->n_sites);
      shift = dispersive_shift(p, r, gap);
      doc["R_ge"] = r;
      doc["gap_GHz"] = linear(gap);
    }
  } else if (cfg.protocol == Protocol::mw) {
    err << "warning: shift_ratio needs a static lab-frame Hamiltonian; not derived for protocol mw\n";
  }
  doc["shift_ratio"] = shift;

  if (out_path.empty() || out_path == "-")
    out << doc.dump(2) << '\n';
  else
    write_json(out_path, doc);
  return exit_ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Adiabatic long-distance entanglement in flux-qubit chains"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;

  auto* sweep = app.add_subcommand("gap-sweep", "Ground-state gap and end-to-end concurrence over a control grid");
  std::string var;
  double from = 0.0, to = 0.0;
  int points = 0;
  sweep->add_option("--config", config_path, "Experiment INI file")->required();
  sweep->add_option("--var", var, "Swept control")->required()->check(CLI::IsMember({"delta", "epsilon", "omega_drive"}));
  sweep->add_option("--from", from, "First grid value (GHz)")->required();
  sweep->add_option("--to", to, "Last grid value (GHz)")->required();
  sweep->add_option("--points", points, "Grid size")->required();
  sweep->add_option("--out", out_path, "CSV output")->required();

  auto* evolve_cmd = app.add_subcommand("evolve", "Integrate an adiabatic protocol");
  std::string model;
  std::string summary_path;
  evolve_cmd->add_option("--config", config_path, "Experiment INI file")->required();
  evolve_cmd->add_option("--model", model, "dc | mw-full | mw-effective")
      ->required()
      ->check(CLI::IsMember({"dc", "mw-full", "mw-effective"}));
  evolve_cmd->add_option("--out", out_path, "Trace CSV output")->required();
  evolve_cmd->add_option("--summary", summary_path, "Summary JSON output (default: <out>.json)");

  auto* disorder_cmd = app.add_subcommand("disorder", "Tunnel-splitting disorder Monte Carlo");
  std::string prefix;
  std::optional<std::uint64_t> seed;
  bool skip_extremes = false;
  disorder_cmd->add_option("--config", config_path, "Experiment INI file")->required();
  disorder_cmd->add_option("--out-prefix", prefix, "Prefix for the realizations, summary and extremes files")->required();
  disorder_cmd->add_option("--seed", seed, "Override the [disorder] seed");
  disorder_cmd->add_flag("--skip-extremes", skip_extremes, "Do not re-evolve the extreme realizations");

  auto* readout_cmd = app.add_subcommand("readout", "Dispersive readout estimates");
  readout_cmd->add_option("--config", config_path, "Experiment INI file")->required();
  readout_cmd->add_option("--out", out_path, "JSON output (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_config;
  }

  try {
    const RunConfig cfg = load_config(config_path);
    if (sweep->parsed())
      return cmd_gap_sweep(cfg, var, from, to, points, out_path, err);
    if (evolve_cmd->parsed())
      return cmd_evolve(cfg, model, out_path, summary_path, err);
    if (disorder_cmd->parsed())
      return cmd_disorder(cfg, prefix, seed, skip_extremes, err);
    return cmd_readout(cfg, out_path, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return exit_config;
}

}  // namespace fluxlde::cli
