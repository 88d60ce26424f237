#include "fluxlde/cli.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace fluxlde::cli {

namespace {

namespace pt = boost::property_tree;

const std::set<std::string> chain_keys = {"protocol", "N",          "J_GHz",     "lambda", "lambda_h", "Delta_GHz",
                                          "omega_GHz", "Omega0_GHz", "eps0_GHz", "r_GHz",  "phases"};
const std::set<std::string> dc_only_keys = {"lambda_h"};
const std::set<std::string> mw_only_keys = {"omega_GHz", "Omega0_GHz", "phases"};
const std::set<std::string> numerics_keys = {"t_final_ns", "n_samples", "integrator", "tol"};
const std::set<std::string> disorder_keys = {"delta_xi", "realizations", "seed"};
const std::set<std::string> readout_keys = {"Lq_pH", "Iq_uA", "kappa", "TN_K", "omega_r_GHz", "Q"};

std::string trim(std::string s)
{
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_double(const std::string& section, const std::string& key, const std::string& text)
{
  const std::string v = trim(text);
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size())
      return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("[" + section + "] " + key + ": expected a number, got '" + v + "'");
}

long long parse_integer(const std::string& section, const std::string& key, const std::string& text)
{
  const std::string v = trim(text);
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used == v.size())
      return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("[" + section + "] " + key + ": expected an integer, got '" + v + "'");
}

std::vector<double> parse_phases(const std::string& text)
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (token == "pi")
      out.push_back(std::numbers::pi);
    else if (token == "-pi")
      out.push_back(-std::numbers::pi);
    else
      out.push_back(parse_double("chain", "phases", token));
  }
  return out;
}

void check_keys(const std::string& section, const pt::ptree& tree, const std::set<std::string>& allowed)
{
  for (const auto& [key, value] : tree) {
    if (!allowed.contains(key))
      throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
    if (!value.empty())
      throw ConfigError("[" + section + "] " + key + ": nested values are not supported");
  }
}

template <typename T, typename Parse>
void read_optional(const pt::ptree& tree, const std::string& key, T& target, Parse parse)
{
  if (auto v = tree.get_optional<std::string>(key))
    target = parse(*v);
}

void parse_chain(const pt::ptree& tree, RunConfig& cfg)
{
  check_keys("chain", tree, chain_keys);
  const auto protocol = tree.get_optional<std::string>("protocol");
  if (!protocol)
    throw ConfigError("[chain] missing required key 'protocol'");
  const std::string name = trim(*protocol);
  auto num = [&](const std::string& key) { return [&, key](const std::string& v) { return parse_double("chain", key, v); }; };

  int n_sites = 4;
  read_optional(tree, "N", n_sites, [](const std::string& v) { return static_cast<int>(parse_integer("chain", "N", v)); });

  if (name == "dc") {
    for (const auto& key : mw_only_keys)
      if (tree.count(key))
        throw ConfigError("[chain] key '" + key + "' does not apply to protocol dc");
    DcChainConfig dc;
    dc.n_sites = n_sites;
    read_optional(tree, "J_GHz", dc.coupling_ghz, num("J_GHz"));
    read_optional(tree, "lambda", dc.end_bond_ratio, num("lambda"));
    read_optional(tree, "lambda_h", dc.end_field_ratio, num("lambda_h"));
    read_optional(tree, "Delta_GHz", dc.tunneling_ghz, num("Delta_GHz"));
    read_optional(tree, "eps0_GHz", dc.bias0_ghz, num("eps0_GHz"));
    read_optional(tree, "r_GHz", dc.ramp_rate_ghz, num("r_GHz"));
    try {
      dc.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("[chain] ") + e.what());
    }
    cfg.protocol = Protocol::dc;
    cfg.dc = dc;
  } else if (name == "mw") {
    for (const auto& key : dc_only_keys)
      if (tree.count(key))
        throw ConfigError("[chain] key '" + key + "' does not apply to protocol mw");
    MwChainConfig mw;
    mw.n_sites = n_sites;
    read_optional(tree, "J_GHz", mw.coupling_ghz, num("J_GHz"));
    read_optional(tree, "lambda", mw.end_bond_ratio, num("lambda"));
    read_optional(tree, "Delta_GHz", mw.tunneling_ghz, num("Delta_GHz"));
    if (auto v = tree.get_optional<std::string>("omega_GHz")) {
      mw.drive_freq_ghz = parse_double("chain", "omega_GHz", *v);
      mw.allow_off_resonance = true;
    }
    read_optional(tree, "Omega0_GHz", mw.drive_amp0_ghz, num("Omega0_GHz"));
    read_optional(tree, "r_GHz", mw.ramp_rate_ghz, num("r_GHz"));
    if (auto v = tree.get_optional<std::string>("eps0_GHz")) {
      const double magnitude = parse_double("chain", "eps0_GHz", *v);
      mw.init_bias_ghz.resize(mw.n_sites);
      for (int j = 1; j <= mw.n_sites; ++j)
        mw.init_bias_ghz[j - 1] = j % 2 == 0 ? magnitude : -magnitude;
    }
    if (auto v = tree.get_optional<std::string>("phases"))
      mw.phases = parse_phases(*v);
    try {
      mw.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("[chain] ") + e.what());
    }
    cfg.protocol = Protocol::mw;
    cfg.mw = mw;
  } else {
    throw ConfigError("[chain] protocol must be 'dc' or 'mw', got '" + name + "'");
  }
}

void parse_numerics(const pt::ptree& tree, RunConfig& cfg)
{
  check_keys("numerics", tree, numerics_keys);
  auto& opts = cfg.numerics;
  read_optional(tree, "t_final_ns", opts.t_final_ns,
                [](const std::string& v) { return parse_double("numerics", "t_final_ns", v); });
  read_optional(tree, "n_samples", opts.n_samples,
                [](const std::string& v) { return static_cast<int>(parse_integer("numerics", "n_samples", v)); });
  read_optional(tree, "tol", opts.integrator.rel_tol,
                [](const std::string& v) { return parse_double("numerics", "tol", v); });
  if (auto v = tree.get_optional<std::string>("integrator")) {
    const std::string method = trim(*v);
    if (method == "rk4")
      opts.integrator.method = IntegratorMethod::rk4;
    else if (method == "adaptive")
      opts.integrator.method = IntegratorMethod::adaptive;
    else
      throw ConfigError("[numerics] integrator must be 'rk4' or 'adaptive', got '" + method + "'");
  }
  if (opts.t_final_ns < 0.0)
    throw ConfigError("[numerics] t_final_ns must be >= 0");
  if (opts.n_samples < 1)
    throw ConfigError("[numerics] n_samples must be >= 1");
  if (!(opts.integrator.rel_tol > 0.0))
    throw ConfigError("[numerics] tol must be > 0");
}

void parse_disorder(const pt::ptree& tree, RunConfig& cfg)
{
  check_keys("disorder", tree, disorder_keys);
  if (auto v = tree.get_optional<std::string>("delta_xi")) {
    cfg.delta_xi = parse_double("disorder", "delta_xi", *v);
    if (*cfg.delta_xi < 0.0)
      throw ConfigError("[disorder] delta_xi must be >= 0");
  }
  read_optional(tree, "realizations", cfg.realizations,
                [](const std::string& v) { return static_cast<int>(parse_integer("disorder", "realizations", v)); });
  if (cfg.realizations < 1)
    throw ConfigError("[disorder] realizations must be >= 1");
  read_optional(tree, "seed", cfg.seed, [](const std::string& v) {
    const long long s = parse_integer("disorder", "seed", v);
    if (s < 0)
      throw ConfigError("[disorder] seed must be >= 0");
    return static_cast<std::uint64_t>(s);
  });
}

void parse_readout(const pt::ptree& tree, RunConfig& cfg)
{
  check_keys("readout", tree, readout_keys);
  ReadoutParams p;
  auto required = [&](const std::string& key) {
    auto v = tree.get_optional<std::string>(key);
    if (!v)
      throw ConfigError("[readout] missing required key '" + key + "'");
    return parse_double("readout", key, *v);
  };
  p.inductance_ph = required("Lq_pH");
  p.current_ua = required("Iq_uA");
  p.coupling = required("kappa");
  p.noise_temp_k = required("TN_K");
  p.resonator_ghz = required("omega_r_GHz");
  if (auto v = tree.get_optional<std::string>("Q")) {
    p.quality = parse_double("readout", "Q", *v);
    cfg.readout_q_given = true;
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[readout] ") + e.what());
  }
  cfg.readout = p;
}

}  // namespace

RunConfig parse_config(std::istream& in)
{
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config: " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  RunConfig cfg;
  for (const auto& [name, section] : tree) {
    if (!section.data().empty())
      throw ConfigError("config: key '" + name + "' appears outside of any section");
    if (name == "chain")
      parse_chain(section, cfg);
    else if (name == "numerics")
      parse_numerics(section, cfg);
    else if (name == "disorder")
      parse_disorder(section, cfg);
    else if (name == "readout")
      parse_readout(section, cfg);
    else
      throw ConfigError("unknown section [" + name + "]");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in);
}

}  // namespace fluxlde::cli
