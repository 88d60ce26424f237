#include <doctest.h>

#include "fluxlde/cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

using namespace fluxlde;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch()
  {
    dir = fs::temp_directory_path() / ("fluxlde_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  static int& counter()
  {
    static int c = 0;
    return c;
  }
  std::string write(const std::string& name, const std::string& text) const
  {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args)
{
  args.insert(args.begin(), "fluxlde");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text)
{
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);)
    out.push_back(line);
  return out;
}

const char* dc_short = "[chain]\nprotocol = dc\n[numerics]\nt_final_ns = 2\nn_samples = 4\n";

}  // namespace

TEST_CASE("number format")
{
  CHECK(cli::format_number(0.0) == "0");
  CHECK(cli::format_number(1.5) == "1.5");
  CHECK(cli::format_number(0.058030375041) == "0.058030375041");
  CHECK(cli::format_number(7.7e-10) == "7.7e-10");
  CHECK(cli::format_number(std::nan("")) == "nan");
}

TEST_CASE("config parsing")
{
  std::istringstream in(
      "[chain]\nprotocol = mw\nN = 6\nJ_GHz = 1.5\nphases = pi, 0, pi, 0, pi, 0\n"
      "[numerics]\nintegrator = adaptive\ntol = 1e-9\n[disorder]\ndelta_xi = 0.001\nseed = 12\n");
  const auto cfg = cli::parse_config(in);
  REQUIRE(cfg.mw);
  CHECK(cfg.mw->n_sites == 6);
  CHECK(cfg.mw->coupling_ghz == 1.5);
  CHECK(cfg.mw->phases.size() == 6);
  CHECK(cfg.numerics.integrator.method == IntegratorMethod::adaptive);
  CHECK(cfg.numerics.integrator.rel_tol == 1e-9);
  CHECK(*cfg.delta_xi == 0.001);
  CHECK(cfg.seed == 12);
  CHECK_FALSE(cfg.dc);
}

TEST_CASE("config errors name the offending key")
{
  auto message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      cli::parse_config(in);
    } catch (const cli::ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("[chain]\nprotocol = dc\nbogus = 1\n").find("bogus") != std::string::npos);
  CHECK(message("[chain]\nN = 4\n").find("protocol") != std::string::npos);
  CHECK(message("[chain]\nprotocol = dc\nOmega0_GHz = 1\n").find("Omega0_GHz") != std::string::npos);
  CHECK(message("[chain]\nprotocol = mw\nlambda_h = 0.1\n").find("lambda_h") != std::string::npos);
  CHECK(message("[chain]\nprotocol = dc\nJ_GHz = five\n").find("J_GHz") != std::string::npos);
  CHECK(message("[chain]\nprotocol = mw\nN = 5\n").find("chain") != std::string::npos);
  CHECK(message("[chain]\nprotocol = mw\nomega_GHz = 19\n") == "no error");
  CHECK(message("[other]\nx = 1\n").find("other") != std::string::npos);
  CHECK(message("x = 1\n[chain]\nprotocol = dc\n").find("outside") != std::string::npos);
  CHECK(message("[readout]\nLq_pH = 25\n").find("Iq_uA") != std::string::npos);
  CHECK(message("[numerics]\nintegrator = euler\n").find("integrator") != std::string::npos);
}

TEST_CASE("gap-sweep writes the documented CSV")
{
  Scratch s;
  const auto config = s.write("dc.ini", dc_short);
  const auto r = invoke({"gap-sweep", "--config", config, "--var", "delta", "--from", "1", "--to", "5", "--points",
                         "3", "--out", s.path("sweep.csv")});
  CHECK(r.code == 0);
  const auto rows = lines(slurp(s.path("sweep.csv")));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "control_GHz,gap_GHz,concurrence");
  CHECK(rows[1].rfind("1,", 0) == 0);
  CHECK(rows[3].rfind("5,", 0) == 0);
}

TEST_CASE("gap-sweep rejects bad ranges and mismatched variables")
{
  Scratch s;
  const auto config = s.write("dc.ini", dc_short);
  auto r = invoke({"gap-sweep", "--config", config, "--var", "delta", "--from", "5", "--to", "1", "--points", "3",
                   "--out", s.path("x.csv")});
  CHECK(r.code == 1);
  CHECK(r.err.find("--from") != std::string::npos);
  r = invoke({"gap-sweep", "--config", config, "--var", "omega_drive", "--from", "0", "--to", "1", "--points", "3",
              "--out", s.path("x.csv")});
  CHECK(r.code == 1);
  CHECK(r.err.find("mw") != std::string::npos);
  r = invoke({"gap-sweep", "--config", config, "--var", "gamma", "--from", "0", "--to", "1", "--points", "3",
              "--out", s.path("x.csv")});
  CHECK(r.code == 1);
}

TEST_CASE("evolve writes trace and summary")
{
  Scratch s;
  const auto config = s.write("dc.ini", dc_short);
  const auto r = invoke({"evolve", "--config", config, "--model", "dc", "--out", s.path("trace.csv")});
  CHECK(r.code == 0);
  const auto rows = lines(slurp(s.path("trace.csv")));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "t_ns,control_GHz,fidelity,concurrence,norm_error");
  CHECK(rows[1].rfind("0,20,1,", 0) == 0);
  const auto summary = nlohmann::json::parse(slurp(s.path("trace.csv.json")));
  for (const char* key : {"final_fidelity", "final_concurrence", "min_fidelity", "max_concurrence",
                          "gs_concurrence_at_final_control"})
    CHECK(summary.contains(key));
  CHECK(summary["final_fidelity"].get<double>() <= 1.0);
}

TEST_CASE("evolve rejects a model that does not match the protocol")
{
  Scratch s;
  const auto config = s.write("dc.ini", dc_short);
  const auto r = invoke({"evolve", "--config", config, "--model", "mw-full", "--out", s.path("t.csv")});
  CHECK(r.code == 1);
  CHECK(r.err.find("protocol") != std::string::npos);
}

TEST_CASE("evolve exits 2 when the trace fails validation")
{
  Scratch s;
  const auto config =
      s.write("loose.ini", "[chain]\nprotocol = dc\n[numerics]\nt_final_ns = 10\nn_samples = 4\n"
                           "integrator = adaptive\ntol = 1e-2\n");
  const auto r = invoke({"evolve", "--config", config, "--model", "dc", "--out", s.path("t.csv")});
  CHECK(r.code == 2);
  CHECK(r.err.find("norm") != std::string::npos);
  CHECK(fs::exists(s.path("t.csv")));
}

TEST_CASE("missing config file is a usage error")
{
  const auto r = invoke({"evolve", "--config", "/nonexistent/x.ini", "--model", "dc", "--out", "/tmp/unused.csv"});
  CHECK(r.code == 1);
  CHECK(r.err.find("/nonexistent/x.ini") != std::string::npos);
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
}

TEST_CASE("disorder outputs and byte-identical reruns")
{
  Scratch s;
  const auto config =
      s.write("d.ini", "[chain]\nprotocol = dc\n[numerics]\nt_final_ns = 2\nn_samples = 4\n"
                       "[disorder]\ndelta_xi = 0.05\nrealizations = 20\nseed = 3\n");
  const auto a = invoke({"disorder", "--config", config, "--out-prefix", s.path("a")});
  const auto b = invoke({"disorder", "--config", config, "--out-prefix", s.path("b")});
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  for (const char* suffix : {"_realizations.csv", "_summary.json", "_extremes.csv"}) {
    const auto left = slurp(s.path(std::string("a") + suffix));
    CHECK(!left.empty());
    CHECK(left == slurp(s.path(std::string("b") + suffix)));
  }
  const auto rows = lines(slurp(s.path("a_realizations.csv")));
  CHECK(rows.size() == 21);
  CHECK(rows[0] == "index,xi_1,xi_2,xi_3,xi_4,gs_concurrence");
  const auto summary = nlohmann::json::parse(slurp(s.path("a_summary.json")));
  for (const char* key : {"mean", "min", "max", "baseline", "excluded_count", "seed"})
    CHECK(summary.contains(key));
  CHECK(summary["seed"].get<int>() == 3);

  const auto c = invoke({"disorder", "--config", config, "--out-prefix", s.path("c"), "--seed", "4", "--skip-extremes"});
  CHECK(c.code == 0);
  CHECK_FALSE(fs::exists(s.path("c_extremes.csv")));
  CHECK(slurp(s.path("c_realizations.csv")) != slurp(s.path("a_realizations.csv")));
}

TEST_CASE("disorder requires a half-width")
{
  Scratch s;
  const auto config = s.write("d.ini", "[chain]\nprotocol = dc\n");
  const auto r = invoke({"disorder", "--config", config, "--out-prefix", s.path("x")});
  CHECK(r.code == 1);
  CHECK(r.err.find("delta_xi") != std::string::npos);
}

TEST_CASE("readout report")
{
  Scratch s;
  const auto config = s.write(
      "r.ini", "[chain]\nprotocol = dc\n[readout]\nLq_pH = 25\nIq_uA = 0.25\nkappa = 0.01\nTN_K = 5\nomega_r_GHz = 7.5\n");
  const auto r = invoke({"readout", "--config", config});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["optimal_Q"].get<int>() == 76);
  CHECK(doc["t_meas_ns"].get<double>() == doctest::Approx(1.62).epsilon(0.01));
  CHECK(doc["shift_ratio"].is_number());

  const auto fixed_q = s.write(
      "q.ini", "[readout]\nLq_pH = 25\nIq_uA = 0.25\nkappa = 0.01\nTN_K = 5\nomega_r_GHz = 7.5\nQ = 1000\n");
  const auto q = invoke({"readout", "--config", fixed_q, "--out", s.path("q.json")});
  CHECK(q.code == 0);
  const auto qdoc = nlohmann::json::parse(slurp(s.path("q.json")));
  CHECK(qdoc["shift_ratio"].is_null());
  CHECK(qdoc["t_meas_ns"].get<double>() > 20.0);

  const auto uncoupled = s.write(
      "k.ini", "[readout]\nLq_pH = 25\nIq_uA = 0.25\nkappa = 0\nTN_K = 5\nomega_r_GHz = 7.5\n");
  const auto k = invoke({"readout", "--config", uncoupled});
  CHECK(k.code == 0);
  CHECK(nlohmann::json::parse(k.out)["t_meas_ns"].is_null());
  CHECK(k.err.find("infinite") != std::string::npos);
}

TEST_CASE("the installed executable reports usage errors through its exit code")
{
  const std::string cmd = std::string(FLUXLDE_CLI_PATH) + " evolve --model dc > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 1);
}
