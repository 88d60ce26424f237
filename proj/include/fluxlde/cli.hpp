#pragma once

#include "fluxlde/disorder.hpp"
#include "fluxlde/hamiltonians.hpp"
#include "fluxlde/protocols.hpp"
#include "fluxlde/readout.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace fluxlde::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed experiment file. Flat INI sections: [chain], [numerics], [disorder], [readout].
/// Absent sections stay empty; absent keys inside a present section take the defaults of the
/// corresponding protocol.
struct RunConfig {
  std::optional<Protocol> protocol;
  std::optional<DcChainConfig> dc;
  std::optional<MwChainConfig> mw;
  ProtocolOptions numerics;
  std::optional<double> delta_xi;
  int realizations = 1000;
  std::uint64_t seed = 0;
  std::optional<ReadoutParams> readout;
  bool readout_q_given = false;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Fixed CSV number format: 12 significant digits, scientific below 1e-4, "nan" for NaN.
std::string format_number(double x);

/// Entry point shared by the fluxlde executable and the tests. Returns the process exit code:
/// 0 success, 1 usage or configuration error, 2 outputs written but failed validation.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fluxlde::cli
