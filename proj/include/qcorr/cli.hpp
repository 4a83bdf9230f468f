#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/measures.hpp"
#include "qcorr/monogamy.hpp"

namespace qcorr::cli {

enum class Command { kConservation, kDqc1, kSsaSweep, kStateInfo };
enum class Format { kCsv, kJson };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kToleranceFailure = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kInternalInconsistency = 3;
}  // namespace exit_code

struct RunConfig {
  Command command = Command::kConservation;
  std::uint64_t seed = 42;
  int samples = 100;
  double tol = 1e-4;
  /// Empty: write to the output stream passed to the command.
  std::filesystem::path output_path;
  Format format = Format::kCsv;
  OptimizerConfig optimizer;
  int n = 1;
  /// --n was given explicitly; a --unitary file must then agree with it.
  bool n_explicit = false;
  double lambda = 0.9;
  int alpha_steps = 201;
  ArrowConvention arrow = ArrowConvention::kMeasureSecond;
  std::optional<std::filesystem::path> unitary;
  std::optional<std::filesystem::path> state_file;
};

/// CSV headers. Changing them is a format break.
inline constexpr const char* kConservationHeader =
    "sample,seed,focus,partner_b,partner_e,S_A,E_AB,E_AE,J_AE,D_AB,D_AE,r1,r2,r3,r4,r5,"
    "spread_AB,spread_AE";
inline constexpr const char* kDqc1Header = "quantity,value";
inline constexpr const char* kSweepHeader =
    "alpha,p,S_AB,S_AE,S_B,S_E,E_AB,E_AE,D_AB,D_AE,Delta,Delta_tilde,I1,I2,spread_AB,spread_AE";

/// Each command writes its report and returns a process exit status.
/// Diagnostics go to `err`.
int cmd_conservation(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_dqc1(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_ssa_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_state_info(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses `args` (args[0] is the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 12 significant digits, '.' decimal point.
std::string format_number(double v);

}  // namespace qcorr::cli
