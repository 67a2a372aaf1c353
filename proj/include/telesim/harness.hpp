#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "telesim/classical_protocol.hpp"
#include "telesim/qt_protocol.hpp"
#include "telesim/trace.hpp"

namespace telesim::harness {

enum class Command { Symbolic, Run, Classical, Compare };

struct RunConfig {
  Command command = Command::Run;
  fock::Complex alpha{1.0, 0.0};
  fock::Complex beta{0.0, 0.0};
  int trials = 1;
  std::uint64_t seed = 0;
  qt::ProtocolVariant variant;
  classical::ClassicalMessage message;
  trace::Format format = trace::Format::Text;
  std::string out_path;  // empty = standard output

  /// Validates |α|²+|β|²=1 to 1e-9 (decimal command-line input is forgiven
  /// up to that), then renormalizes the residual away so the protocol-level
  /// invariant holds exactly.
  qt::MessageCoefficients coefficients() const;

  static constexpr double kCliNormTolerance = 1e-9;
};

/// Side-by-side statistics for the quantum protocol and its ball-machine
/// analog, with 4σ binomial acceptance radii.
struct ComparisonReport {
  int trials = 0;
  double quantum_correction_rate = 0.0;
  double classical_replace_rate = 0.0;
  double quantum_bob_h_rate = 0.0;
  double message_r_fraction = 0.0;
  double alpha_squared = 0.0;
  double rate_difference_allowed = 0.0;  // combined radius, both sides at p=1/2
  double bob_h_allowed = 0.0;            // 4σ radius around |α|²
  bool rates_consistent = false;
  bool bob_h_consistent = false;
};

ComparisonReport compare_protocols(const RunConfig& cfg);

// Each command writes records and a summary to `out`, diagnostics to `err`,
// and returns the process exit status (nonzero exactly when an assertion
// fails or the input is invalid).

int cmd_symbolic(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_classical(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace telesim::harness
