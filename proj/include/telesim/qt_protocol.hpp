#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "telesim/measurement.hpp"
#include "telesim/rewrite.hpp"
#include "telesim/state_vector.hpp"
#include "telesim/substitution.hpp"

namespace telesim::qt {

using fock::Complex;
using fock::FiringMap;
using fock::Monomial;
using fock::Polarization;
using fock::StateVector;

/// Message polarization amplitudes; |α|² + |β|² = 1 to 1e-12.
struct MessageCoefficients {
  Complex alpha;
  Complex beta;

  MessageCoefficients(Complex a, Complex b);

  static constexpr double kNormTolerance = 1e-12;
};

/// Which summed-frequency detector clicked; in bijection with the crystal
/// rule of the same index (A↔1 … D↔4).
enum class DetectorOutcome { A, B, C, D };

char to_char(DetectorOutcome o);
fock::Channel detector_channel(DetectorOutcome o);

enum class Instruction { NoOp, FlipVtoH, FlipHtoV };

std::string to_string(Instruction i);

/// Alice's phone-call rule: detectors 1 and 4 mean Bob's photon is already
/// right, 2 and 3 name the flip he must make.
Instruction alice_instruction(DetectorOutcome o);

/// Hardware variant. With two crystals only outcomes B and C produce a
/// click, so no call is made for A and D and Bob acts on the timeout.
/// Durations are simulated integer time units; they are bookkeeping only
/// and never touch amplitudes.
struct ProtocolVariant {
  int crystal_count = 4;  // 4 or 2
  std::int64_t timeout_dt = 10;
  std::int64_t call_latency = 1;

  void validate() const;
};

struct Timestamps {
  std::int64_t photon_arrival = 0;
  std::int64_t click = 0;
  std::optional<std::int64_t> call_sent;
  std::int64_t correction_applied = 0;
  std::int64_t detection = 0;
};

/// One Monte Carlo teleportation event.
struct TrialRecord {
  std::uint64_t seed = 0;
  DetectorOutcome outcome = DetectorOutcome::A;
  Instruction instruction = Instruction::NoOp;
  Polarization bob_polarization_final = Polarization::H;
  bool call_made = false;
  Timestamps timestamps;
};

// Pipeline stages.

/// α|1_H1ω'⟩ + β|1_V1ω'⟩.
StateVector build_message_state(const MessageCoefficients& c);

/// |1_H3ω,1_V2ω⟩ + |1_H2ω,1_V3ω⟩, amplitudes kept unnormalized.
StateVector build_spdc_state();

/// Tensor of message and SPDC states: four degree-3 monomials.
StateVector build_joint_state(const MessageCoefficients& c);

/// Dichroic-mirror merge: every channel-2 mode relabeled into channel 1.
StateVector merge_alice_channel(const StateVector& v);

/// Frequency summation by the four-crystal table. Output terms that
/// coincide merge in the state; the firing map keeps the four events apart.
fock::PairRewriteResult sum_frequencies(const StateVector& v);

/// Relabels each firing's summed-frequency mode into the detector channel
/// of its rule (1→a … 4→d), restoring the orthogonality the summed state
/// merged away. Throws if the firings do not reconstruct `summed`.
StateVector split_to_detectors(const StateVector& summed,
                               const FiringMap& firings);

/// Bob's correction: the polarization swap on channel 3 (NoOp is the
/// identity). Both flips induce the same swap substitution; the instruction
/// names the polarization Bob's photon actually has in that branch.
StateVector apply_bob_correction(const StateVector& v, Instruction i);

using fock::fidelity;

/// Detector-click probabilities of the split state, all four outcomes
/// present (absent ones at probability 0).
std::map<DetectorOutcome, double> detector_distribution(
    const StateVector& split);

/// The message state carried over to Bob's labels: (channel 1, ω') modes
/// relabeled to (channel 3, ω) for comparing against his final photon.
StateVector relabel_message_to_bob(const StateVector& message);

struct SymbolicStage {
  std::string name;
  StateVector state;
};

/// End-to-end symbolic trace plus the verification branches.
struct SymbolicRun {
  std::vector<SymbolicStage> stages;  // spdc, joint, merged, summed, split,
                                      // factorized, final
  StateVector branch_no_call;         // conditioned on outcomes {A, D}
  StateVector branch_call_corrected;  // conditioned on {B, C}, then flipped
};

/// Thrown by symbolic_run when a stage fails its check.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Runs every stage, asserting along the way that the corrected state
/// factorizes across channels 3|1 with the channel-3 factor equal to the
/// message, and that both call-conditioned branches and the final state
/// reproduce the message with fidelity 1 (to 1e-12).
SymbolicRun symbolic_run(const MessageCoefficients& c);

/// Samples one teleportation event: detector click by the Born rule,
/// Alice's instruction, Bob's correction and final polarization, timestamps
/// per variant. Deterministic given the seed; the variant never affects the
/// sampled outcome or final polarization, only call_made and timing.
TrialRecord sample_trial(const MessageCoefficients& c,
                         const ProtocolVariant& variant, std::uint64_t seed);

/// N independent trials seeded trial_seed(master_seed, i). Identical to N
/// standalone sample_trial calls; the shared pipeline state is built once.
std::vector<TrialRecord> run_trials(const MessageCoefficients& c,
                                    const ProtocolVariant& variant,
                                    std::uint64_t master_seed, int n);

}  // namespace telesim::qt
