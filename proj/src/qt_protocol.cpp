#include "telesim/qt_protocol.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "telesim/rng.hpp"

namespace telesim::qt {

using fock::Channel;
using fock::FrequencyLabel;
using fock::LinearSubstitution;
using fock::Mode;

namespace {

const Mode kMessageH{Polarization::H, Channel::Ch1, FrequencyLabel::OmegaPrime};
const Mode kMessageV{Polarization::V, Channel::Ch1, FrequencyLabel::OmegaPrime};

bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

DetectorOutcome outcome_for_rule(int rule_index) {
  switch (rule_index) {
    case 1: return DetectorOutcome::A;
    case 2: return DetectorOutcome::B;
    case 3: return DetectorOutcome::C;
    case 4: return DetectorOutcome::D;
    default: throw std::invalid_argument("rule index out of range");
  }
}

bool is_summed_alice_mode(const Mode& m) {
  return m.channel == Channel::Ch1 &&
         m.frequency == FrequencyLabel::OmegaDoublePrime;
}

bool contains_channel(const Monomial& m, Channel c) {
  for (const Mode& mode : m.modes()) {
    if (mode.channel == c) return true;
  }
  return false;
}

bool absorb_summed(const Mode& m) {
  return m.frequency == FrequencyLabel::OmegaDoublePrime;
}

}  // namespace

MessageCoefficients::MessageCoefficients(Complex a, Complex b)
    : alpha(a), beta(b) {
  if (!finite(a) || !finite(b)) {
    throw std::invalid_argument("message coefficients must be finite");
  }
  const double total = std::norm(a) + std::norm(b);
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw std::invalid_argument(
        "message coefficients must satisfy |α|²+|β|²=1, got " +
        fock::detail::format_real(total));
  }
}

char to_char(DetectorOutcome o) {
  switch (o) {
    case DetectorOutcome::A: return 'A';
    case DetectorOutcome::B: return 'B';
    case DetectorOutcome::C: return 'C';
    case DetectorOutcome::D: return 'D';
  }
  throw std::logic_error("unreachable outcome value");
}

Channel detector_channel(DetectorOutcome o) {
  switch (o) {
    case DetectorOutcome::A: return Channel::ChA;
    case DetectorOutcome::B: return Channel::ChB;
    case DetectorOutcome::C: return Channel::ChC;
    case DetectorOutcome::D: return Channel::ChD;
  }
  throw std::logic_error("unreachable outcome value");
}

std::string to_string(Instruction i) {
  switch (i) {
    case Instruction::NoOp: return "none";
    case Instruction::FlipVtoH: return "v->h";
    case Instruction::FlipHtoV: return "h->v";
  }
  throw std::logic_error("unreachable instruction value");
}

Instruction alice_instruction(DetectorOutcome o) {
  switch (o) {
    case DetectorOutcome::A: return Instruction::NoOp;
    case DetectorOutcome::B: return Instruction::FlipVtoH;
    case DetectorOutcome::C: return Instruction::FlipHtoV;
    case DetectorOutcome::D: return Instruction::NoOp;
  }
  throw std::logic_error("unreachable outcome value");
}

void ProtocolVariant::validate() const {
  if (crystal_count != 2 && crystal_count != 4) {
    throw std::invalid_argument("crystal count must be 2 or 4");
  }
  if (timeout_dt < 1) {
    throw std::invalid_argument("timeout must be a positive duration");
  }
  if (call_latency < 0) {
    throw std::invalid_argument("call latency must be nonnegative");
  }
}

StateVector build_message_state(const MessageCoefficients& c) {
  return fock::linear_combine({
      {c.alpha, StateVector::single(Monomial{{kMessageH}})},
      {c.beta, StateVector::single(Monomial{{kMessageV}})},
  });
}

StateVector build_spdc_state() {
  using enum Polarization;
  const Mode h2{H, Channel::Ch2, FrequencyLabel::Omega};
  const Mode v2{V, Channel::Ch2, FrequencyLabel::Omega};
  const Mode h3{H, Channel::Ch3, FrequencyLabel::Omega};
  const Mode v3{V, Channel::Ch3, FrequencyLabel::Omega};
  StateVector v;
  v.add_term(Monomial{{v2, h3}}, Complex{1.0, 0.0});
  v.add_term(Monomial{{h2, v3}}, Complex{1.0, 0.0});
  return v;
}

StateVector build_joint_state(const MessageCoefficients& c) {
  return tensor(build_message_state(c), build_spdc_state());
}

StateVector merge_alice_channel(const StateVector& v) {
  std::vector<std::pair<Mode, Mode>> pairs;
  for (const auto p : {Polarization::H, Polarization::V}) {
    for (const auto f : {FrequencyLabel::Omega, FrequencyLabel::OmegaPrime,
                         FrequencyLabel::OmegaDoublePrime,
                         FrequencyLabel::OmegaPump}) {
      pairs.emplace_back(Mode{p, Channel::Ch2, f}, Mode{p, Channel::Ch1, f});
    }
  }
  return apply_substitution(LinearSubstitution::relabeling(pairs), v);
}

fock::PairRewriteResult sum_frequencies(const StateVector& v) {
  return fock::apply_pair_rewrite(fock::crystal_rules(), v);
}

StateVector split_to_detectors(const StateVector& summed,
                               const FiringMap& firings) {
  StateVector reconstructed;
  for (const auto& [input, firing] : firings) {
    (void)input;
    reconstructed.add_term(firing.rewritten, firing.amplitude);
  }
  StateVector difference = fock::linear_combine(
      {{Complex{1.0, 0.0}, reconstructed}, {Complex{-1.0, 0.0}, summed}});
  if (!difference.is_zero()) {
    throw std::invalid_argument(
        "firing tags do not reconstruct the summed state (missing tag?)");
  }

  StateVector split;
  for (const auto& [input, firing] : firings) {
    (void)input;
    const Channel target = detector_channel(outcome_for_rule(firing.rule_index));
    std::vector<Mode> modes;
    for (const Mode& mode : firing.rewritten.modes()) {
      modes.push_back(is_summed_alice_mode(mode)
                          ? Mode{mode.polarization, target, mode.frequency}
                          : mode);
    }
    split.add_term(Monomial{std::move(modes)}, firing.amplitude);
  }
  return split;
}

StateVector apply_bob_correction(const StateVector& v, Instruction i) {
  if (i == Instruction::NoOp) return v;
  return apply_substitution(LinearSubstitution::polarization_swap(Channel::Ch3),
                            v);
}

std::map<DetectorOutcome, double> detector_distribution(
    const StateVector& split) {
  const auto keyed = fock::born_distribution(split, [](const Monomial& m) {
    for (const Mode& mode : m.modes()) {
      if (fock::is_detector_channel(mode.channel)) {
        return std::string(1, fock::to_char(mode.channel));
      }
    }
    return std::string("none");
  });
  std::map<DetectorOutcome, double> distribution;
  for (const auto o : {DetectorOutcome::A, DetectorOutcome::B,
                       DetectorOutcome::C, DetectorOutcome::D}) {
    const auto it = keyed.find(std::string(1, fock::to_char(detector_channel(o))));
    distribution[o] = it == keyed.end() ? 0.0 : it->second;
  }
  return distribution;
}

StateVector relabel_message_to_bob(const StateVector& message) {
  using enum Polarization;
  return apply_substitution(
      LinearSubstitution::relabeling({
          {kMessageH, Mode{H, Channel::Ch3, FrequencyLabel::Omega}},
          {kMessageV, Mode{V, Channel::Ch3, FrequencyLabel::Omega}},
      }),
      message);
}

namespace {

constexpr double kFidelityTolerance = 1e-12;

void require_matches_message(const std::string& stage, const StateVector& state,
                             const StateVector& reference) {
  const double f = fidelity(state, reference);
  if (std::abs(f - 1.0) > kFidelityTolerance) {
    throw StageError(stage, "fidelity against the message is " +
                                fock::detail::format_real(f) + ", expected 1");
  }
}

}  // namespace

SymbolicRun symbolic_run(const MessageCoefficients& c) {
  SymbolicRun run;
  const StateVector message = build_message_state(c);
  const StateVector reference = relabel_message_to_bob(message);

  const StateVector spdc = build_spdc_state();
  run.stages.push_back({"spdc", spdc});

  const StateVector joint = build_joint_state(c);
  run.stages.push_back({"joint", joint});

  const StateVector merged = merge_alice_channel(joint);
  run.stages.push_back({"merged", merged});

  const auto summed = sum_frequencies(merged);
  run.stages.push_back({"summed", summed.state});

  const StateVector split = split_to_detectors(summed.state, summed.firings);
  run.stages.push_back({"split", split});

  // The corrected, still-unmeasured state: flips folded into the firings of
  // crystals 2 and 3. A bookkeeping form only; no experimental stage ever
  // holds this state.
  StateVector factorized;
  for (const auto& [input, firing] : summed.firings) {
    (void)input;
    const Instruction i = alice_instruction(outcome_for_rule(firing.rule_index));
    const StateVector term =
        apply_bob_correction(StateVector::single(firing.rewritten), i);
    factorized = fock::linear_combine(
        {{Complex{1.0, 0.0}, factorized}, {firing.amplitude, term}});
  }
  run.stages.push_back({"factorized", factorized});

  const auto factors = fock::factor_check(factorized, {Channel::Ch3});
  if (!factors) {
    throw StageError("factorized",
                     "corrected state does not factorize across channels 3|1");
  }
  require_matches_message("factorized", factors->first, reference);

  const StateVector final_state = fock::collapse_on(
      factorized, [](const Monomial&) { return true; }, absorb_summed);
  run.stages.push_back({"final", final_state});
  require_matches_message("final", final_state, reference);

  run.branch_no_call = fock::collapse_on(
      split,
      [](const Monomial& m) {
        return contains_channel(m, Channel::ChA) ||
               contains_channel(m, Channel::ChD);
      },
      absorb_summed);
  require_matches_message("branch-no-call", run.branch_no_call, reference);

  const StateVector call_branch = fock::collapse_on(
      split,
      [](const Monomial& m) {
        return contains_channel(m, Channel::ChB) ||
               contains_channel(m, Channel::ChC);
      },
      absorb_summed);
  run.branch_call_corrected =
      apply_bob_correction(call_branch, Instruction::FlipVtoH);
  require_matches_message("branch-call", run.branch_call_corrected, reference);

  return run;
}

namespace {

/// Shared per-batch sampling state: the split state's click distribution and
/// Bob's corrected polarization per outcome, all derived once through the
/// state pipeline.
struct TrialContext {
  ProtocolVariant variant;
  std::array<double, 4> cumulative{};
  std::array<Polarization, 4> final_polarization{};

  TrialContext(const MessageCoefficients& c, const ProtocolVariant& v)
      : variant(v) {
    variant.validate();
    const auto summed = sum_frequencies(merge_alice_channel(build_joint_state(c)));
    const StateVector split = split_to_detectors(summed.state, summed.firings);
    const auto distribution = detector_distribution(split);

    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
      const auto outcome = static_cast<DetectorOutcome>(k);
      const double p = distribution.at(outcome);
      acc += p;
      cumulative[k] = acc;
      if (p > 0.0) {
        const StateVector branch = fock::collapse_on(
            split,
            [outcome](const Monomial& m) {
              return contains_channel(m, detector_channel(outcome));
            },
            absorb_summed);
        const StateVector corrected =
            apply_bob_correction(branch, alice_instruction(outcome));
        final_polarization[k] = bob_polarization(corrected);
      } else {
        final_polarization[k] = Polarization::H;  // unreachable branch
      }
    }
    cumulative[3] = 1.0;  // guard against rounding at the top end
  }

  static Polarization bob_polarization(const StateVector& branch) {
    for (const auto& [monomial, amplitude] : branch.terms()) {
      (void)amplitude;
      for (const Mode& mode : monomial.modes()) {
        if (mode.channel == Channel::Ch3) return mode.polarization;
      }
    }
    throw std::logic_error("branch state carries no channel-3 photon");
  }

  TrialRecord sample(std::uint64_t seed) const {
    rng::Stream stream(seed);
    const double u = stream.uniform01();
    int k = 0;
    while (k < 3 && u >= cumulative[k]) ++k;
    const auto outcome = static_cast<DetectorOutcome>(k);

    TrialRecord record;
    record.seed = seed;
    record.outcome = outcome;
    record.instruction = alice_instruction(outcome);
    record.bob_polarization_final = final_polarization[k];
    record.call_made = variant.crystal_count == 4 ||
                       record.instruction != Instruction::NoOp;

    Timestamps& t = record.timestamps;
    t.photon_arrival = 0;
    t.click = 1;
    if (record.call_made) {
      t.call_sent = t.click;
      t.correction_applied = *t.call_sent + variant.call_latency;
    } else {
      t.correction_applied = t.photon_arrival + variant.timeout_dt;
    }
    t.detection = t.correction_applied + 1;
    return record;
  }
};

}  // namespace

TrialRecord sample_trial(const MessageCoefficients& c,
                         const ProtocolVariant& variant, std::uint64_t seed) {
  return TrialContext(c, variant).sample(seed);
}

std::vector<TrialRecord> run_trials(const MessageCoefficients& c,
                                    const ProtocolVariant& variant,
                                    std::uint64_t master_seed, int n) {
  if (n < 0) throw std::invalid_argument("trial count must be nonnegative");
  const TrialContext context(c, variant);
  std::vector<TrialRecord> records;
  records.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    records.push_back(
        context.sample(rng::trial_seed(master_seed, static_cast<std::uint64_t>(i))));
  }
  return records;
}

}  // namespace telesim::qt
