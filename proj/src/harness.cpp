#include "telesim/harness.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "telesim/rng.hpp"

namespace telesim::harness {

namespace {

using ordered_json = nlohmann::ordered_json;

// Sub-seed salts so the comparison's quantum batch, classical machines, and
// sampled message never share a stream.
constexpr std::uint64_t kClassicalSalt = 0x636c617373ULL;  // "class"
constexpr std::uint64_t kMessageSalt = 0x6d657373ULL;      // "mess"

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return std::string(buf);
}

std::string variant_name(const qt::ProtocolVariant& v) {
  return v.crystal_count == 2 ? "two-crystal" : "four-crystal";
}

/// 4σ radius of an empirical rate around success probability p over n draws.
double binomial_radius(double p, int n) {
  return 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

struct RunSummary {
  std::map<qt::DetectorOutcome, int> outcome_counts;
  double correction_rate = 0.0;
  double final_h_rate = 0.0;
};

RunSummary summarize(const std::vector<qt::TrialRecord>& records) {
  RunSummary s;
  for (auto o : {qt::DetectorOutcome::A, qt::DetectorOutcome::B,
                 qt::DetectorOutcome::C, qt::DetectorOutcome::D}) {
    s.outcome_counts[o] = 0;
  }
  int corrections = 0;
  int finals_h = 0;
  for (const auto& r : records) {
    ++s.outcome_counts[r.outcome];
    if (r.instruction != qt::Instruction::NoOp) ++corrections;
    if (r.bob_polarization_final == fock::Polarization::H) ++finals_h;
  }
  const double n = static_cast<double>(records.size());
  if (!records.empty()) {
    s.correction_rate = corrections / n;
    s.final_h_rate = finals_h / n;
  }
  return s;
}

/// The classical message matched to (α, β): each ball independently R with
/// probability |α|², so basis messages map exactly H↔all-R, V↔all-B.
classical::ClassicalMessage matched_message(const qt::MessageCoefficients& c,
                                            int length, std::uint64_t seed) {
  const double p_r = std::norm(c.alpha);
  rng::Stream stream(seed);
  std::vector<classical::BallColor> balls;
  balls.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    balls.push_back(stream.uniform01() < p_r ? classical::BallColor::R
                                             : classical::BallColor::B);
  }
  return classical::ClassicalMessage::from_balls(std::move(balls));
}

}  // namespace

qt::MessageCoefficients RunConfig::coefficients() const {
  const double total = std::norm(alpha) + std::norm(beta);
  if (!(std::abs(total - 1.0) <= kCliNormTolerance)) {
    throw std::invalid_argument(
        "unnormalized input: |alpha|^2 + |beta|^2 = " +
        fock::detail::format_real(total) + ", expected 1 within 1e-9");
  }
  fock::Complex a = alpha;
  fock::Complex b = beta;
  if (std::abs(total - 1.0) > 1e-13) {
    const double scale = 1.0 / std::sqrt(total);
    a *= scale;
    b *= scale;
  }
  return qt::MessageCoefficients(a, b);
}

ComparisonReport compare_protocols(const RunConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const qt::MessageCoefficients c = cfg.coefficients();

  ComparisonReport report;
  report.trials = cfg.trials;
  report.alpha_squared = std::norm(c.alpha);

  const auto records = qt::run_trials(c, cfg.variant, cfg.seed, cfg.trials);
  const RunSummary summary = summarize(records);
  report.quantum_correction_rate = summary.correction_rate;
  report.quantum_bob_h_rate = summary.final_h_rate;

  const auto message = matched_message(
      c, cfg.trials, rng::mix64(cfg.seed ^ kMessageSalt));
  int r_count = 0;
  for (auto ball : message.balls) {
    if (ball == classical::BallColor::R) ++r_count;
  }
  report.message_r_fraction = r_count / static_cast<double>(cfg.trials);

  const auto classical_run = classical::run_classical_teleport(
      message, rng::mix64(cfg.seed ^ kClassicalSalt));
  int surviving = 0;
  int replaces = 0;
  for (const auto& r : classical_run.records) {
    if (!r.instruction) continue;
    ++surviving;
    if (*r.instruction == classical::ClassicalInstruction::Replace) ++replaces;
  }
  report.classical_replace_rate =
      surviving > 0 ? replaces / static_cast<double>(surviving) : 0.0;

  // Both rates are coin flips of the respective machines (p = 1/2 exactly),
  // independent of the message, so the theoretical radii are known.
  report.rate_difference_allowed = 2.0 * binomial_radius(0.5, cfg.trials);
  report.rates_consistent =
      std::abs(report.quantum_correction_rate - report.classical_replace_rate) <=
      report.rate_difference_allowed;

  report.bob_h_allowed =
      binomial_radius(report.alpha_squared, cfg.trials);
  report.bob_h_consistent =
      std::abs(report.quantum_bob_h_rate - report.alpha_squared) <=
      report.bob_h_allowed;
  return report;
}

int cmd_symbolic(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const qt::MessageCoefficients c = cfg.coefficients();
    const qt::SymbolicRun run = qt::symbolic_run(c);
    for (const auto& stage : run.stages) {
      out << trace::stage_line(stage.name, stage.state, cfg.format) << "\n";
    }
    if (cfg.format == trace::Format::Text) {
      out << "checks=passed\n";
    } else {
      ordered_json j;
      j["checks"] = "passed";
      out << j.dump() << "\n";
    }
    return 0;
  } catch (const qt::StageError& e) {
    err << "error stage=" << e.stage() << ": " << e.what() << "\n";
    return 1;
  }
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.trials < 1) {
    err << "error: trials must be >= 1\n";
    return 2;
  }
  const qt::MessageCoefficients c = cfg.coefficients();
  const auto records = qt::run_trials(c, cfg.variant, cfg.seed, cfg.trials);
  for (const auto& r : records) {
    out << trace::trial_line(r, cfg.format) << "\n";
  }
  const RunSummary summary = summarize(records);
  if (cfg.format == trace::Format::Text) {
    out << "trials=" << cfg.trials << " seed=" << cfg.seed
        << " variant=" << variant_name(cfg.variant) << "\n";
    out << "outcomes";
    for (const auto& [outcome, count] : summary.outcome_counts) {
      out << " " << qt::to_char(outcome) << "=" << count;
    }
    out << "\n";
    out << "correction_rate=" << fmt6(summary.correction_rate) << "\n";
    out << "final_h_rate=" << fmt6(summary.final_h_rate) << "\n";
  } else {
    ordered_json j;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["variant"] = variant_name(cfg.variant);
    ordered_json outcomes;
    for (const auto& [outcome, count] : summary.outcome_counts) {
      outcomes[std::string(1, qt::to_char(outcome))] = count;
    }
    j["outcomes"] = outcomes;
    j["correction_rate"] = summary.correction_rate;
    j["final_h_rate"] = summary.final_h_rate;
    out << j.dump() << "\n";
  }
  (void)err;
  return 0;
}

int cmd_classical(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto run = classical::run_classical_teleport(cfg.message, cfg.seed);
  for (const auto& r : run.records) {
    out << trace::classical_line(r, cfg.format) << "\n";
  }
  int discarded = 0;
  int surviving = 0;
  int replaces = 0;
  for (const auto& r : run.records) {
    if (r.filtered) {
      ++discarded;
    } else {
      ++surviving;
      if (r.instruction &&
          *r.instruction == classical::ClassicalInstruction::Replace) {
        ++replaces;
      }
    }
  }
  const int total = discarded + surviving;
  const double discard_rate =
      total > 0 ? discarded / static_cast<double>(total) : 0.0;
  const double replace_rate =
      surviving > 0 ? replaces / static_cast<double>(surviving) : 0.0;
  const std::string box = classical::ClassicalMessage::from_balls(run.box)
                              .balls_text();
  const bool match = run.box == cfg.message.balls;
  if (cfg.format == trace::Format::Text) {
    out << "message=" << cfg.message.balls_text() << "\n";
    out << "box=" << box << "\n";
    out << "match=" << (match ? "yes" : "no") << "\n";
    out << "pairs=" << total << " discarded=" << discarded << "\n";
    out << "discard_rate=" << fmt6(discard_rate)
        << " replace_rate=" << fmt6(replace_rate) << "\n";
  } else {
    ordered_json j;
    j["message"] = cfg.message.balls_text();
    j["box"] = box;
    j["match"] = match;
    j["pairs"] = total;
    j["discarded"] = discarded;
    j["discard_rate"] = discard_rate;
    j["replace_rate"] = replace_rate;
    out << j.dump() << "\n";
  }
  if (!match) {
    err << "error: box does not match the message\n";
    return 1;
  }
  return 0;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.trials < 1) {
    err << "error: trials must be >= 1\n";
    return 2;
  }
  const ComparisonReport r = compare_protocols(cfg);
  const double rate_diff =
      std::abs(r.quantum_correction_rate - r.classical_replace_rate);
  const double bob_h_diff = std::abs(r.quantum_bob_h_rate - r.alpha_squared);
  if (cfg.format == trace::Format::Text) {
    out << "trials=" << r.trials << " seed=" << cfg.seed << "\n";
    out << "message_r_fraction=" << fmt6(r.message_r_fraction) << "\n";
    out << "quantum_correction_rate=" << fmt6(r.quantum_correction_rate)
        << "\n";
    out << "classical_replace_rate=" << fmt6(r.classical_replace_rate) << "\n";
    out << "correction_vs_replace diff=" << fmt6(rate_diff)
        << " allowed=" << fmt6(r.rate_difference_allowed)
        << " consistent=" << (r.rates_consistent ? "yes" : "no") << "\n";
    out << "final_h_rate=" << fmt6(r.quantum_bob_h_rate)
        << " expected=" << fmt6(r.alpha_squared)
        << " diff=" << fmt6(bob_h_diff) << " allowed=" << fmt6(r.bob_h_allowed)
        << " consistent=" << (r.bob_h_consistent ? "yes" : "no") << "\n";
  } else {
    ordered_json j;
    j["trials"] = r.trials;
    j["seed"] = cfg.seed;
    j["message_r_fraction"] = r.message_r_fraction;
    j["quantum_correction_rate"] = r.quantum_correction_rate;
    j["classical_replace_rate"] = r.classical_replace_rate;
    j["rate_difference_allowed"] = r.rate_difference_allowed;
    j["rates_consistent"] = r.rates_consistent;
    j["final_h_rate"] = r.quantum_bob_h_rate;
    j["alpha_squared"] = r.alpha_squared;
    j["bob_h_allowed"] = r.bob_h_allowed;
    j["bob_h_consistent"] = r.bob_h_consistent;
    out << j.dump() << "\n";
  }
  if (!r.rates_consistent || !r.bob_h_consistent) {
    err << "error: rates outside the 4-sigma radius\n";
    return 1;
  }
  return 0;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::Symbolic:
        return cmd_symbolic(cfg, out, err);
      case Command::Run:
        return cmd_run(cfg, out, err);
      case Command::Classical:
        return cmd_classical(cfg, out, err);
      case Command::Compare:
        return cmd_compare(cfg, out, err);
    }
    err << "error: unknown command\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace telesim::harness
