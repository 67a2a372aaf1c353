// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dense_oracle.hpp"
#include "telesim/classical_protocol.hpp"
#include "telesim/harness.hpp"
#include "telesim/measurement.hpp"
#include "telesim/qt_protocol.hpp"
#include "telesim/rng.hpp"
#include "test_support.hpp"

namespace {

using namespace ts;
namespace oracle = telesim::oracle;
using telesim::qt::MessageCoefficients;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail) {
  if (!pass) ++failures;
  std::printf("criterion %d [%s] %s — %s\n", index, pass ? "PASS" : "FAIL",
              name.c_str(), detail.c_str());
  std::fflush(stdout);
}

void run_criterion(int index, const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [pass, detail] = body();
    report(index, name, pass, detail);
  } catch (const std::exception& e) {
    report(index, name, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(3);
  out << x;
  return out.str();
}

// --- criterion 1 ----------------------------------------------------------

std::pair<bool, std::string> symbolic_identity() {
  const auto start = Clock::now();
  std::mt19937_64 gen(20240817);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto [alpha, beta] = haar_pair(gen);
    const MessageCoefficients c(alpha, beta);
    const auto run = telesim::qt::symbolic_run(c);  // throws on any violation
    const auto reference = telesim::qt::relabel_message_to_bob(
        telesim::qt::build_message_state(c));
    for (const auto* branch :
         {&run.branch_no_call, &run.branch_call_corrected,
          &run.stages.back().state}) {
      worst = std::max(
          worst, std::abs(telesim::fock::fidelity(*branch, reference) - 1.0));
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = worst <= 1e-12 && elapsed < 1.0;
  return {pass, "100 Haar-random runs, max |1-fidelity| = " + fmt(worst) +
                    ", " + fmt(elapsed) + " s"};
}

// --- criterion 2 ----------------------------------------------------------

std::pair<bool, std::string> stage_goldens() {
  const auto run = telesim::qt::symbolic_run(
      MessageCoefficients(Complex{0.6, 0.0}, Complex{0.8, 0.0}));
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"spdc", "1·(H2,ω·V3,ω) + 1·(V2,ω·H3,ω)"},
      {"joint",
       "0.6·(H1,ω'·H2,ω·V3,ω) + 0.6·(H1,ω'·V2,ω·H3,ω) + "
       "0.8·(V1,ω'·H2,ω·V3,ω) + 0.8·(V1,ω'·V2,ω·H3,ω)"},
      {"merged",
       "0.6·(H1,ω·H1,ω'·V3,ω) + 0.8·(H1,ω·V1,ω'·V3,ω) + "
       "0.6·(H1,ω'·V1,ω·H3,ω) + 0.8·(V1,ω·V1,ω'·H3,ω)"},
      {"summed", "1.4·(H1,ω''·H3,ω) + 1.4·(V1,ω''·V3,ω)"},
      {"split",
       "0.6·(H3,ω·Ha,ω'') + 0.8·(H3,ω·Hc,ω'') + 0.6·(V3,ω·Vb,ω'') + "
       "0.8·(V3,ω·Vd,ω'')"},
      {"factorized",
       "0.6·(H1,ω''·H3,ω) + 0.8·(H1,ω''·V3,ω) + 0.6·(V1,ω''·H3,ω) + "
       "0.8·(V1,ω''·V3,ω)"},
      {"final", "0.6·(H3,ω) + 0.8·(V3,ω)"},
  };
  if (run.stages.size() != expected.size()) {
    return {false, "expected 7 stages, got " +
                       std::to_string(run.stages.size())};
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (run.stages[i].name != expected[i].first ||
        run.stages[i].state.to_text() != expected[i].second) {
      return {false, "stage " + run.stages[i].name + " diverges: " +
                         run.stages[i].state.to_text()};
    }
  }
  return {true, "all 7 stage texts match for (0.6, 0.8)"};
}

// --- criterion 3 ----------------------------------------------------------

std::pair<bool, std::string> detector_law() {
  const auto start = Clock::now();
  std::mt19937_64 gen(5150);
  double worst_exact = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto [alpha, beta] = haar_pair(gen);
    const MessageCoefficients c(alpha, beta);
    const auto summed = telesim::qt::sum_frequencies(
        telesim::qt::merge_alice_channel(telesim::qt::build_joint_state(c)));
    const auto split =
        telesim::qt::split_to_detectors(summed.state, summed.firings);
    const auto d = telesim::qt::detector_distribution(split);
    const double a2 = std::norm(c.alpha) / 2.0;
    const double b2 = std::norm(c.beta) / 2.0;
    using telesim::qt::DetectorOutcome;
    worst_exact = std::max(
        {worst_exact, std::abs(d.at(DetectorOutcome::A) - a2),
         std::abs(d.at(DetectorOutcome::B) - a2),
         std::abs(d.at(DetectorOutcome::C) - b2),
         std::abs(d.at(DetectorOutcome::D) - b2)});
  }

  const int n = 100000;
  const MessageCoefficients c(Complex{0.6, 0.0}, Complex{0.8, 0.0});
  const auto records =
      telesim::qt::run_trials(c, telesim::qt::ProtocolVariant{}, 31, n);
  std::map<telesim::qt::DetectorOutcome, int> counts;
  for (const auto& r : records) counts[r.outcome] += 1;
  const std::map<telesim::qt::DetectorOutcome, double> law = {
      {telesim::qt::DetectorOutcome::A, 0.18},
      {telesim::qt::DetectorOutcome::B, 0.18},
      {telesim::qt::DetectorOutcome::C, 0.32},
      {telesim::qt::DetectorOutcome::D, 0.32},
  };
  double worst_sigma = 0.0;
  bool mc_ok = true;
  for (const auto& [outcome, p] : law) {
    const double freq = counts[outcome] / static_cast<double>(n);
    const double radius = 4.0 * std::sqrt(p * (1.0 - p) / n);
    worst_sigma = std::max(worst_sigma, std::abs(freq - p) / (radius / 4.0));
    if (std::abs(freq - p) > radius) mc_ok = false;
  }
  const double elapsed = seconds_since(start);
  const bool pass = worst_exact <= 1e-12 && mc_ok && elapsed < 5.0;
  return {pass, "exact max error " + fmt(worst_exact) + ", MC worst " +
                    fmt(worst_sigma) + " sigma at N=1e5, " + fmt(elapsed) +
                    " s"};
}

// --- criterion 4 ----------------------------------------------------------

double check_protocol_states_against_oracle() {
  double worst = 0.0;
  const auto track = [&worst](double d) { worst = std::max(worst, d); };
  const std::vector<MessageCoefficients> choices = {
      MessageCoefficients(Complex{0.6, 0.0}, Complex{0.8, 0.0}),
      MessageCoefficients(Complex{0.48, -0.36}, Complex{0.64, 0.48}),
  };
  for (const auto& c : choices) {
    const auto run = telesim::qt::symbolic_run(c);
    for (const auto& stage : run.stages) {
      const oracle::DenseBasis basis(oracle::collect_modes({&stage.state}), 3);
      const auto dense = basis.encode(stage.state);
      track(std::abs(oracle::norm_squared(basis, dense) -
                     telesim::fock::norm_squared(stage.state)));
      track(max_term_difference(basis.decode(dense), stage.state));
    }

    // dichroic merge as an explicit matrix
    const auto joint = telesim::qt::build_joint_state(c);
    const auto merged = telesim::qt::merge_alice_channel(joint);
    std::vector<std::pair<Mode, Mode>> pairs;
    for (const auto p : {H, V}) {
      pairs.emplace_back(mk(p, ch2, fw), mk(p, ch1, fw));
      pairs.emplace_back(mk(p, ch2, fwp), mk(p, ch1, fwp));
    }
    const auto merge_sub = telesim::fock::LinearSubstitution::relabeling(pairs);
    const oracle::DenseBasis mb(
        oracle::closure_under(oracle::collect_modes({&joint, &merged}),
                              merge_sub),
        3);
    track(max_term_difference(
        mb.decode(oracle::apply_matrix(oracle::substitution_matrix(mb, merge_sub),
                                       mb.encode(joint))),
        merged));

    // frequency summation as an explicit matrix
    const auto summed = telesim::qt::sum_frequencies(merged);
    const oracle::DenseBasis rin(oracle::collect_modes({&merged}), 3);
    const oracle::DenseBasis rout(
        oracle::collect_modes({&merged, &summed.state}), 3);
    track(max_term_difference(
        rout.decode(oracle::apply_matrix(oracle::rewrite_matrix(rin, rout),
                                         rin.encode(merged))),
        summed.state));

    // detector statistics and per-outcome collapse
    const auto split =
        telesim::qt::split_to_detectors(summed.state, summed.firings);
    const oracle::DenseBasis sb(oracle::collect_modes({&split}), 2);
    const auto sd = sb.encode(split);
    const auto key = [](const Monomial& m) {
      for (const Mode& mode : m.modes()) {
        if (telesim::fock::is_detector_channel(mode.channel)) {
          return std::string(1, telesim::fock::to_char(mode.channel));
        }
      }
      return std::string("-");
    };
    const auto engine_born = telesim::fock::born_distribution(split, key);
    const auto oracle_born = oracle::born(sb, sd, key);
    for (const auto& [label, p] : engine_born) {
      track(std::abs(oracle_born.at(label) - p));
    }
    for (const Channel channel : {cha, chb, chc, chd}) {
      const auto keep = [channel](const Monomial& m) {
        for (const Mode& mode : m.modes()) {
          if (mode.channel == channel) return true;
        }
        return false;
      };
      const auto absorb = [](const Mode& m) { return m.frequency == fws; };
      const auto engine_branch = telesim::fock::collapse_on(split, keep, absorb);
      const oracle::DenseBasis cb(
          oracle::collect_modes({&split, &engine_branch}), 2);
      track(max_term_difference(
          cb.decode(oracle::collapse(sb, sd, keep, absorb, cb)),
          engine_branch));
    }

    // factorization across 3 | 1
    const auto& factorized = run.stages[5].state;
    const oracle::DenseBasis fb(oracle::collect_modes({&factorized}), 2);
    const auto engine_factors = telesim::fock::factor_check(factorized, {ch3});
    const auto oracle_factors =
        oracle::factor(fb, fb.encode(factorized), {ch3});
    if (!engine_factors || !oracle_factors) return 1.0;
    track(std::abs(telesim::fock::fidelity(engine_factors->first,
                                           oracle_factors->first) -
                   1.0));
    track(std::abs(telesim::fock::fidelity(engine_factors->second,
                                           oracle_factors->second) -
                   1.0));
    if (telesim::fock::factor_check(split, {ch3}).has_value() ||
        oracle::factor(sb, sd, {ch3}).has_value()) {
      return 1.0;  // both must see entanglement here
    }
  }
  return worst;
}

double check_random_states_against_oracle() {
  double worst = 0.0;
  const auto track = [&worst](double d) { worst = std::max(worst, d); };
  std::mt19937_64 gen(987654321);
  const auto pool = random_pool();
  const auto substitution = rotation(ch1, 0.37);

  for (int i = 0; i < 1000; ++i) {
    const auto a = random_state(gen, pool);
    const auto b = random_state(gen, pool);
    const auto modes = oracle::collect_modes({&a, &b});
    const oracle::DenseBasis basis(oracle::closure_under(modes, substitution),
                                   3);
    const auto da = basis.encode(a);
    const auto db = basis.encode(b);

    track(std::abs(oracle::dot(basis, da, db) -
                   telesim::fock::inner_product(a, b)));
    track(std::abs(oracle::norm_squared(basis, da) -
                   telesim::fock::norm_squared(a)));
    track(max_term_difference(
        basis.decode(oracle::apply_matrix(
            oracle::substitution_matrix(basis, substitution), da)),
        telesim::fock::apply_substitution(substitution, a)));

    if (i % 3 == 0) {
      const auto extra = sv({{Complex{0.5, 0.5}, mono({mk(V, ch3, fwp)})}});
      std::set<Mode> union_modes(modes.begin(), modes.end());
      union_modes.insert(mk(V, ch3, fwp));
      const oracle::DenseBasis big(
          std::vector<Mode>(union_modes.begin(), union_modes.end()), 4);
      const oracle::DenseBasis eb(oracle::collect_modes({&extra}), 1);
      track(max_term_difference(
          big.decode(oracle::tensor(basis, da, eb, eb.encode(extra), big)),
          telesim::fock::tensor(a, extra)));
    }

    if (i % 5 == 0) {
      // random valid rewrite input: one ω' + one ω pair plus a spectator
      std::uniform_int_distribution<int> coin(0, 1);
      StateVector v;
      for (int t = 0; t < 3; ++t) {
        v.add_term(
            Monomial({mk(coin(gen) != 0 ? H : V, ch1, fwp),
                      mk(coin(gen) != 0 ? H : V, ch1, fw),
                      mk(coin(gen) != 0 ? H : V, ch3, fw)}),
            Complex{std::uniform_real_distribution<double>(-1, 1)(gen),
                    std::uniform_real_distribution<double>(-1, 1)(gen)});
      }
      if (v.is_zero()) continue;
      const auto result = telesim::fock::apply_pair_rewrite(
          telesim::fock::crystal_rules(), v);
      std::vector<Mode> out_modes = oracle::collect_modes({&v, &result.state});
      out_modes.push_back(mk(H, ch1, fws));
      out_modes.push_back(mk(V, ch1, fws));
      const oracle::DenseBasis rin(oracle::collect_modes({&v}), 3);
      const oracle::DenseBasis rout(out_modes, 3);
      track(max_term_difference(
          rout.decode(oracle::apply_matrix(oracle::rewrite_matrix(rin, rout),
                                           rin.encode(v))),
          result.state));
    }
  }
  return worst;
}

std::pair<bool, std::string> oracle_equivalence() {
  const double protocol_worst = check_protocol_states_against_oracle();
  const double random_worst = check_random_states_against_oracle();
  const double worst = std::max(protocol_worst, random_worst);
  return {worst <= 1e-12,
          "protocol states max deviation " + fmt(protocol_worst) +
              ", 1000 random states max deviation " + fmt(random_worst)};
}

// --- criterion 5 ----------------------------------------------------------

std::pair<bool, std::string> energy_conservation() {
  const auto table = telesim::fock::WavelengthTable::reference();
  table.validate();
  const double lambda_out = *table.get(fws);
  char rounded[32];
  std::snprintf(rounded, sizeof(rounded), "%.6f", lambda_out);
  if (std::string(rounded) != "0.411765") {
    return {false, std::string("summed wavelength rounds to ") + rounded};
  }

  // every fired rule on a full pipeline run
  const auto summed = telesim::qt::sum_frequencies(telesim::qt::merge_alice_channel(
      telesim::qt::build_joint_state(
          MessageCoefficients(Complex{0.6, 0.0}, Complex{0.8, 0.0}))));
  const double inv_sum = 1.0 / *table.get(fwp) + 1.0 / *table.get(fw);
  double worst_rel = 0.0;
  int fired = 0;
  for (const auto& [input, firing] : summed.firings) {
    (void)input;
    const auto& rule =
        telesim::fock::crystal_rules()[static_cast<std::size_t>(firing.rule_index - 1)];
    if (rule.output.frequency != fws) return {false, "non-ω'' rule output"};
    worst_rel = std::max(worst_rel,
                         std::abs(1.0 / lambda_out - inv_sum) / (1.0 / lambda_out));
    ++fired;
  }
  const bool pass = fired == 4 && worst_rel <= 1e-9;
  return {pass, "4 fired rules, max relative error " + fmt(worst_rel) +
                    ", λ_out = " + rounded + " µm"};
}

// --- criterion 6 ----------------------------------------------------------

std::pair<bool, std::string> classical_exactness() {
  const auto start = Clock::now();
  using telesim::classical::ClassicalMessage;

  int mismatches = 0;
  for (int symbol_block = 0; symbol_block < 512; ++symbol_block) {
    const std::vector<int> symbols = {symbol_block / 64,
                                      (symbol_block / 8) % 8,
                                      symbol_block % 8};
    const auto message = ClassicalMessage::from_symbols(symbols);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto run = telesim::classical::run_classical_teleport(
          message, telesim::rng::trial_seed(1555, 100 * static_cast<std::uint64_t>(symbol_block) + seed));
      if (run.box != message.balls) ++mismatches;
    }
  }

  // one long stream for the rates
  std::mt19937_64 gen(8080);
  std::vector<telesim::classical::BallColor> balls(50000);
  for (auto& ball : balls) {
    ball = (gen() & 1) != 0 ? telesim::classical::BallColor::B
                            : telesim::classical::BallColor::R;
  }
  const auto run = telesim::classical::run_classical_teleport(
      ClassicalMessage::from_balls(balls), 616);
  int discarded = 0;
  int replaced = 0;
  int surviving = 0;
  for (const auto& record : run.records) {
    if (record.filtered) {
      ++discarded;
    } else {
      ++surviving;
      if (*record.instruction ==
          telesim::classical::ClassicalInstruction::Replace) {
        ++replaced;
      }
    }
  }
  const auto total = static_cast<double>(run.records.size());
  const double discard_rate = discarded / total;
  const double replace_rate = replaced / static_cast<double>(surviving);
  const double discard_radius = 4.0 * std::sqrt(0.25 / total);
  const double replace_radius = 4.0 * std::sqrt(0.25 / surviving);
  const double elapsed = seconds_since(start);
  const bool pass = mismatches == 0 &&
                    std::abs(discard_rate - 0.5) <= discard_radius &&
                    std::abs(replace_rate - 0.5) <= replace_radius &&
                    elapsed < 10.0;
  return {pass, "512 messages x 100 seeds, " + std::to_string(mismatches) +
                    " mismatches; discard " + fmt(discard_rate) +
                    ", replace " + fmt(replace_rate) + " over " +
                    std::to_string(run.records.size()) + " pairs, " +
                    fmt(elapsed) + " s"};
}

// --- criterion 7 ----------------------------------------------------------

std::pair<bool, std::string> variant_equivalence() {
  const MessageCoefficients c(Complex{0.6, 0.0}, Complex{0.8, 0.0});
  telesim::qt::ProtocolVariant four;
  telesim::qt::ProtocolVariant two;
  two.crystal_count = 2;
  const int n = 10000;
  const auto batch_four = telesim::qt::run_trials(c, four, 2718, n);
  const auto batch_two = telesim::qt::run_trials(c, two, 2718, n);
  int divergences = 0;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (batch_four[k].bob_polarization_final !=
            batch_two[k].bob_polarization_final ||
        batch_four[k].outcome != batch_two[k].outcome) {
      ++divergences;
    }
  }
  return {divergences == 0, std::to_string(n) + " shared seeds, " +
                                std::to_string(divergences) + " divergences"};
}

// --- criterion 8 ----------------------------------------------------------

std::pair<bool, std::string> equivalence_report() {
  namespace harness = telesim::harness;
  double worst_diff = 0.0;
  double allowed = 0.0;
  for (const bool h_basis : {true, false}) {
    harness::RunConfig cfg;
    cfg.command = harness::Command::Compare;
    cfg.alpha = h_basis ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    cfg.beta = h_basis ? Complex{0.0, 0.0} : Complex{1.0, 0.0};
    cfg.trials = 100000;
    cfg.seed = 4242;
    const auto report = harness::compare_protocols(cfg);
    if (!report.rates_consistent || !report.bob_h_consistent) {
      return {false, "inconsistent report for a basis message"};
    }
    worst_diff = std::max(worst_diff,
                          std::abs(report.quantum_correction_rate -
                                   report.classical_replace_rate));
    allowed = report.rate_difference_allowed;
  }
  return {true, "N=1e5 per side, worst |q-c| = " + fmt(worst_diff) +
                    " within " + fmt(allowed)};
}

}  // namespace

int main() {
  run_criterion(1, "symbolic teleportation identity", symbolic_identity);
  run_criterion(2, "stage-exactness golden test", stage_goldens);
  run_criterion(3, "detector law", detector_law);
  run_criterion(4, "oracle equivalence", oracle_equivalence);
  run_criterion(5, "energy conservation", energy_conservation);
  run_criterion(6, "classical exactness", classical_exactness);
  run_criterion(7, "variant equivalence", variant_equivalence);
  run_criterion(8, "equivalence report", equivalence_report);

  std::printf("summary: %d/8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
