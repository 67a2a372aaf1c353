#include "telesim/rewrite.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace telesim::fock {

const std::array<RewriteRule, 4>& crystal_rules() {
  using enum Polarization;
  using enum FrequencyLabel;
  static const std::array<RewriteRule, 4> rules = {{
      {1, {H, OmegaPrime}, {V, Omega},
       Mode{H, Channel::Ch1, OmegaDoublePrime}, PhaseMatching::TypeII},
      {2, {H, OmegaPrime}, {H, Omega},
       Mode{V, Channel::Ch1, OmegaDoublePrime}, PhaseMatching::TypeI},
      {3, {V, OmegaPrime}, {V, Omega},
       Mode{H, Channel::Ch1, OmegaDoublePrime}, PhaseMatching::TypeI},
      {4, {V, OmegaPrime}, {H, Omega},
       Mode{V, Channel::Ch1, OmegaDoublePrime}, PhaseMatching::TypeII},
  }};
  return rules;
}

namespace {

using Pattern = std::pair<Polarization, FrequencyLabel>;

bool matches_unordered(const RewriteRule& rule, const Pattern& x,
                       const Pattern& y) {
  return (rule.input_a == x && rule.input_b == y) ||
         (rule.input_a == y && rule.input_b == x);
}

}  // namespace

PairRewriteResult apply_pair_rewrite(std::span<const RewriteRule> rules,
                                     const StateVector& v) {
  PairRewriteResult result;
  for (const auto& [monomial, amplitude] : v.terms()) {
    std::vector<Mode> passthrough;
    std::vector<Mode> channel1_pair;
    for (const Mode& mode : monomial.modes()) {
      const bool summable =
          mode.channel == Channel::Ch1 &&
          (mode.frequency == FrequencyLabel::Omega ||
           mode.frequency == FrequencyLabel::OmegaPrime);
      (summable ? channel1_pair : passthrough).push_back(mode);
    }
    const auto count_freq = [&](FrequencyLabel f) {
      return std::count_if(channel1_pair.begin(), channel1_pair.end(),
                           [f](const Mode& m) { return m.frequency == f; });
    };
    if (channel1_pair.size() != 2 ||
        count_freq(FrequencyLabel::OmegaPrime) != 1 ||
        count_freq(FrequencyLabel::Omega) != 1) {
      throw std::invalid_argument(
          "pair rewrite needs exactly one channel-1 ω' mode and one channel-1 "
          "ω mode in " +
          monomial.to_string());
    }

    const Pattern x{channel1_pair[0].polarization, channel1_pair[0].frequency};
    const Pattern y{channel1_pair[1].polarization, channel1_pair[1].frequency};
    const RewriteRule* fired = nullptr;
    for (const RewriteRule& rule : rules) {
      if (!matches_unordered(rule, x, y)) continue;
      if (fired != nullptr) {
        throw std::invalid_argument("ambiguous rewrite: rules " +
                                    std::to_string(fired->index) + " and " +
                                    std::to_string(rule.index) +
                                    " both match " + monomial.to_string());
      }
      fired = &rule;
    }
    if (fired == nullptr) {
      throw std::invalid_argument("no rewrite rule matches " +
                                  monomial.to_string());
    }

    passthrough.push_back(fired->output);
    Monomial rewritten{std::move(passthrough)};
    result.state.add_term(rewritten, amplitude);
    result.firings.emplace(monomial,
                           RuleFiring{fired->index, amplitude, rewritten});
  }
  return result;
}

}  // namespace telesim::fock
