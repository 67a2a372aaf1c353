#include "telesim/substitution.hpp"

#include <set>
#include <stdexcept>

namespace telesim::fock {

void LinearSubstitution::set_rule(const Mode& from, Expansion to) {
  std::set<Mode> seen;
  for (const auto& [coefficient, mode] : to) {
    (void)coefficient;
    if (!seen.insert(mode).second) {
      throw std::invalid_argument("substitution rule for " + from.to_string() +
                                  " repeats output mode " + mode.to_string());
    }
  }
  rules_[from] = std::move(to);
}

LinearSubstitution LinearSubstitution::relabeling(
    const std::vector<std::pair<Mode, Mode>>& pairs) {
  LinearSubstitution s;
  for (const auto& [from, to] : pairs) {
    s.set_rule(from, {{Complex{1.0, 0.0}, to}});
  }
  return s;
}

LinearSubstitution LinearSubstitution::polarization_swap(Channel channel) {
  LinearSubstitution s;
  const auto frequencies =
      is_detector_channel(channel)
          ? std::vector<FrequencyLabel>{FrequencyLabel::OmegaDoublePrime}
          : std::vector<FrequencyLabel>{
                FrequencyLabel::Omega, FrequencyLabel::OmegaPrime,
                FrequencyLabel::OmegaDoublePrime, FrequencyLabel::OmegaPump};
  for (const auto f : frequencies) {
    const Mode h{Polarization::H, channel, f};
    const Mode v{Polarization::V, channel, f};
    s.set_rule(h, {{Complex{1.0, 0.0}, v}});
    s.set_rule(v, {{Complex{1.0, 0.0}, h}});
  }
  return s;
}

const LinearSubstitution::Expansion* LinearSubstitution::rule_for(
    const Mode& m) const {
  const auto it = rules_.find(m);
  return it == rules_.end() ? nullptr : &it->second;
}

StateVector apply_substitution(const LinearSubstitution& substitution,
                               const StateVector& v) {
  StateVector result;
  for (const auto& [monomial, amplitude] : v.terms()) {
    // Expand the product one operator at a time; repeated modes expand
    // independently per occurrence, which reproduces the multinomial terms.
    std::map<Monomial, Complex> partial{{Monomial{}, amplitude}};
    for (const Mode& mode : monomial.modes()) {
      const auto* expansion = substitution.rule_for(mode);
      std::map<Monomial, Complex> next;
      for (const auto& [prefix, coefficient] : partial) {
        if (expansion == nullptr) {
          next[prefix.merged_with(Monomial{{mode}})] += coefficient;
        } else {
          for (const auto& [weight, out_mode] : *expansion) {
            next[prefix.merged_with(Monomial{{out_mode}})] +=
                coefficient * weight;
          }
        }
      }
      partial = std::move(next);
    }
    for (const auto& [out_monomial, out_amplitude] : partial) {
      result.add_term(out_monomial, out_amplitude);
    }
  }
  return result;
}

}  // namespace telesim::fock
