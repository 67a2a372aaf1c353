#pragma once

#include <map>
#include <utility>
#include <vector>

#include "telesim/state_vector.hpp"

namespace telesim::fock {

/// A linear map on creation operators: each mode expands to a combination of
/// modes; modes without a rule map to themselves. Extension to states is
/// multiplicative over the operators of a monomial and linear over terms,
/// which is how mirrors, mergers and polarization flips are modeled.
class LinearSubstitution {
 public:
  using Expansion = std::vector<std::pair<Complex, Mode>>;

  LinearSubstitution() = default;  // identity

  /// Output modes within one rule must be distinct.
  void set_rule(const Mode& from, Expansion to);

  /// Pure relabeling from → to, polarization and frequency untouched only if
  /// the caller says so; each pair is an independent one-term rule.
  static LinearSubstitution relabeling(
      const std::vector<std::pair<Mode, Mode>>& pairs);

  /// H ↔ V on every mode of the given channel, all frequencies.
  static LinearSubstitution polarization_swap(Channel channel);

  /// nullptr means the identity rule.
  const Expansion* rule_for(const Mode& m) const;

  const std::map<Mode, Expansion>& rules() const { return rules_; }

 private:
  std::map<Mode, Expansion> rules_;
};

StateVector apply_substitution(const LinearSubstitution& substitution,
                               const StateVector& v);

}  // namespace telesim::fock
