#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "telesim/mode.hpp"

namespace telesim::fock {

/// A commuting product of creation operators: a multiset of mode labels kept
/// in canonical sorted order. Two monomials built from permutations of the
/// same modes compare equal, which is exactly bosonic commutativity.
class Monomial {
 public:
  /// The vacuum (empty product).
  Monomial() = default;

  /// Canonicalizes by sorting; any permutation yields the same monomial.
  explicit Monomial(std::vector<Mode> modes);

  const std::vector<Mode>& modes() const { return modes_; }
  std::size_t degree() const { return modes_.size(); }
  bool is_vacuum() const { return modes_.empty(); }

  /// Π nᵢ! over the occupation numbers of repeated modes; the squared norm
  /// of the corresponding Fock ket.
  double occupancy_factor() const;

  /// Multiset union: the monomial of the operator product this * other.
  Monomial merged_with(const Monomial& other) const;

  auto operator<=>(const Monomial&) const = default;

  /// e.g. "(H1,ω'·V2,ω·H3,ω)"; the vacuum renders as "()".
  std::string to_string() const;

 private:
  std::vector<Mode> modes_;
};

/// Named form of the canonicalizing constructor.
Monomial canonical_monomial(std::vector<Mode> modes);

}  // namespace telesim::fock
