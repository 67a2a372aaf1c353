#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "telesim/monomial.hpp"

namespace telesim::fock {

using Complex = std::complex<double>;

/// Sparse linear combination of creation-operator monomials applied to the
/// vacuum. Amplitudes with modulus below the prune tolerance are dropped, so
/// the empty term map is the zero vector. Immutable in practice: operations
/// return new values.
class StateVector {
 public:
  static constexpr double kPruneTolerance = 1e-12;

  using TermMap = std::map<Monomial, Complex>;

  StateVector() = default;  // zero vector

  /// The empty monomial with amplitude 1; the tensor identity.
  static StateVector vacuum_unit();
  static StateVector single(Monomial m, Complex amplitude = {1.0, 0.0});

  /// Accumulates amplitude onto a monomial, pruning the term if the result
  /// falls below tolerance. Rejects non-finite amplitudes.
  void add_term(const Monomial& m, Complex amplitude);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Canonical text form: terms in monomial order joined by " + ", each as
  /// amplitude·monomial with 15-significant-digit amplitudes. Real
  /// amplitudes render bare ("0.6"), complex ones as "(re+imi)". The zero
  /// vector renders as "0".
  std::string to_text() const;

 private:
  TermMap terms_;
};

/// Amplitude-wise Σ cᵢ·vᵢ. Throws on non-finite coefficients.
StateVector linear_combine(
    const std::vector<std::pair<Complex, StateVector>>& parts);

StateVector scaled(const StateVector& v, Complex c);

/// Distributes the operator product: every output monomial is the multiset
/// union of one monomial from each input.
StateVector tensor(const StateVector& a, const StateVector& b);

/// ⟨a|b⟩, conjugate-linear in the first argument. Monomials are orthogonal;
/// a monomial with repeated modes contributes its occupancy factor Π nᵢ!.
Complex inner_product(const StateVector& a, const StateVector& b);

double norm_squared(const StateVector& v);

/// v / ‖v‖. Throws std::invalid_argument on the zero vector.
StateVector normalized(const StateVector& v);

/// |⟨a|b⟩|² / (⟨a|a⟩⟨b|b⟩) ∈ [0,1]. Throws on zero-norm input. Equality up
/// to a global complex scale is fidelity 1.
double fidelity(const StateVector& a, const StateVector& b);

namespace detail {
/// %.15g with negative zero normalized to "0".
std::string format_real(double x);
std::string format_amplitude(Complex z);
}  // namespace detail

}  // namespace telesim::fock
