#pragma once

#include <array>
#include <map>
#include <span>
#include <utility>

#include "telesim/state_vector.hpp"

namespace telesim::fock {

enum class PhaseMatching { TypeI, TypeII };

/// One frequency-summing crystal: an unordered pair of (polarization,
/// frequency) patterns in channel 1 rewrites to a single summed-frequency
/// mode. The phase-matching type is metadata and plays no computational
/// role.
struct RewriteRule {
  int index;  // 1-based crystal number
  std::pair<Polarization, FrequencyLabel> input_a;
  std::pair<Polarization, FrequencyLabel> input_b;
  Mode output;
  PhaseMatching matching;
};

/// The four-crystal rule table:
///   1  II   Hω' + Vω ⇒ Hω''
///   2  I    Hω' + Hω ⇒ Vω''
///   3  I    Vω' + Vω ⇒ Hω''
///   4  II   Vω' + Hω ⇒ Vω''
const std::array<RewriteRule, 4>& crystal_rules();

/// One rewrite event: which rule consumed an input monomial, the input
/// term's amplitude, and the rewritten monomial before any merging of equal
/// outputs. Keeping these is what lets later stages tell apart output terms
/// that collide in the summed state.
struct RuleFiring {
  int rule_index;
  Complex amplitude;
  Monomial rewritten;
};

using FiringMap = std::map<Monomial, RuleFiring>;  // keyed by input monomial

struct PairRewriteResult {
  StateVector state;  // firings summed; equal outputs merge
  FiringMap firings;
};

/// Rewrites the matching (ω', ω) channel-1 pair of every monomial into the
/// rule's output mode; all other modes pass through. Every monomial must
/// contain exactly one channel-1 mode at ω' and one at ω, and must match
/// exactly one rule; anything else throws with the offending monomial named,
/// since it signals a physically impossible or ambiguous configuration.
PairRewriteResult apply_pair_rewrite(std::span<const RewriteRule> rules,
                                     const StateVector& v);

}  // namespace telesim::fock
