#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "telesim/state_vector.hpp"

namespace telesim::fock {

using OutcomeKey = std::function<std::string(const Monomial&)>;
using MonomialPredicate = std::function<bool(const Monomial&)>;
using ModeFilter = std::function<bool(const Mode&)>;

/// Born rule over the orthogonal monomial terms: each label gets the summed
/// squared amplitude (occupancy-weighted) of its monomials, normalized to
/// probability 1. Throws on a zero-norm state. Labels with no monomial are
/// simply absent.
std::map<std::string, double> born_distribution(const StateVector& v,
                                                const OutcomeKey& key);

/// Post-selection: keeps monomials satisfying the predicate, deletes
/// (absorbs) modes matched by the filter from each survivor, and
/// renormalizes to unit norm. Throws if nothing survives.
StateVector collapse_on(const StateVector& v, const MonomialPredicate& keep,
                        const ModeFilter& absorb);

/// Splits v across the channel partition: returns (inside, outside) factors
/// with tensor(inside, outside) ∝ v when v is a product across the
/// partition, std::nullopt when it is entangled.
std::optional<std::pair<StateVector, StateVector>> factor_check(
    const StateVector& v, const std::set<Channel>& partition);

}  // namespace telesim::fock
