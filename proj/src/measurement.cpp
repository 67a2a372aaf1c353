#include "telesim/measurement.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace telesim::fock {

std::map<std::string, double> born_distribution(const StateVector& v,
                                                const OutcomeKey& key) {
  double total = 0.0;
  std::map<std::string, double> weights;
  for (const auto& [monomial, amplitude] : v.terms()) {
    const double w = std::norm(amplitude) * monomial.occupancy_factor();
    weights[key(monomial)] += w;
    total += w;
  }
  if (total <= 0.0) {
    throw std::invalid_argument("Born distribution of a zero-norm state");
  }
  for (auto& [label, weight] : weights) weight /= total;
  return weights;
}

StateVector collapse_on(const StateVector& v, const MonomialPredicate& keep,
                        const ModeFilter& absorb) {
  StateVector surviving;
  bool any_kept = false;
  for (const auto& [monomial, amplitude] : v.terms()) {
    if (!keep(monomial)) continue;
    any_kept = true;
    std::vector<Mode> remaining;
    for (const Mode& mode : monomial.modes()) {
      if (!absorb(mode)) remaining.push_back(mode);
    }
    surviving.add_term(Monomial{std::move(remaining)}, amplitude);
  }
  if (!any_kept) {
    throw std::invalid_argument("no monomial satisfies the collapse predicate");
  }
  if (surviving.is_zero()) {
    throw std::invalid_argument("collapse cancelled to the zero state");
  }
  return normalized(surviving);
}

namespace {

std::pair<Monomial, Monomial> split_by_partition(
    const Monomial& m, const std::set<Channel>& partition) {
  std::vector<Mode> inside;
  std::vector<Mode> outside;
  for (const Mode& mode : m.modes()) {
    (partition.count(mode.channel) ? inside : outside).push_back(mode);
  }
  return {Monomial{std::move(inside)}, Monomial{std::move(outside)}};
}

}  // namespace

std::optional<std::pair<StateVector, StateVector>> factor_check(
    const StateVector& v, const std::set<Channel>& partition) {
  if (v.is_zero()) return std::make_pair(StateVector{}, StateVector{});

  // Amplitudes form a matrix indexed by (inside part, outside part); v is a
  // product across the partition exactly when that matrix has rank 1.
  std::map<Monomial, std::size_t> rows;
  std::map<Monomial, std::size_t> cols;
  for (const auto& [monomial, amplitude] : v.terms()) {
    (void)amplitude;
    const auto [inside, outside] = split_by_partition(monomial, partition);
    rows.try_emplace(inside, rows.size());
    cols.try_emplace(outside, cols.size());
  }
  std::vector<std::vector<Complex>> a(rows.size(),
                                      std::vector<Complex>(cols.size()));
  for (const auto& [monomial, amplitude] : v.terms()) {
    const auto [inside, outside] = split_by_partition(monomial, partition);
    a[rows.at(inside)][cols.at(outside)] = amplitude;
  }

  std::size_t pivot_row = 0;
  std::size_t pivot_col = 0;
  double pivot_mod = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      if (std::abs(a[i][j]) > pivot_mod) {
        pivot_mod = std::abs(a[i][j]);
        pivot_row = i;
        pivot_col = j;
      }
    }
  }

  const double tolerance = 1e-12 * pivot_mod;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      const Complex expected =
          a[i][pivot_col] * a[pivot_row][j] / a[pivot_row][pivot_col];
      if (std::abs(a[i][j] - expected) > tolerance) return std::nullopt;
    }
  }

  StateVector inside_factor;
  for (const auto& [monomial, i] : rows) {
    if (std::abs(a[i][pivot_col]) > 0.0) {
      inside_factor.add_term(monomial, a[i][pivot_col]);
    }
  }
  StateVector outside_factor;
  for (const auto& [monomial, j] : cols) {
    const Complex w = a[pivot_row][j] / a[pivot_row][pivot_col];
    if (std::abs(w) > 0.0) outside_factor.add_term(monomial, w);
  }
  return std::make_pair(std::move(inside_factor), std::move(outside_factor));
}

}  // namespace telesim::fock
