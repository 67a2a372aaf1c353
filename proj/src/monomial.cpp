#include "telesim/monomial.hpp"

#include <algorithm>

namespace telesim::fock {

Monomial::Monomial(std::vector<Mode> modes) : modes_(std::move(modes)) {
  std::sort(modes_.begin(), modes_.end());
}

double Monomial::occupancy_factor() const {
  double factor = 1.0;
  std::size_t run = 1;
  for (std::size_t i = 1; i < modes_.size(); ++i) {
    if (modes_[i] == modes_[i - 1]) {
      ++run;
      factor *= static_cast<double>(run);
    } else {
      run = 1;
    }
  }
  return factor;
}

Monomial Monomial::merged_with(const Monomial& other) const {
  std::vector<Mode> merged;
  merged.reserve(modes_.size() + other.modes_.size());
  std::merge(modes_.begin(), modes_.end(), other.modes_.begin(),
             other.modes_.end(), std::back_inserter(merged));
  Monomial result;
  result.modes_ = std::move(merged);  // both inputs sorted, merge keeps order
  return result;
}

std::string Monomial::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (i > 0) s += "·";
    s += modes_[i].to_string();
  }
  s += ")";
  return s;
}

Monomial canonical_monomial(std::vector<Mode> modes) {
  return Monomial(std::move(modes));
}

}  // namespace telesim::fock
