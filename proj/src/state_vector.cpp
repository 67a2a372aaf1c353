#include "telesim/state_vector.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace telesim::fock {

namespace {

bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

StateVector StateVector::vacuum_unit() {
  StateVector v;
  v.add_term(Monomial{}, Complex{1.0, 0.0});
  return v;
}

StateVector StateVector::single(Monomial m, Complex amplitude) {
  StateVector v;
  v.add_term(std::move(m), amplitude);
  return v;
}

void StateVector::add_term(const Monomial& m, Complex amplitude) {
  if (!finite(amplitude)) {
    throw std::invalid_argument("non-finite amplitude for " + m.to_string());
  }
  auto [it, inserted] = terms_.try_emplace(m, amplitude);
  if (!inserted) it->second += amplitude;
  if (std::abs(it->second) < kPruneTolerance) terms_.erase(it);
}

std::string StateVector::to_text() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [monomial, amplitude] : terms_) {
    if (!s.empty()) s += " + ";
    s += detail::format_amplitude(amplitude);
    s += "·";
    s += monomial.to_string();
  }
  return s;
}

StateVector linear_combine(
    const std::vector<std::pair<Complex, StateVector>>& parts) {
  StateVector result;
  for (const auto& [coefficient, state] : parts) {
    if (!finite(coefficient)) {
      throw std::invalid_argument("non-finite combination coefficient");
    }
    for (const auto& [monomial, amplitude] : state.terms()) {
      result.add_term(monomial, coefficient * amplitude);
    }
  }
  return result;
}

StateVector scaled(const StateVector& v, Complex c) {
  return linear_combine({{c, v}});
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector result;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      result.add_term(ma.merged_with(mb), ca * cb);
    }
  }
  return result;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  Complex sum{0.0, 0.0};
  const auto& lhs = a.terms();
  const auto& rhs = b.terms();
  auto it = lhs.begin();
  auto jt = rhs.begin();
  while (it != lhs.end() && jt != rhs.end()) {
    if (it->first < jt->first) {
      ++it;
    } else if (jt->first < it->first) {
      ++jt;
    } else {
      sum += std::conj(it->second) * jt->second * it->first.occupancy_factor();
      ++it;
      ++jt;
    }
  }
  return sum;
}

double norm_squared(const StateVector& v) {
  double sum = 0.0;
  for (const auto& [monomial, amplitude] : v.terms()) {
    sum += std::norm(amplitude) * monomial.occupancy_factor();
  }
  return sum;
}

StateVector normalized(const StateVector& v) {
  const double n2 = norm_squared(v);
  if (n2 <= 0.0) {
    throw std::invalid_argument("cannot normalize the zero vector");
  }
  return scaled(v, Complex{1.0 / std::sqrt(n2), 0.0});
}

double fidelity(const StateVector& a, const StateVector& b) {
  const double na = norm_squared(a);
  const double nb = norm_squared(b);
  if (na <= 0.0 || nb <= 0.0) {
    throw std::invalid_argument("fidelity of a zero-norm state");
  }
  return std::norm(inner_product(a, b)) / (na * nb);
}

namespace detail {

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // collapse -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

std::string format_amplitude(Complex z) {
  if (z.imag() == 0.0) return format_real(z.real());
  std::string s = "(";
  s += format_real(z.real());
  s += z.imag() < 0.0 ? "-" : "+";
  s += format_real(std::abs(z.imag()));
  s += "i)";
  return s;
}

}  // namespace detail

}  // namespace telesim::fock
