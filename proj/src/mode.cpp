#include "telesim/mode.hpp"

#include <cmath>
#include <stdexcept>

namespace telesim::fock {

Polarization flip(Polarization p) {
  return p == Polarization::H ? Polarization::V : Polarization::H;
}

char to_char(Polarization p) { return p == Polarization::H ? 'H' : 'V'; }

bool is_detector_channel(Channel c) {
  return c == Channel::ChA || c == Channel::ChB || c == Channel::ChC ||
         c == Channel::ChD;
}

char to_char(Channel c) {
  switch (c) {
    case Channel::Ch1: return '1';
    case Channel::Ch2: return '2';
    case Channel::Ch3: return '3';
    case Channel::ChA: return 'a';
    case Channel::ChB: return 'b';
    case Channel::ChC: return 'c';
    case Channel::ChD: return 'd';
  }
  throw std::logic_error("unreachable channel value");
}

std::string to_string(FrequencyLabel f) {
  switch (f) {
    case FrequencyLabel::Omega: return "ω";
    case FrequencyLabel::OmegaPrime: return "ω'";
    case FrequencyLabel::OmegaDoublePrime: return "ω''";
    case FrequencyLabel::OmegaPump: return "ωp";
  }
  throw std::logic_error("unreachable frequency value");
}

Mode::Mode(Polarization p, Channel c, FrequencyLabel f)
    : channel(c), polarization(p), frequency(f) {
  if (is_detector_channel(c) && f != FrequencyLabel::OmegaDoublePrime) {
    throw std::invalid_argument(
        "detector channel " + std::string(1, to_char(c)) +
        " carries only summed-frequency photons, got " + fock::to_string(f));
  }
}

std::string Mode::to_string() const {
  std::string s;
  s += to_char(polarization);
  s += to_char(channel);
  s += ',';
  s += fock::to_string(frequency);
  return s;
}

void WavelengthTable::set(FrequencyLabel f, double micrometers) {
  if (!(micrometers > 0.0) || !std::isfinite(micrometers)) {
    throw std::invalid_argument("wavelength must be positive and finite");
  }
  wavelengths_[static_cast<int>(f)] = micrometers;
}

std::optional<double> WavelengthTable::get(FrequencyLabel f) const {
  return wavelengths_[static_cast<int>(f)];
}

WavelengthTable WavelengthTable::reference() {
  WavelengthTable t;
  t.set(FrequencyLabel::OmegaPump, 0.5);
  t.set(FrequencyLabel::Omega, 1.0);
  t.set(FrequencyLabel::OmegaPrime, 0.7);
  t.set(FrequencyLabel::OmegaDoublePrime, 1.0 / (1.0 / 0.7 + 1.0 / 1.0));
  return t;
}

namespace {

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

void WavelengthTable::validate() const {
  const auto pump = get(FrequencyLabel::OmegaPump);
  const auto spdc = get(FrequencyLabel::Omega);
  const auto message = get(FrequencyLabel::OmegaPrime);
  const auto summed = get(FrequencyLabel::OmegaDoublePrime);

  if (pump && spdc && !close_rel(1.0 / *spdc, 0.5 / *pump, kRelativeTolerance)) {
    throw std::invalid_argument(
        "SPDC wavelength must satisfy 1/λ(ω) = (1/2)·1/λ(ωp)");
  }
  if (spdc && message && summed &&
      !close_rel(1.0 / *summed, 1.0 / *message + 1.0 / *spdc,
                 kRelativeTolerance)) {
    throw std::invalid_argument(
        "summed wavelength must satisfy 1/λ(ω'') = 1/λ(ω') + 1/λ(ω)");
  }
}

}  // namespace telesim::fock
