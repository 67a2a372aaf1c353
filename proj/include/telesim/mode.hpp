#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace telesim::fock {

enum class Polarization : std::uint8_t { H, V };

Polarization flip(Polarization p);
char to_char(Polarization p);

/// Propagation channels 1-3 plus the per-crystal detector channels a-d.
enum class Channel : std::uint8_t { Ch1, Ch2, Ch3, ChA, ChB, ChC, ChD };

bool is_detector_channel(Channel c);
char to_char(Channel c);

enum class FrequencyLabel : std::uint8_t {
  Omega,             // SPDC photons, half the pump frequency
  OmegaPrime,        // message photons
  OmegaDoublePrime,  // summed frequency, OmegaPrime + Omega
  OmegaPump,
};

std::string to_string(FrequencyLabel f);

/// One bosonic mode label. Detector channels a-d exist only at the summed
/// frequency; construction rejects anything else.
///
/// The member order (channel, polarization, frequency) is the canonical total
/// order used to sort monomials.
struct Mode {
  Channel channel;
  Polarization polarization;
  FrequencyLabel frequency;

  Mode(Polarization p, Channel c, FrequencyLabel f);

  auto operator<=>(const Mode&) const = default;

  /// Short label form, e.g. "H3,ω" or "Ha,ω''".
  std::string to_string() const;
};

/// Optional numeric wavelengths (micrometers) attached to the frequency
/// labels. The algebra is purely symbolic; the table exists to validate
/// energy conservation of the frequency-summing rules.
class WavelengthTable {
 public:
  void set(FrequencyLabel f, double micrometers);
  std::optional<double> get(FrequencyLabel f) const;

  /// Demo configuration: 0.5 um pump, 1.0 um SPDC photons, 0.7 um message
  /// photons, summed wavelength 1/(1/0.7 + 1/1.0).
  static WavelengthTable reference();

  /// Checks, for every label that has a value,
  ///   1/λ(ω)  = (1/2) 1/λ(ωp)
  ///   1/λ(ω″) = 1/λ(ω′) + 1/λ(ω)
  /// to 1e-9 relative tolerance. Throws std::invalid_argument on violation.
  void validate() const;

  static constexpr double kRelativeTolerance = 1e-9;

 private:
  std::optional<double> wavelengths_[4];
};

}  // namespace telesim::fock
