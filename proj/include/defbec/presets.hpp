#pragma once

#include "defbec/lambda_core.hpp"
#include "defbec/susceptibility.hpp"
#include "defbec/units.hpp"

namespace defbec {

/// Bundled medium description used by the CLI and the validation suites.
struct Preset {
  AtomicParams atoms;
  CondensateParams condensate;
  cplx g1 = 0.0;
  double intensity_p = 0.0;  // W/m^2
  double intensity_c = 0.0;
  double n_photons = 0.0;
  int n_e = 1;

  double probe_carrier() const { return atoms.omega_opt; }
  MediumModel medium(double kappa, double n_atoms, bool eta_zero,
                     ChiPath path = ChiPath::derived) const;
};

/// Sodium BEC working point: gamma31/2pi = gamma32/2pi = 5 MHz,
/// gamma12/2pi = 38 kHz, omega12/2pi = 1772 MHz, omega/2pi = 5.1e14 Hz,
/// density 3.3e12 cm^-3, mu32 = 22e-30 C m, g1/2pi = 21.4 MHz,
/// I_p = 80 uW/cm^2 (25 photons on average), I_c = 55 mW/cm^2, N = 1e14.
Preset sodium_preset();

Preset preset_by_name(const std::string& name);  // throws on unknown name

}  // namespace defbec
