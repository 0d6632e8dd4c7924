#include "defbec/presets.hpp"

#include <stdexcept>

namespace defbec {

MediumModel Preset::medium(double kappa, double n_atoms, bool eta_zero,
                           ChiPath path) const {
  // the quantization volume is a property of the condensate cell and stays
  // fixed when sweeping the atom number; density = N/V tracks N
  const double volume = condensate.quantization_volume();
  const double density = n_atoms / volume;
  MediumModel model;
  model.atoms = atoms;
  model.condensate =
      eta_zero ? CondensateParams::eta_zero(n_atoms, kappa, density)
               : CondensateParams::with_atoms(n_atoms, kappa, density);
  model.g1 = g1;
  model.omega_p = probe_carrier();
  model.n_e = n_e;
  model.n_photons = n_photons;
  model.path = path;
  return model;
}

Preset sodium_preset() {
  Preset p;
  p.atoms.gamma31 = angular_from_hz(5e6);
  p.atoms.gamma32 = angular_from_hz(5e6);
  p.atoms.gamma12 = angular_from_hz(38e3);
  p.atoms.omega12 = angular_from_hz(1772e6);
  p.atoms.omega_opt = angular_from_hz(5.1e14);
  p.atoms.mu32 = 22e-30;
  p.atoms.mu31 = 22e-30;
  p.atoms.validate();

  p.condensate = CondensateParams::eta_zero(1e14, 0.0, 3.3e18);
  p.g1 = angular_from_hz(21.4e6);
  p.intensity_p = 0.8;    // 80 uW/cm^2
  p.intensity_c = 550.0;  // 55 mW/cm^2
  p.n_photons = 25.0;
  p.n_e = 1;
  return p;
}

Preset preset_by_name(const std::string& name) {
  if (name == "sodium") return sodium_preset();
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace defbec
