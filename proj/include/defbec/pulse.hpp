#pragma once

#include <functional>
#include <vector>

#include "defbec/dispersion.hpp"
#include "defbec/units.hpp"

namespace defbec {

/// chi sampled on an angular-frequency grid, linearly interpolated between
/// points. Evaluation outside the grid throws; propagate_pulse checks the
/// envelope bandwidth against the grid span up front.
struct ChiSpectrum {
  std::vector<double> omega_grid;
  std::vector<cplx> chi;

  cplx at(double omega) const;
  double omega_min() const { return omega_grid.front(); }
  double omega_max() const { return omega_grid.back(); }
};

struct PulseRun {
  double carrier = 0.0;                  // rad/s
  std::vector<cplx> input_envelope;
  std::vector<cplx> output_envelope;
  double dt = 0.0;                       // s
  double slab_length = 0.0;              // m
  double vacuum_transit = 0.0;           // L/c
  double measured_total_transit = 0.0;   // peak shift of |out|^2 vs |in|^2
  double measured_delay = 0.0;           // total transit minus vacuum
  double predicted_delay = 0.0;          // (n_g(carrier) - 1) L / c
  double group_index_carrier = 0.0;
  Propagation classification = Propagation::luminal;
};

std::vector<cplx> gaussian_envelope(int n_samples, double dt, double fwhm,
                                    double center_time);

/// Spectral-domain propagation through a slab: each frequency component is
/// multiplied by exp(i n(omega) omega L / c). The envelope bandwidth (where
/// the spectrum exceeds 1e-4 of its peak) must fit within a third of the chi
/// grid span; otherwise a std::invalid_argument is thrown.
PulseRun propagate_pulse(const ChiSpectrum& chi, double carrier,
                         const std::vector<cplx>& envelope, double dt,
                         double slab_length);

/// Peak position of |envelope|^2 in seconds, with parabolic sub-sample
/// interpolation around the discrete argmax.
double peak_time(const std::vector<cplx>& envelope, double dt);

}  // namespace defbec
