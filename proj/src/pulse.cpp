#include "defbec/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace defbec {

cplx ChiSpectrum::at(double omega) const {
  if (omega_grid.size() < 2 || chi.size() != omega_grid.size())
    throw std::invalid_argument("ChiSpectrum: malformed grid");
  if (omega < omega_grid.front() || omega > omega_grid.back())
    throw std::out_of_range("ChiSpectrum: frequency outside the sampled grid");
  const auto it =
      std::upper_bound(omega_grid.begin(), omega_grid.end(), omega);
  const size_t hi = std::min<size_t>(it - omega_grid.begin(),
                                     omega_grid.size() - 1);
  const size_t lo = hi - 1;
  const double t = (omega - omega_grid[lo]) / (omega_grid[hi] - omega_grid[lo]);
  return chi[lo] + t * (chi[hi] - chi[lo]);
}

std::vector<cplx> gaussian_envelope(int n_samples, double dt, double fwhm,
                                    double center_time) {
  if (n_samples < 2 || dt <= 0.0 || fwhm <= 0.0)
    throw std::invalid_argument("gaussian_envelope: bad sampling parameters");
  // fwhm refers to |A|^2, so |A|^2 = exp(-t^2 / sigma^2) with
  // sigma = fwhm / (2 sqrt(ln 2))
  const double sigma = fwhm / (2.0 * std::sqrt(std::log(2.0)));
  std::vector<cplx> env(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double t = i * dt - center_time;
    env[i] = std::exp(-t * t / (2.0 * sigma * sigma));
  }
  return env;
}

double peak_time(const std::vector<cplx>& envelope, double dt) {
  if (envelope.size() < 3)
    throw std::invalid_argument("peak_time: need at least 3 samples");
  size_t imax = 0;
  double pmax = -1.0;
  for (size_t i = 0; i < envelope.size(); ++i) {
    const double p = std::norm(envelope[i]);
    if (p > pmax) { pmax = p; imax = i; }
  }
  if (imax == 0 || imax == envelope.size() - 1) return imax * dt;
  const double ym = std::norm(envelope[imax - 1]);
  const double y0 = std::norm(envelope[imax]);
  const double yp = std::norm(envelope[imax + 1]);
  const double denom = ym - 2.0 * y0 + yp;
  const double shift = denom != 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
  return (imax + shift) * dt;
}

PulseRun propagate_pulse(const ChiSpectrum& chi, double carrier,
                         const std::vector<cplx>& envelope, double dt,
                         double slab_length) {
  const int count = static_cast<int>(envelope.size());
  if (count < 8 || dt <= 0.0)
    throw std::invalid_argument("propagate_pulse: bad sampling parameters");
  if (slab_length <= 0.0)
    throw std::invalid_argument("propagate_pulse: slab length must be > 0");

  Eigen::FFT<double> fft;
  std::vector<cplx> spectrum(count);
  std::vector<cplx> in(envelope);
  fft.fwd(spectrum, in);

  // forward-FFT bin k carries e^{+i omega_k t} under the inverse transform;
  // against the e^{-i omega t} field convention that is physical frequency
  // carrier - omega_k
  auto bin_offset = [&](int k) {
    const int signed_k = k < count / 2 ? k : k - count;
    return constants::two_pi * signed_k / (count * dt);
  };
  auto bin_frequency = [&](int k) { return carrier - bin_offset(k); };

  double peak_mag = 0.0;
  for (const auto& s : spectrum) peak_mag = std::max(peak_mag, std::abs(s));
  const double span = chi.omega_max() - chi.omega_min();
  const double lo_edge = chi.omega_min() + span / 3.0;
  const double hi_edge = chi.omega_max() - span / 3.0;
  for (int k = 0; k < count; ++k) {
    if (std::abs(spectrum[k]) <= 1e-4 * peak_mag) continue;
    const double omega = bin_frequency(k);
    if (omega < lo_edge || omega > hi_edge)
      throw std::invalid_argument(
          "propagate_pulse: envelope bandwidth exceeds a third of the "
          "sampled chi grid");
  }

  // bins below the significance floor may fall outside the sampled grid;
  // they carry no measurable energy, so give them the vacuum phase
  const cplx i_unit(0.0, 1.0);
  for (int k = 0; k < count; ++k) {
    const double omega = bin_frequency(k);
    const cplx n = omega < chi.omega_min() || omega > chi.omega_max()
                       ? cplx(1.0, 0.0)
                       : refractive_index_point(chi.at(omega));
    spectrum[k] *= std::exp(i_unit * n * omega * slab_length / constants::c0);
  }

  PulseRun run;
  run.carrier = carrier;
  run.input_envelope = envelope;
  run.dt = dt;
  run.slab_length = slab_length;
  fft.inv(run.output_envelope, spectrum);

  // carrier plane-wave phase does not move the envelope; strip it so the
  // output is directly comparable to the input
  const cplx carrier_phase = std::exp(
      -i_unit * refractive_index_point(chi.at(carrier)) * carrier *
      slab_length / constants::c0);
  for (auto& s : run.output_envelope) s *= carrier_phase;

  run.vacuum_transit = slab_length / constants::c0;
  const double window = count * dt;
  double transit = peak_time(run.output_envelope, dt) - peak_time(envelope, dt);
  // the discrete transform is periodic in the window; fold the shift back
  while (transit > 0.5 * window) transit -= window;
  while (transit < -0.5 * window) transit += window;
  run.measured_total_transit = transit;
  run.measured_delay = transit - run.vacuum_transit;

  // carrier group index from the interpolated spectrum
  const double h = 0.5 * span / std::max<size_t>(chi.omega_grid.size() - 1, 1);
  const double n0 = refractive_index_point(chi.at(carrier)).real();
  const double np = refractive_index_point(chi.at(carrier + h)).real();
  const double nm = refractive_index_point(chi.at(carrier - h)).real();
  run.group_index_carrier = n0 + carrier * (np - nm) / (2.0 * h);
  run.predicted_delay =
      (run.group_index_carrier - 1.0) * slab_length / constants::c0;
  run.classification = classify_point(run.group_index_carrier);
  return run;
}

}  // namespace defbec
