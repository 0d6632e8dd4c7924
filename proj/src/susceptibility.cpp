#include "defbec/susceptibility.hpp"

#include <cmath>
#include <stdexcept>

namespace defbec {

using constants::hbar;
using constants::eps0;

double FieldQuantization::epsilon_per_photon() const {
  if (omega_p <= 0.0 || volume <= 0.0)
    throw std::invalid_argument("field quantization needs omega_p, V > 0");
  return std::sqrt(hbar * omega_p / (2.0 * eps0 * volume));
}

double FieldQuantization::field_amplitude(double n_photons) const {
  return epsilon_per_photon() * std::sqrt(n_photons);
}

EnergyPolynomial energy_excess_polynomial(int n_e,
                                          const HamiltonianParams& params,
                                          EnergyRoute route) {
  if (n_e < 0) throw std::invalid_argument("n_e must be >= 0");

  if (route == EnergyRoute::analytic) {
    // Coefficients of the closed-form matrix element expanded in the photon
    // number at fixed n_e. Building them directly (instead of interpolating
    // through sampled energies) keeps the cubic term exactly zero when the
    // kappa - eta fill factor vanishes, which differencing rounded samples
    // cannot guarantee.
    const double e = n_e;
    const double a = 0.5 * params.omega_p + params.delta;
    const double b = 1.5 * params.omega_p + params.delta;
    const double d = params.kappa - params.eta;
    const double c = 0.5 * d;
    const cplx k1 = params.K1;
    const cplx k2 = params.K2;

    EnergyPolynomial poly;
    poly.c0 = hbar * (0.5 * a * e + 0.25 * b * d * e * (e - 1.0) -
                      0.5 * k1 * c * e * (e - 1.0) -
                      0.5 * k2 * e * (e + 1.0) +
                      k2 * c * (-0.5 * e * (e - 1.0) -
                                0.25 * e * (e - 1.0) * (e - 2.0)));
    poly.c1 = hbar * (0.5 * a + b * d * (e - 0.25) - 0.5 * k1 * c + 0.5 * k2 +
                      k2 * c * 0.25 * e * e);
    poly.c2 = hbar * (0.25 * b * d + 0.5 * k1 * c + 0.5 * k2 +
                      k2 * c * (-0.25 - 0.25 * e));
    poly.c3 = hbar * k2 * c * 0.25;

    // cross-check against direct evaluation at a few photon numbers
    double scale = 0.0, worst = 0.0;
    for (int n = 0; n <= 4; ++n) {
      const cplx direct = matrix_element_analytic(0.5 * (n + n_e),
                                                  0.5 * (n - n_e), params);
      scale = std::max(scale, std::abs(direct));
      worst = std::max(worst, std::abs(poly.eval(n) - direct));
    }
    if (scale > 0.0 && worst > 1e-9 * scale)
      throw std::runtime_error(
          "energy_excess_polynomial: closed-form coefficients disagree with "
          "direct evaluation (formula regression)");
    return poly;
  }

  cplx v[5];
  for (int n = 0; n <= 4; ++n) {
    const int n_exc = n + n_e;
    if (n_exc == 0) {
      v[n] = 0.0;  // empty sector carries no perturbation
    } else {
      auto [sector, ops] = sector_with_ops(n_exc);
      v[n] = rotated_corrections(sector, params)(n);
    }
  }

  const cplx d1 = v[1] - v[0];
  const cplx d2 = v[2] - 2.0 * v[1] + v[0];
  const cplx d3 = v[3] - 3.0 * v[2] + 3.0 * v[1] - v[0];
  const cplx d4 = v[4] - 4.0 * v[3] + 6.0 * v[2] - 4.0 * v[1] + v[0];

  EnergyPolynomial poly;
  poly.c0 = v[0];
  poly.c1 = d1 - 0.5 * d2 + d3 / 3.0;
  poly.c2 = 0.5 * d2 - 0.5 * d3;
  poly.c3 = d3 / 6.0;

  const double scale =
      std::max({std::abs(poly.c1), std::abs(poly.c2), std::abs(poly.c3),
                std::abs(poly.c0)});
  if (scale > 0.0 && std::abs(d4 / 24.0) > 1e-9 * scale)
    throw std::runtime_error(
        "energy_excess_polynomial: sector energies are not cubic in n "
        "(formula regression)");
  return poly;
}

cplx polarization(double n_photons, const EnergyPolynomial& poly,
                  const FieldQuantization& quant) {
  if (n_photons < 0.0) throw std::invalid_argument("photon number must be >= 0");
  const double eps = quant.epsilon_per_photon();
  const double s = std::sqrt(n_photons);
  return -(2.0 * poly.c1 * s + 4.0 * poly.c2 * s * s * s +
           6.0 * poly.c3 * s * s * s * s * s) /
         eps;
}

namespace {

ChiCoefficients printed_path(const HamiltonianParams& params, double eps,
                             int n_e, double n_photons) {
  // Closed susceptibility formulas evaluated verbatim at the operating point
  // (j, m) with p = n_photons photons and e = n_e excitons. Known defects of
  // the printed form are catalogued in docs/errata.md.
  const double p = n_photons;
  const double e = n_e;
  const double d = params.kappa - params.eta;
  const double c = 0.5 * (params.kappa - params.eta);
  const cplx k1 = params.K1;
  const cplx k2 = params.K2;
  const double wp = params.omega_p;
  const double dd = params.delta;

  const double e2 = eps * eps;
  ChiCoefficients chi;
  chi.chi1 = -hbar / (e2 * eps0) *
             ((0.5 * wp + dd) + (1.5 * wp + dd) * d * (-0.5 + 2.0 * p) -
              k1 * c + k2 + k2 * c * (0.5 * e * (e - 1.0) + 0.5 * e));
  chi.chi3 = -hbar / (e2 * e2 * eps0) *
             ((1.5 * wp + dd) * d + 2.0 * k1 * c + 2.0 * k2 +
              k2 * c * (-1.0 - e));
  chi.chi5 = -hbar / (e2 * e2 * e2 * eps0) * (1.5 * k2 * c);
  return chi;
}

}  // namespace

ChiCoefficients susceptibilities(const HamiltonianParams& params,
                                 const FieldQuantization& quant, int n_e,
                                 double n_photons, ChiPath path,
                                 EnergyRoute route) {
  const double eps = quant.epsilon_per_photon();
  if (path == ChiPath::printed)
    return printed_path(params, eps, n_e, n_photons);

  const EnergyPolynomial poly = energy_excess_polynomial(n_e, params, route);
  const double e2 = eps * eps;
  ChiCoefficients chi;
  chi.chi1 = -2.0 * poly.c1 / (e2 * eps0);
  chi.chi3 = -4.0 * poly.c2 / (e2 * e2 * eps0);
  chi.chi5 = -6.0 * poly.c3 / (e2 * e2 * e2 * eps0);
  return chi;
}

HamiltonianParams MediumModel::hamiltonian_params(double delta) const {
  const CouplingConstants cc = coupling_constants(
      atoms, condensate, delta, g1, condensate.quantization_volume());
  HamiltonianParams params;
  params.omega_p = omega_p;
  params.delta = delta;
  params.K1 = cc.K1;
  params.K2 = cc.K2;
  params.kappa = condensate.kappa;
  params.eta = condensate.eta;
  return params;
}

FieldQuantization MediumModel::quantization() const {
  return {omega_p, condensate.quantization_volume()};
}

SusceptibilitySpectrum chi_total(const std::vector<double>& delta_grid,
                                 double n_photons, const MediumModel& model) {
  if (delta_grid.empty())
    throw std::invalid_argument("chi_total: empty detuning grid");

  const FieldQuantization quant = model.quantization();
  const double eps = quant.epsilon_per_photon();
  const double field_sq = eps * eps * n_photons;  // |E|^2

  SusceptibilitySpectrum spectrum;
  spectrum.delta_grid = delta_grid;
  const size_t count = delta_grid.size();
  spectrum.chi1.resize(count);
  spectrum.chi3.resize(count);
  spectrum.chi5.resize(count);
  spectrum.chi_total.resize(count);
  spectrum.chi_nl.resize(count);

  for (size_t i = 0; i < count; ++i) {
    HamiltonianParams params = model.hamiltonian_params(delta_grid[i]);
    ChiCoefficients chi =
        susceptibilities(params, quant, model.n_e, n_photons, model.path);
    if (model.subtract_offset) {
      HamiltonianParams flat = params;
      flat.delta = 0.0;
      flat.K1 = 0.0;
      flat.K2 = 0.0;
      chi.chi1 -= susceptibilities(flat, quant, model.n_e, n_photons, model.path)
                      .chi1;
    }
    spectrum.chi1[i] = chi.chi1;
    spectrum.chi3[i] = chi.chi3;
    spectrum.chi5[i] = chi.chi5;
    spectrum.chi_nl[i] =
        chi.chi3 * field_sq + chi.chi5 * field_sq * field_sq;
    spectrum.chi_total[i] = chi.chi1 + spectrum.chi_nl[i];
  }
  return spectrum;
}

double photon_number_from_intensity(double intensity, double beam_area,
                                    double pulse_duration) {
  if (intensity < 0.0) throw std::invalid_argument("intensity must be >= 0");
  constexpr double ref_intensity = 0.8;     // 80 uW/cm^2 in W/m^2
  constexpr double ref_area = 1e-4;         // m^2
  constexpr double ref_duration = 1e-6;     // s
  return 25.0 * (intensity / ref_intensity) * (beam_area / ref_area) *
         (pulse_duration / ref_duration);
}

}  // namespace defbec
