#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "defbec/presets.hpp"
#include "defbec/susceptibility.hpp"

using namespace defbec;
using constants::hbar;
using constants::eps0;

namespace {

FieldQuantization test_quant() {
  return {angular_from_hz(5.1e14), 3e-5};
}

HamiltonianParams generic_params() {
  HamiltonianParams p;
  p.omega_p = angular_from_hz(5.1e14);
  p.delta = angular_from_hz(2e6);
  p.K1 = cplx(4e7, -3e5);
  p.K2 = cplx(-0.07, 0.02);
  p.kappa = 0.005;
  p.eta = 0.0;
  return p;
}

}  // namespace

TEST_CASE("field quantization") {
  const FieldQuantization quant = test_quant();
  const double eps =
      std::sqrt(hbar * quant.omega_p / (2.0 * eps0 * quant.volume));
  CHECK(quant.epsilon_per_photon() == doctest::Approx(eps).epsilon(1e-14));
  CHECK(quant.field_amplitude(25.0) ==
        doctest::Approx(5.0 * eps).epsilon(1e-14));
  CHECK_THROWS_AS((FieldQuantization{0.0, 1.0}.epsilon_per_photon()),
                  std::invalid_argument);
}

TEST_CASE("energy excess polynomial") {
  SUBCASE("vanishing perturbation gives a zero polynomial") {
    HamiltonianParams params;
    params.omega_p = 2.0;
    params.delta = -1.0;  // omega_p/2 + delta = 0
    params.K1 = cplx(1.0, 0.0);
    params.K2 = 0.0;
    const EnergyPolynomial poly = energy_excess_polynomial(1, params);
    CHECK(std::abs(poly.c1) <= 1e-15);
    CHECK(std::abs(poly.c2) <= 1e-15);
    CHECK(std::abs(poly.c3) <= 1e-15);
  }
  SUBCASE("matched rates with no quadratic coupling leave only the linear term") {
    HamiltonianParams params = generic_params();
    params.kappa = params.eta = 0.01;
    params.K2 = 0.0;
    const EnergyPolynomial poly = energy_excess_polynomial(1, params);
    CHECK(poly.c1 ==
          hbar * (0.5 * params.omega_p + params.delta) * 0.5);
    CHECK(poly.c2 == cplx(0.0, 0.0));
    CHECK(poly.c3 == cplx(0.0, 0.0));
  }
  SUBCASE("cubic term carries the quadratic coupling times the fill factor") {
    const HamiltonianParams params = generic_params();
    const EnergyPolynomial poly = energy_excess_polynomial(1, params);
    const cplx expected =
        hbar * params.K2 * 0.5 * (params.kappa - params.eta) * 0.25;
    CHECK(std::abs(poly.c3 - expected) <= 1e-12 * std::abs(expected));
  }
  SUBCASE("both evaluation routes agree") {
    const HamiltonianParams params = generic_params();
    for (int n_e : {0, 1, 3}) {
      const EnergyPolynomial a =
          energy_excess_polynomial(n_e, params, EnergyRoute::analytic);
      const EnergyPolynomial b =
          energy_excess_polynomial(n_e, params, EnergyRoute::numeric_rotation);
      const double scale = std::abs(a.c1);
      CHECK(std::abs(a.c1 - b.c1) <= 1e-9 * scale);
      CHECK(std::abs(a.c2 - b.c2) <= 1e-9 * scale);
      CHECK(std::abs(a.c3 - b.c3) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("polarization") {
  const HamiltonianParams params = generic_params();
  const FieldQuantization quant = test_quant();
  const EnergyPolynomial poly = energy_excess_polynomial(1, params);

  CHECK(polarization(0.0, poly, quant) == cplx(0.0, 0.0));

  SUBCASE("zero polynomial gives zero polarization") {
    EnergyPolynomial flat;
    flat.c0 = cplx(3.0, 1.0);  // constant offsets never contribute
    CHECK(polarization(9.0, flat, quant) == cplx(0.0, 0.0));
  }

  SUBCASE("matches the finite-difference field derivative") {
    for (double n : {1.0, 4.0, 25.0}) {
      const double s = std::sqrt(n);
      const double h = 1e-4 * s;
      const cplx de = (poly.eval((s + h) * (s + h)) -
                       poly.eval((s - h) * (s - h))) /
                      (2.0 * h);
      const cplx expected = -de / quant.epsilon_per_photon();
      const cplx got = polarization(n, poly, quant);
      CHECK(std::abs(got - expected) <= 1e-6 * std::abs(expected));
    }
  }
}

TEST_CASE("susceptibility coefficients") {
  const FieldQuantization quant = test_quant();

  SUBCASE("matched rates remove the quintic response at every detuning") {
    HamiltonianParams params = generic_params();
    params.kappa = params.eta = 0.01;
    for (double delta_hz : {-2e7, -3e6, 0.0, 5e6, 2e7}) {
      params.delta = angular_from_hz(delta_hz);
      CHECK(susceptibilities(params, quant, 1, 25.0).chi5 == cplx(0.0, 0.0));
    }
  }
  SUBCASE("undeformed limit with no quadratic coupling is purely linear") {
    HamiltonianParams params = generic_params();
    params.kappa = params.eta = 0.0;
    params.K2 = 0.0;
    const ChiCoefficients chi = susceptibilities(params, quant, 1, 25.0);
    CHECK(chi.chi3 == cplx(0.0, 0.0));
    CHECK(chi.chi5 == cplx(0.0, 0.0));
    const double eps = quant.epsilon_per_photon();
    const cplx expected = -hbar *
                          (0.5 * params.omega_p + params.delta) /
                          (eps * eps * eps0);
    CHECK(std::abs(chi.chi1 - expected) <= 1e-12 * std::abs(expected));
  }
  SUBCASE("coefficients reconstruct the polarization") {
    const HamiltonianParams params = generic_params();
    const EnergyPolynomial poly = energy_excess_polynomial(1, params);
    const ChiCoefficients chi = susceptibilities(params, quant, 1, 25.0);
    const double eps = quant.epsilon_per_photon();
    for (double n : {1.0, 4.0, 25.0}) {
      const double e_wp = eps * std::sqrt(n);
      const cplx reconstructed =
          eps0 * (chi.chi1 * e_wp + chi.chi3 * e_wp * e_wp * e_wp +
                  chi.chi5 * e_wp * e_wp * e_wp * e_wp * e_wp);
      const cplx direct = polarization(n, poly, quant);
      CHECK(std::abs(reconstructed - direct) <= 1e-10 * std::abs(direct));
    }
  }
  SUBCASE("closed formulas agree with the derived path beyond chi1") {
    const HamiltonianParams params = generic_params();
    const ChiCoefficients derived =
        susceptibilities(params, quant, 1, 25.0, ChiPath::derived);
    const ChiCoefficients printed =
        susceptibilities(params, quant, 1, 25.0, ChiPath::printed);
    CHECK(std::abs(derived.chi3 - printed.chi3) <=
          1e-12 * std::abs(derived.chi3));
    CHECK(std::abs(derived.chi5 - printed.chi5) <=
          1e-12 * std::abs(derived.chi5));
  }
}

TEST_CASE("chi1 path difference is affine in the detuning") {
  // the two published forms of the linear coefficient differ only by a term
  // linear in delta; fitting difference = a + b delta must be exact
  const FieldQuantization quant = test_quant();
  const int count = 21;
  Eigen::MatrixXd design(2 * count, 2);
  Eigen::VectorXd rhs(2 * count);
  double scale = 0.0;
  for (int i = 0; i < count; ++i) {
    HamiltonianParams params = generic_params();
    params.delta = angular_from_hz(-2e7 + 2e6 * i);
    const cplx diff =
        susceptibilities(params, quant, 1, 25.0, ChiPath::derived).chi1 -
        susceptibilities(params, quant, 1, 25.0, ChiPath::printed).chi1;
    design(2 * i, 0) = 1.0;
    design(2 * i, 1) = params.delta;
    rhs(2 * i) = diff.real();
    design(2 * i + 1, 0) = 0.0;
    design(2 * i + 1, 1) = 0.0;
    rhs(2 * i + 1) = diff.imag();  // imaginary part must itself vanish
    scale = std::max(scale, std::abs(diff));
  }
  const Eigen::VectorXd fit = design.colPivHouseholderQr().solve(rhs);
  const double residual = (design * fit - rhs).cwiseAbs().maxCoeff();
  CHECK(residual <= 1e-8 * scale);
}

TEST_CASE("spectrum assembly") {
  const Preset preset = sodium_preset();
  MediumModel model = preset.medium(0.005, 1e14, true);
  std::vector<double> grid;
  for (int i = 0; i < 11; ++i) grid.push_back(angular_from_hz(-2e7 + 4e6 * i));

  SUBCASE("no photons means no nonlinear part") {
    const SusceptibilitySpectrum s = chi_total(grid, 0.0, model);
    for (size_t i = 0; i < grid.size(); ++i) {
      CHECK(s.chi_nl[i] == cplx(0.0, 0.0));
      CHECK(s.chi_total[i] == s.chi1[i]);
    }
  }
  SUBCASE("nonlinear terms obey the field-strength scaling") {
    const SusceptibilitySpectrum one = chi_total(grid, 10.0, model);
    const SusceptibilitySpectrum two = chi_total(grid, 20.0, model);
    const double eps = model.quantization().epsilon_per_photon();
    for (size_t i = 0; i < grid.size(); ++i) {
      const double f2 = eps * eps * 10.0;
      const cplx cubic_one = one.chi3[i] * f2;
      const cplx quintic_one = one.chi5[i] * f2 * f2;
      const cplx expected = 2.0 * cubic_one + 4.0 * quintic_one;
      CHECK(std::abs(two.chi_nl[i] - expected) <=
            1e-12 * std::abs(expected));
    }
  }
  SUBCASE("total is the pointwise sum") {
    const SusceptibilitySpectrum s = chi_total(grid, 25.0, model);
    for (size_t i = 0; i < grid.size(); ++i)
      CHECK(std::abs(s.chi_total[i] - (s.chi1[i] + s.chi_nl[i])) <=
            1e-15 * std::abs(s.chi_total[i]));
  }
  CHECK_THROWS_AS(chi_total({}, 25.0, model), std::invalid_argument);
}

TEST_CASE("photon number calibration") {
  CHECK(photon_number_from_intensity(0.8) == doctest::Approx(25.0));
  CHECK(photon_number_from_intensity(0.0) == 0.0);
  CHECK(photon_number_from_intensity(1.6) == doctest::Approx(50.0));
  CHECK(photon_number_from_intensity(0.8, 2e-4) == doctest::Approx(50.0));
}
