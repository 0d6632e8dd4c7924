#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "defbec/lambda_core.hpp"
#include "defbec/presets.hpp"

using namespace defbec;

namespace {
AtomicParams sodium_atoms() { return sodium_preset().atoms; }
}  // namespace

TEST_CASE("derived rates are the mean optical and the magnetic rate") {
  const AtomicParams atoms = sodium_atoms();
  const DerivedRates rates = derived_rates(atoms);
  CHECK(rates.gamma_opt == 0.5 * (atoms.gamma31 + atoms.gamma32));
  CHECK(rates.gamma_opt == doctest::Approx(angular_from_hz(5e6)).epsilon(1e-14));
  CHECK(rates.gamma_mag == angular_from_hz(38e3));

  AtomicParams zero = atoms;
  zero.gamma31 = zero.gamma32 = zero.gamma12 = 0.0;
  const DerivedRates zr = derived_rates(zero);
  CHECK(zr.gamma_opt == 0.0);
  CHECK(zr.gamma_mag == 0.0);
}

TEST_CASE("gamma factor limiting cases") {
  const DerivedRates rates = derived_rates(sodium_atoms());
  const cplx g1 = sodium_preset().g1;

  SUBCASE("zero detuning") {
    const cplx g = gamma_factor(0.0, g1, rates);
    const cplx expected(0.0,
                        -(2.0 * rates.gamma_opt +
                          std::norm(g1) / rates.gamma_mag));
    CHECK(std::abs(g - expected) <= 1e-12 * std::abs(expected));
  }
  SUBCASE("no coupling field") {
    const double delta = angular_from_hz(3e6);
    const cplx g = gamma_factor(delta, 0.0, rates);
    CHECK(g == cplx(delta, -2.0 * rates.gamma_opt));
  }
  SUBCASE("degenerate denominator throws") {
    const DerivedRates bad{rates.gamma_opt, 0.0};
    CHECK_THROWS_AS(gamma_factor(0.0, g1, bad), std::domain_error);
  }
  SUBCASE("dissipative pole: Im Gamma < 0 across the window") {
    for (int i = 0; i <= 40; ++i) {
      const double delta = angular_from_hz(-20e6 + 1e6 * i);
      CHECK(gamma_factor(delta, g1, rates).imag() < 0.0);
    }
  }
}

TEST_CASE("first-order coherence coefficient") {
  const DerivedRates rates = derived_rates(sodium_atoms());

  SUBCASE("no coupling, zero detuning") {
    const auto [rho1, rho3] = rho32_coefficients(0.0, 0.0, rates);
    const cplx expected(0.0, 0.5 / rates.gamma_opt);
    CHECK(std::abs(rho1 - expected) <= 1e-14 * std::abs(expected));
  }
  SUBCASE("transparency point: response suppressed and reactive") {
    const auto [rho1, rho3] =
        rho32_coefficients(0.0, sodium_preset().g1, rates);
    CHECK(std::abs(rho1.real()) <= 1e-6 * std::abs(rho1));
    CHECK(std::abs(rho1) < 1e-3 * (0.5 / rates.gamma_opt));
  }
}

TEST_CASE("coupling chain") {
  const Preset preset = sodium_preset();
  const CondensateParams condensate = preset.condensate;
  const double volume = condensate.quantization_volume();

  SUBCASE("linear ratio is one without the coupling field") {
    const LambdaSteadyState s = lambda_steady_state(preset.atoms, 0.0, 0.0);
    CHECK(s.L_l == cplx(1.0, 0.0));
  }
  SUBCASE("collective enhancement is exactly sqrt(N)") {
    const CouplingConstants c = coupling_constants(
        preset.atoms, condensate, 0.0, preset.g1, volume);
    CHECK(c.K1 == 1e7 * c.k1);
    CHECK(c.K2 == 1e7 * c.k2);
  }
  SUBCASE("single-photon Rabi frequency fixture") {
    const CouplingConstants c = coupling_constants(
        preset.atoms, condensate, 0.0, preset.g1, volume);
    CHECK(c.k0 == doctest::Approx(5235.127096799563).epsilon(1e-12));
  }
  SUBCASE("rejects bad volume") {
    CHECK_THROWS_AS(coupling_constants(preset.atoms, condensate, 0.0,
                                       preset.g1, 0.0),
                    std::invalid_argument);
  }
}

TEST_CASE("master-equation steady state invariants") {
  const Preset preset = sodium_preset();
  FieldParams fields;
  fields.g1 = preset.g1;
  fields.g2 = 1e-4 * derived_rates(preset.atoms).gamma_opt;
  fields.delta = angular_from_hz(4e6);

  const Eigen::Matrix3cd rho = liouville_steady_state(preset.atoms, fields);
  CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);
  CHECK((rho - rho.adjoint()).norm() <= 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(rho);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("dark steady state without the probe") {
  const Preset preset = sodium_preset();
  FieldParams fields;
  fields.g1 = preset.g1;
  fields.g2 = 0.0;
  fields.delta = angular_from_hz(1e6);
  const Eigen::Matrix3cd rho = liouville_steady_state(preset.atoms, fields);
  Eigen::Matrix3cd expected = Eigen::Matrix3cd::Zero();
  expected(1, 1) = 1.0;  // everything decays into the uncoupled ground state
  CHECK((rho - expected).norm() <= 1e-10);
}

TEST_CASE("weak-probe coherence matches the closed form across the window") {
  const Preset preset = sodium_preset();
  const DerivedRates rates = derived_rates(preset.atoms);
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i) {
    FieldParams fields;
    fields.g1 = preset.g1;
    fields.g2 = 1e-4 * rates.gamma_opt;
    fields.delta = angular_from_hz(-20e6 + 1e6 * i);
    const Eigen::Matrix3cd rho = liouville_steady_state(preset.atoms, fields);
    const cplx expected = 1.0 / gamma_factor(fields.delta, fields.g1, rates);
    const double rel =
        std::abs(rho(2, 1) / fields.g2 - expected) / std::abs(expected);
    worst = std::max(worst, rel);
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("cubic response fit") {
  SUBCASE("recovers synthetic cubic exactly") {
    const cplx c0(0.1, -0.2), c1(2.0, 0.5), c3(-0.3, 0.7);
    std::vector<std::pair<double, cplx>> samples;
    for (double g2 : {0.1, 0.2, 0.4, 0.8, 1.6})
      samples.push_back({g2, c0 + c1 * g2 + c3 * g2 * g2 * g2});
    const CubicFit fit = perturbative_fit(samples);
    CHECK(std::abs(fit.c0 - c0) <= 1e-12 * std::abs(c0));
    CHECK(std::abs(fit.c1 - c1) <= 1e-12 * std::abs(c1));
    CHECK(std::abs(fit.c3 - c3) <= 1e-12 * std::abs(c3));
  }
  SUBCASE("rejects degenerate abscissae") {
    std::vector<std::pair<double, cplx>> samples{
        {0.5, 1.0}, {0.5, 1.0}, {0.5, 1.0}};
    CHECK_THROWS_AS(perturbative_fit(samples), std::invalid_argument);
  }
  SUBCASE("fits the numeric steady state to the first-order coefficient") {
    const Preset preset = sodium_preset();
    const DerivedRates rates = derived_rates(preset.atoms);
    const double delta = angular_from_hz(2e6);
    std::vector<std::pair<double, cplx>> samples;
    for (double scale : {1.0, 2.0, 4.0}) {
      FieldParams fields;
      fields.g1 = preset.g1;
      fields.g2 = scale * 1e-4 * rates.gamma_opt;
      fields.delta = delta;
      samples.push_back(
          {fields.g2.real(),
           liouville_steady_state(preset.atoms, fields)(2, 1)});
    }
    const CubicFit fit = perturbative_fit(samples);
    const cplx rho1 = 1.0 / gamma_factor(delta, preset.g1, rates);
    CHECK(std::abs(fit.c1 - rho1) <= 1e-3 * std::abs(rho1));
  }
}

TEST_CASE("parameter validation") {
  AtomicParams atoms = sodium_atoms();
  atoms.gamma31 = -1.0;
  CHECK_THROWS_AS(atoms.validate(), std::invalid_argument);

  atoms = sodium_atoms();
  atoms.omega12 = atoms.omega_opt + 1.0;
  CHECK_THROWS_AS(atoms.validate(), std::invalid_argument);

  FieldParams fields;
  fields.g1 = 100.0;
  fields.g2 = 1.0;
  CHECK(fields.probe_is_perturbative());
  fields.g2 = 50.0;
  CHECK_FALSE(fields.probe_is_perturbative());
}
