#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "defbec/deformed_algebra.hpp"
#include "defbec/units.hpp"

namespace defbec {

/// Three-level Lambda atom. All rates and frequencies are angular (rad/s).
struct AtomicParams {
  double gamma31 = 0.0;
  double gamma32 = 0.0;
  double gamma12 = 0.0;
  double omega12 = 0.0;    // |1>-|2> splitting
  double omega_opt = 0.0;  // |3> -> |2> optical transition
  double mu32 = 0.0;       // C m
  double mu31 = 0.0;       // C m

  void validate() const;  // throws std::invalid_argument on bad ranges
};

struct FieldParams {
  cplx g1 = 0.0;        // coupling Rabi frequency
  cplx g2 = 0.0;        // probe Rabi frequency
  double delta = 0.0;   // probe detuning from |3> -> |2>
  double omega_p = 0.0;
  double omega_c = 0.0;
  double intensity_p = 0.0;  // W/m^2
  double intensity_c = 0.0;
  double amp_c = 0.0;  // V/m
  double amp_p = 0.0;

  /// Perturbative-regime check |g2| << |g1|; returns false (and the caller may
  /// warn) when the ratio exceeds the threshold.
  bool probe_is_perturbative(double threshold = 0.1) const;
};

struct DerivedRates {
  double gamma_opt = 0.0;  // (gamma31 + gamma32)/2
  double gamma_mag = 0.0;  // gamma12
};

struct LambdaSteadyState {
  double gamma_opt = 0.0;
  double gamma_mag = 0.0;
  cplx big_gamma;  // Gamma = Delta - 2i gamma_opt + |g1|^2/(i gamma_mag - Delta)
  cplx rho32_1;    // 1/Gamma (units s)
  cplx rho32_3;    // third-order coefficient (units s^3)
  cplx L_l;        // linear coupling ratio, 1 at g1 = 0
  cplx L_nl;       // nonlinear coupling ratio (units s^2)
};

struct CouplingConstants {
  double k0 = 0.0;  // single-photon Rabi frequency, rad/s
  cplx k1, k2;
  cplx K1, K2;  // sqrt(N)-enhanced
};

DerivedRates derived_rates(const AtomicParams& atoms);

cplx gamma_factor(double delta, cplx g1, const DerivedRates& rates);

/// (rho32_1, rho32_3) of the weak-probe expansion.
std::pair<cplx, cplx> rho32_coefficients(double delta, cplx g1,
                                         const DerivedRates& rates);

LambdaSteadyState lambda_steady_state(const AtomicParams& atoms, double delta,
                                      cplx g1);

/// Full coupling chain k0 -> (k1, k2) -> (K1, K2). The probe frequency in k0
/// is omega_opt + delta.
CouplingConstants coupling_constants(const AtomicParams& atoms,
                                     const CondensateParams& condensate,
                                     double delta, cplx g1,
                                     double quant_volume);

/// Numerical steady state of the rotating-frame master equation, normalized
/// to unit trace. Basis order {|1>, |2>, |3>}.
///
/// Conventions fixed by requiring the weak-probe limit to reproduce
/// rho32/g2 = 1/Gamma exactly:
///  - frame Hamiltonian H/hbar = Delta(|3><3| + |1><1|)
///    - (g1|3><1| + g2|3><2| + h.c.) with the coupling field on resonance;
///  - dissipator written as gamma_ij (P_i rho - 2 s rho s^+ + rho P_i) with
///    s = |j><i|, i.e. gamma_ij is half the population decay rate of |i>.
Eigen::Matrix3cd liouville_steady_state(const AtomicParams& atoms,
                                        const FieldParams& fields);

struct CubicFit {
  cplx c0, c1, c3;
};

/// Least-squares fit rho32 = c0 + c1 g2 + c3 g2^3 over real g2 samples.
/// Throws std::invalid_argument for fewer than three distinct abscissae.
CubicFit perturbative_fit(const std::vector<std::pair<double, cplx>>& samples);

}  // namespace defbec
