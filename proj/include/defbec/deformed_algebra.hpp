#pragma once

#include <string>

#include <Eigen/Dense>

#include "defbec/units.hpp"

namespace defbec {

/// Parameters of the generalized deformed oscillator algebra in the
/// reparametrized form q = e^tau, alpha = nu + mu, gamma_p = nu - mu.
struct DeformedAlgebraParams {
  double tau = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  double beta = 0.0;
  double omega0 = 0.0;  // base angular frequency (rad/s)

  double q() const { return std::exp(tau); }
  double alpha() const { return nu + mu; }
  double gamma_p() const { return nu - mu; }

  static DeformedAlgebraParams from_q(double q, double alpha, double beta,
                                      double gamma_p, double omega0);
};

/// Condensate-level parameters. `eta` is stored separately from `n_atoms` so
/// that the eta-zero sentinel (1/N = 0 exactly) can coexist with a finite N
/// used in the sqrt(N) collective-coupling enhancement.
struct CondensateParams {
  double n_atoms = 1.0;   // N
  double eta = 1.0;       // 1/N, or 0 under the eta-zero sentinel
  double kappa = 0.0;     // collision deformation parameter
  double density = 0.0;   // atoms / m^3
  double n_c = 0.0;       // Bogoliubov c-number

  static CondensateParams with_atoms(double n, double kappa, double density);
  static CondensateParams eta_zero(double n, double kappa, double density);
  double quantization_volume() const;  // N / density
};

/// Square operator matrix over a truncated number basis.
struct OperatorMatrix {
  Eigen::MatrixXcd m;
  int dim = 0;
  std::string basis_label;
};

enum class DeformationKind {
  bare,
  gardiner_exact,
  gardiner_firstorder,
  collision_deformed,
  combined,
};

/// |f(n)|^2 of the generalized deformed algebra (hyperbolic canonical form).
/// The mu -> 0 limit of sinh(tau mu n)/(n sinh(tau mu)) is taken analytically.
double f_squared(int n, const DeformedAlgebraParams& p);

/// Corrected general branch q^beta (q^{alpha n} - q^{gamma n}) / (n (q^alpha - q^gamma)),
/// which reproduces the canonical form exactly under the reparametrization.
double f_squared_general_branch(int n, const DeformedAlgebraParams& p);

/// alpha == gamma branch, q^{beta + gamma (n-1)}.
double f_squared_equal_branch(int n, const DeformedAlgebraParams& p);

/// Exact free-oscillator energy (hbar omega0 / 2)[|f(n+1)|^2 (n+1) + |f(n)|^2 n].
double free_oscillator_energy(int n, const DeformedAlgebraParams& p);
/// Closed form for mu = 0, beta = 0: (hbar omega0/2) e^{tau nu n} [1 + n (1 + e^{-tau nu})].
double free_oscillator_energy_mu0(int n, const DeformedAlgebraParams& p);
/// Small-deformation quadratic form at tau = 1, keeping terms up to n^2.
double free_oscillator_energy_quadratic(int n, const DeformedAlgebraParams& p);

/// Exact level spacing (omega0/2)[|f(n+2)|^2 (n+2) - |f(n)|^2 n].
double oscillator_frequency(int n, const DeformedAlgebraParams& p);
/// mu = 0 closed form omega0 e^{tau nu n} [e^{tau nu} + n sinh(tau nu)].
double oscillator_frequency_mu0(int n, const DeformedAlgebraParams& p);
/// Small-deformation approximant at tau = 1 (as printed in the source
/// derivation; see docs/errata.md for the n^2 coefficient).
double oscillator_frequency_quadratic(int n, const DeformedAlgebraParams& p);

/// Collision rate kappa mapped onto algebra parameters: mu = 0, nu = kappa/(2 omega0),
/// tau = 1, beta = 0.
DeformedAlgebraParams collision_mapping(double kappa, double omega0);

/// First-order-in-nu nonlinear energy shift of the mu = 0 oscillator,
/// (hbar omega0) nu n^2; equals (hbar kappa / 2) n^2 under the collision mapping.
double collision_energy_shift(int n, const DeformedAlgebraParams& p);

/// f2(n) = sqrt(kappa n + (1 - kappa)). Throws std::domain_error on a
/// negative radicand.
double collision_deformation_f2(int n, double kappa);

/// kappa ~= rho pi a^2 v_rms with v_rms = sqrt(3 kB T / m).
double estimate_collision_rate(double density, double scattering_length,
                               double temperature, double atom_mass);

/// f1(n_e; eta) = sqrt(1 - eta (n_e - 1)). Throws std::domain_error when the
/// radicand is negative (n_e > N + 1).
double gardiner_f1(int n_e, double eta);

/// Annihilation/creation pair on a truncated number basis for the requested
/// deformation. dim >= 2 required.
std::pair<OperatorMatrix, OperatorMatrix> build_operator_matrices(
    int dim, const CondensateParams& condensate, DeformationKind which);

}  // namespace defbec
