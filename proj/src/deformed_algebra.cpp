#include "defbec/deformed_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace defbec {

DeformedAlgebraParams DeformedAlgebraParams::from_q(double q, double alpha,
                                                    double beta, double gamma_p,
                                                    double omega0) {
  if (q <= 0.0) throw std::invalid_argument("deformation base q must be > 0");
  DeformedAlgebraParams p;
  p.tau = std::log(q);
  p.nu = 0.5 * (alpha + gamma_p);
  p.mu = 0.5 * (alpha - gamma_p);
  p.beta = beta;
  p.omega0 = omega0;
  return p;
}

CondensateParams CondensateParams::with_atoms(double n, double kappa,
                                              double density) {
  if (n < 1.0) throw std::invalid_argument("atom number must be >= 1");
  CondensateParams c;
  c.n_atoms = n;
  c.eta = 1.0 / n;
  c.kappa = kappa;
  c.density = density;
  return c;
}

CondensateParams CondensateParams::eta_zero(double n, double kappa,
                                            double density) {
  CondensateParams c = with_atoms(n, kappa, density);
  c.eta = 0.0;
  return c;
}

double CondensateParams::quantization_volume() const {
  if (density <= 0.0) throw std::invalid_argument("density must be > 0");
  return n_atoms / density;
}

namespace {

// sinh(x n) / (n sinh x), continued analytically through x -> 0 and n -> 0.
double sinh_ratio(double x, double n) {
  if (std::abs(x) < 1e-9) {
    // series: 1 + x^2 (n^2 - 1)/6 + O(x^4)
    return 1.0 + x * x * (n * n - 1.0) / 6.0;
  }
  if (n == 0.0) return x / std::sinh(x);
  return std::sinh(x * n) / (n * std::sinh(x));
}

}  // namespace

double f_squared(int n, const DeformedAlgebraParams& p) {
  if (n < 0) throw std::invalid_argument("f_squared: n must be >= 0");
  const double dn = static_cast<double>(n);
  return sinh_ratio(p.tau * p.mu, dn) *
         std::exp(p.tau * (p.beta + p.nu * (dn - 1.0)));
}

double f_squared_general_branch(int n, const DeformedAlgebraParams& p) {
  if (n < 1) throw std::invalid_argument("general branch needs n >= 1");
  const double q = p.q();
  const double a = p.alpha();
  const double g = p.gamma_p();
  const double denom = std::pow(q, a) - std::pow(q, g);
  if (std::abs(denom) < 1e-300)
    throw std::domain_error("general branch degenerate: alpha == gamma");
  const double dn = static_cast<double>(n);
  return std::pow(q, p.beta) * (std::pow(q, a * dn) - std::pow(q, g * dn)) /
         (dn * denom);
}

double f_squared_equal_branch(int n, const DeformedAlgebraParams& p) {
  if (n < 0) throw std::invalid_argument("equal branch: n must be >= 0");
  return std::pow(p.q(), p.beta + p.gamma_p() * (n - 1.0));
}

double free_oscillator_energy(int n, const DeformedAlgebraParams& p) {
  if (n < 0) throw std::invalid_argument("energy: n must be >= 0");
  const double upper = f_squared(n + 1, p) * (n + 1.0);
  const double lower = n > 0 ? f_squared(n, p) * n : 0.0;
  return 0.5 * constants::hbar * p.omega0 * (upper + lower);
}

double free_oscillator_energy_mu0(int n, const DeformedAlgebraParams& p) {
  const double tn = p.tau * p.nu;
  return 0.5 * constants::hbar * p.omega0 * std::exp(tn * n) *
         (1.0 + n * (1.0 + std::exp(-tn)));
}

double free_oscillator_energy_quadratic(int n, const DeformedAlgebraParams& p) {
  const double nu = p.nu;
  const double em = std::exp(-nu);
  return 0.5 * constants::hbar * p.omega0 *
         (1.0 + n * (1.0 + nu + em) + double(n) * n * nu * (1.0 + em));
}

double oscillator_frequency(int n, const DeformedAlgebraParams& p) {
  if (n < 0) throw std::invalid_argument("frequency: n must be >= 0");
  const double upper = f_squared(n + 2, p) * (n + 2.0);
  const double lower = n > 0 ? f_squared(n, p) * n : 0.0;
  return 0.5 * p.omega0 * (upper - lower);
}

double oscillator_frequency_mu0(int n, const DeformedAlgebraParams& p) {
  const double tn = p.tau * p.nu;
  return p.omega0 * std::exp(tn * n) * (std::exp(tn) + n * std::sinh(tn));
}

double oscillator_frequency_quadratic(int n, const DeformedAlgebraParams& p) {
  const double nu = p.nu;
  const double ep = std::exp(nu);
  return p.omega0 * (ep + n * nu * (1.0 + ep) + double(n) * n * nu * nu * nu);
}

DeformedAlgebraParams collision_mapping(double kappa, double omega0) {
  if (omega0 <= 0.0) throw std::invalid_argument("collision_mapping: omega0 must be > 0");
  DeformedAlgebraParams p;
  p.tau = 1.0;
  p.mu = 0.0;
  p.nu = kappa / (2.0 * omega0);
  p.beta = 0.0;
  p.omega0 = omega0;
  return p;
}

double collision_energy_shift(int n, const DeformedAlgebraParams& p) {
  // d/dnu of the mu = 0 closed form at nu = 0 is omega0 n^2.
  return constants::hbar * p.omega0 * p.nu * double(n) * n;
}

double collision_deformation_f2(int n, double kappa) {
  if (n < 0) throw std::invalid_argument("f2: n must be >= 0");
  const double radicand = kappa * n + (1.0 - kappa);
  if (radicand < 0.0)
    throw std::domain_error("f2: negative radicand kappa*n + (1 - kappa)");
  return std::sqrt(radicand);
}

double estimate_collision_rate(double density, double scattering_length,
                               double temperature, double atom_mass) {
  if (density <= 0.0 || scattering_length <= 0.0 || temperature <= 0.0 ||
      atom_mass <= 0.0)
    throw std::invalid_argument("estimate_collision_rate: inputs must be > 0");
  const double v_rms = std::sqrt(3.0 * constants::kb * temperature / atom_mass);
  return density * constants::pi * scattering_length * scattering_length * v_rms;
}

double gardiner_f1(int n_e, double eta) {
  if (n_e < 0) throw std::invalid_argument("f1: n_e must be >= 0");
  const double radicand = 1.0 - eta * (n_e - 1.0);
  if (radicand < 0.0)
    throw std::domain_error("f1: excitation exceeds atom number (n_e > N + 1)");
  return std::sqrt(radicand);
}

std::pair<OperatorMatrix, OperatorMatrix> build_operator_matrices(
    int dim, const CondensateParams& condensate, DeformationKind which) {
  if (dim < 2) throw std::invalid_argument("operator matrices need dim >= 2");
  const double eta = condensate.eta;
  const double kappa = condensate.kappa;

  Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(dim, dim);
  std::string label;

  auto set_ladder = [&](auto amplitude) {
    for (int n = 1; n < dim; ++n) lower(n - 1, n) = amplitude(n);
  };

  switch (which) {
    case DeformationKind::bare:
      label = "bare boson ladder |n>, n = 0..dim-1";
      set_ladder([](int n) { return std::sqrt(double(n)); });
      break;
    case DeformationKind::gardiner_exact:
      // Two-mode b_g^+ b_e / sqrt(N) restricted to fixed total atom number:
      // entries sqrt(n_e (N - n_e + 1) / N) = sqrt(n_e) f1(n_e).
      label = "Gardiner phonon on |n_e>, fixed total atom number";
      set_ladder([&](int n) { return std::sqrt(double(n)) * gardiner_f1(n, eta); });
      break;
    case DeformationKind::gardiner_firstorder:
      label = "Gardiner phonon, first order in eta";
      set_ladder([&](int n) {
        return std::sqrt(double(n)) * (1.0 - 0.5 * eta * (n - 1.0));
      });
      break;
    case DeformationKind::collision_deformed:
      // B_q = b_q f2(n_q) with n_q = b_q^+ b_q = n f1(n)^2 on the number basis.
      label = "collision-deformed Gardiner phonon";
      set_ladder([&](int n) {
        const double f1 = gardiner_f1(n, eta);
        const double n_q = n * f1 * f1;
        const double radicand = kappa * n_q + (1.0 - kappa);
        if (radicand < 0.0)
          throw std::domain_error("collision deformation: negative radicand");
        return std::sqrt(double(n)) * f1 * std::sqrt(radicand);
      });
      break;
    case DeformationKind::combined: {
      // Product of the first-order factors
      //   (b - (eta/2) b^+ b b) [1 - (kappa/2)(1 - b^+ b + eta b^+ b^+ b b)],
      // where b_q^+ b_q = b^+ b - eta b^+ b^+ b b to first order. The source
      // derivation prints the eta-kappa cross term with the opposite sign;
      // see docs/errata.md.
      label = "combined first-order deformation (eta, kappa)";
      set_ladder([&](int n) {
        const double phonon = 1.0 - 0.5 * eta * (n - 1.0);
        const double collision =
            1.0 - 0.5 * kappa * (1.0 - double(n) + eta * double(n) * (n - 1.0));
        return std::sqrt(double(n)) * phonon * collision;
      });
      break;
    }
  }

  OperatorMatrix ann{lower, dim, label};
  OperatorMatrix cre{lower.adjoint(), dim, label};
  return {ann, cre};
}

}  // namespace defbec
