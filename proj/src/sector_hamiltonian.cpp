#include "defbec/sector_hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace defbec {

using constants::hbar;

int ExcitationSector::index_of_m(double m) const {
  const double idx = m + j;
  const int i = static_cast<int>(std::lround(idx));
  if (i < 0 || i >= dim || std::abs(idx - i) > 1e-9)
    throw std::invalid_argument("m outside the sector multiplet");
  return i;
}

double ExcitationSector::m_of_index(int i) const { return i - j; }

std::pair<ExcitationSector, AngularOps> sector_with_ops(int n_exc) {
  if (n_exc < 1) throw std::invalid_argument("sector needs n_exc >= 1");
  ExcitationSector sector;
  sector.n_exc = n_exc;
  sector.j = 0.5 * n_exc;
  sector.dim = n_exc + 1;

  const int dim = sector.dim;
  AngularOps ops;
  ops.jz = Eigen::MatrixXcd::Zero(dim, dim);
  ops.jplus = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int n = i;             // photons
    const int n_e = n_exc - i;   // excitons
    ops.jz(i, i) = 0.5 * (n - n_e);
    // J+ = a^+ b : |n, n_e> -> sqrt(n+1) sqrt(n_e) |n+1, n_e-1>
    if (n_e > 0)
      ops.jplus(i + 1, i) = std::sqrt(double(n + 1)) * std::sqrt(double(n_e));
  }
  ops.jminus = ops.jplus.adjoint();
  ops.jx = 0.5 * (ops.jplus + ops.jminus);
  ops.jy = cplx(0.0, -0.5) * (ops.jplus - ops.jminus);
  return {sector, ops};
}

Eigen::MatrixXcd sector_string(const ExcitationSector& sector,
                               std::string_view ops) {
  const int dim = sector.dim;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    int n = sector.photons_of_index(col);
    int n_e = sector.excitons_of_index(col);
    double amp = 1.0;
    bool killed = false;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
      switch (*it) {
        case 'a':
          if (n == 0) killed = true;
          else { amp *= std::sqrt(double(n)); --n; }
          break;
        case 'A':
          ++n; amp *= std::sqrt(double(n));
          break;
        case 'b':
          if (n_e == 0) killed = true;
          else { amp *= std::sqrt(double(n_e)); --n_e; }
          break;
        case 'B':
          ++n_e; amp *= std::sqrt(double(n_e));
          break;
        default:
          throw std::invalid_argument("sector_string: unknown op");
      }
      if (killed) break;
    }
    if (killed) continue;
    if (n + n_e != sector.n_exc)
      throw std::invalid_argument("sector_string: string does not conserve the sector");
    out(n, col) += amp;  // row index == photon count
  }
  return out;
}

Eigen::MatrixXcd build_h0(const ExcitationSector& sector,
                          const HamiltonianParams& params) {
  auto [sec, ops] = sector_with_ops(sector.n_exc);
  return hbar * params.omega_p * double(sector.n_exc) *
             Eigen::MatrixXcd::Identity(sector.dim, sector.dim) +
         2.0 * hbar * params.K1 * ops.jx;
}

Eigen::MatrixXcd build_hprime(const ExcitationSector& sector,
                              const HamiltonianParams& params) {
  const double wp = params.omega_p;
  const double dd = params.delta;
  const double biexciton = params.kappa - params.eta;        // -1/N + kappa
  const double fill = 0.5 * (params.kappa - params.eta);     // kappa/2 - 1/(2N)

  Eigen::MatrixXcd h = hbar * (0.5 * wp + dd) * sector_string(sector, "Bb");
  h += hbar * (1.5 * wp + dd) * biexciton * sector_string(sector, "BBbb");
  h += hbar * params.K1 * fill *
       (sector_string(sector, "aBBb") + sector_string(sector, "ABbb"));
  h += hbar * params.K2 *
       (sector_string(sector, "aAaB") + sector_string(sector, "AaAb") +
        fill * (sector_string(sector, "aAaBBb") + sector_string(sector, "AaABbb")));
  return h;
}

Eigen::MatrixXcd rotation_to_diagonal_frame(const ExcitationSector& sector,
                                            const AngularOps& ops) {
  const cplx i_unit(0.0, 1.0);
  double best_residual = -1.0;
  Eigen::MatrixXcd best;
  for (double theta : {0.5 * constants::pi, -0.5 * constants::pi}) {
    Eigen::MatrixXcd r = (i_unit * theta * ops.jy).exp();
    const double residual =
        (r * ops.jz * r.adjoint() - ops.jx).norm();
    if (best_residual < 0.0 || residual < best_residual) {
      best_residual = residual;
      best = r;
    }
  }
  if (best_residual > 1e-10)
    throw std::runtime_error("rotation does not map Jz onto Jx");
  return best;
}

cplx unperturbed_energy(const ExcitationSector& sector,
                        const HamiltonianParams& params, double m) {
  sector.index_of_m(m);  // range check
  return hbar * params.omega_p * double(sector.n_exc) +
         2.0 * hbar * params.K1 * m;
}

Eigen::VectorXcd rotated_corrections(const ExcitationSector& sector,
                                     const HamiltonianParams& params) {
  auto [sec, ops] = sector_with_ops(sector.n_exc);
  const Eigen::MatrixXcd r = rotation_to_diagonal_frame(sec, ops);
  const Eigen::MatrixXcd hp = build_hprime(sec, params);
  // eigenvector of H0 for E0_jm is R|jm>, so the first-order shift is the
  // diagonal of R^+ H' R
  return (r.adjoint() * hp * r).diagonal();
}

cplx rotated_first_order_energy(const ExcitationSector& sector,
                                const HamiltonianParams& params, double m) {
  const int i = sector.index_of_m(m);
  return unperturbed_energy(sector, params, m) +
         rotated_corrections(sector, params)(i);
}

cplx matrix_element_analytic(double j, double m,
                             const HamiltonianParams& params) {
  if (std::abs(m) > j + 1e-9)
    throw std::invalid_argument("matrix_element_analytic: |m| > j");
  const double p = j + m;   // photons
  const double e = j - m;   // excitons
  const double biexciton = params.kappa - params.eta;
  const double fill = 0.5 * (params.kappa - params.eta);

  const double diag1 = 0.5 * (p + e);  // = j
  const double diag2 =
      0.25 * p * (p - 1.0) + 0.25 * e * (e - 1.0) + p * e;
  // the printed form carries a + sign on the e(e-1) term; see docs/errata.md
  const double fill_k1 = 0.5 * (p * (p - 1.0) - e * (e - 1.0));
  const double linear_k2 = 0.5 * (p * (p + 1.0) - e * (e + 1.0));
  // corrected self-cancelling pair: (1/2) p(p-1) - (1/2) e(e-1)
  const double fill_k2 = 0.5 * p * (p - 1.0) - 0.5 * e * (e - 1.0) +
                         0.25 * p * (p - 1.0) * (p - 2.0) -
                         0.25 * e * (e - 1.0) * (e - 2.0) -
                         0.25 * p * e * (p - 1.0) + 0.25 * p * e * (e - 1.0);

  return hbar * ((0.5 * params.omega_p + params.delta) * diag1 +
                 (1.5 * params.omega_p + params.delta) * biexciton * diag2 +
                 params.K1 * fill * fill_k1 +
                 params.K2 * (linear_k2 + fill * fill_k2));
}

bool perturbation_guard_triggered(const ExcitationSector& sector,
                                  const HamiltonianParams& params,
                                  double ratio) {
  auto [sec, ops] = sector_with_ops(sector.n_exc);
  const Eigen::MatrixXcd r = rotation_to_diagonal_frame(sec, ops);
  Eigen::MatrixXcd rotated = r.adjoint() * build_hprime(sec, params) * r;
  rotated.diagonal().setZero();
  const double off = rotated.cwiseAbs().maxCoeff();
  const double gap = 2.0 * hbar * std::abs(params.K1);
  if (gap == 0.0) return off > 0.0;
  return off >= ratio * gap;
}

}  // namespace defbec
