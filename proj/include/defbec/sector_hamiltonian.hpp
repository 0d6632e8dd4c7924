#pragma once

#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "defbec/units.hpp"

namespace defbec {

/// Fixed photon+exciton excitation manifold. Basis index i corresponds to
/// |n = i photons, n_e = n_exc - i excitons>, so m = (n - n_e)/2 = i - j runs
/// -j..j across the sector.
struct ExcitationSector {
  int n_exc = 0;
  double j = 0.0;  // n_exc / 2
  int dim = 0;     // n_exc + 1

  int index_of_m(double m) const;     // basis index for a given m
  double m_of_index(int i) const;     // i - j
  int photons_of_index(int i) const { return i; }
  int excitons_of_index(int i) const { return n_exc - i; }
};

struct AngularOps {
  Eigen::MatrixXcd jx, jy, jz, jplus, jminus;
};

struct HamiltonianParams {
  double omega_p = 0.0;
  double delta = 0.0;
  cplx K1 = 0.0;
  cplx K2 = 0.0;
  double kappa = 0.0;
  double eta = 0.0;  // 1/N
};

std::pair<ExcitationSector, AngularOps> sector_with_ops(int n_exc);

/// Matrix of a normal-ordered ladder string on the sector, applied literally
/// right-to-left. Alphabet: 'a' photon annihilation, 'A' photon creation,
/// 'b' exciton annihilation, 'B' exciton creation. The string must conserve
/// the total excitation number.
Eigen::MatrixXcd sector_string(const ExcitationSector& sector,
                               std::string_view ops);

/// H0 = hbar omega_p n_exc I + 2 hbar K1 Jx restricted to the sector.
Eigen::MatrixXcd build_h0(const ExcitationSector& sector,
                          const HamiltonianParams& params);

/// Full perturbation H' on the sector (Hermitian for real K1, K2).
Eigen::MatrixXcd build_hprime(const ExcitationSector& sector,
                              const HamiltonianParams& params);

/// Unitary R = exp(i theta Jy), theta in {+-pi/2} fixed numerically by the
/// defining property R Jz R^-1 = Jx.
Eigen::MatrixXcd rotation_to_diagonal_frame(const ExcitationSector& sector,
                                            const AngularOps& ops);

/// Unperturbed energy hbar omega_p n_exc + 2 hbar K1 m.
cplx unperturbed_energy(const ExcitationSector& sector,
                        const HamiltonianParams& params, double m);

/// First-order energy E_jm = E0_jm + <jm| R^+ H' R |jm> with R from
/// rotation_to_diagonal_frame. The adjoint conjugation pairs the correction
/// with the E0_jm ordering (the eigenvector of H0 belonging to E0_jm is
/// R|jm>).
cplx rotated_first_order_energy(const ExcitationSector& sector,
                                const HamiltonianParams& params, double m);

/// All first-order corrections <jm| R^+ H' R |jm>, indexed like the basis.
Eigen::VectorXcd rotated_corrections(const ExcitationSector& sector,
                                     const HamiltonianParams& params);

/// Closed-form first-order matrix element in (j +- m); the corrected
/// polynomial validated against the numeric rotation (see docs/errata.md).
cplx matrix_element_analytic(double j, double m, const HamiltonianParams& params);

/// First-order validity check: largest rotated off-diagonal of H' against the
/// smallest unperturbed gap 2|K1|. Returns true (and warns on stderr once per
/// call site that opts in) when the perturbative treatment degrades.
bool perturbation_guard_triggered(const ExcitationSector& sector,
                                  const HamiltonianParams& params,
                                  double ratio = 0.1);

}  // namespace defbec
