#include "defbec/lambda_core.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <Eigen/SVD>

namespace defbec {

using constants::hbar;
using constants::eps0;

void AtomicParams::validate() const {
  if (gamma31 < 0.0 || gamma32 < 0.0 || gamma12 < 0.0)
    throw std::invalid_argument("decay rates must be >= 0");
  if (!(omega_opt > omega12 && omega12 > 0.0))
    throw std::invalid_argument("need omega_opt > omega12 > 0");
  if (mu32 <= 0.0 || mu31 <= 0.0)
    throw std::invalid_argument("dipole moments must be > 0");
}

bool FieldParams::probe_is_perturbative(double threshold) const {
  return std::abs(g2) <= threshold * std::abs(g1);
}

DerivedRates derived_rates(const AtomicParams& atoms) {
  if (atoms.gamma31 < 0.0 || atoms.gamma32 < 0.0 || atoms.gamma12 < 0.0)
    throw std::invalid_argument("decay rates must be >= 0");
  return {0.5 * (atoms.gamma31 + atoms.gamma32), atoms.gamma12};
}

cplx gamma_factor(double delta, cplx g1, const DerivedRates& rates) {
  const cplx raman(-delta, rates.gamma_mag);  // i gamma_mag - Delta
  if (raman == cplx(0.0, 0.0))
    throw std::domain_error("gamma_factor: degenerate Raman denominator "
                            "(gamma_mag = 0 and Delta = 0)");
  return cplx(delta, -2.0 * rates.gamma_opt) + std::norm(g1) / raman;
}

std::pair<cplx, cplx> rho32_coefficients(double delta, cplx g1,
                                         const DerivedRates& rates) {
  const cplx gamma = gamma_factor(delta, g1, rates);
  if (gamma == cplx(0.0, 0.0))
    throw std::domain_error("rho32_coefficients: Gamma vanishes");
  const cplx rho1 = 1.0 / gamma;
  const cplx asym = (std::conj(gamma) - gamma) / (2.0 * std::norm(gamma));
  const double bracket =
      0.5 / rates.gamma_opt + 1.0 / rates.gamma_mag;
  const cplx rho3 = cplx(0.0, 1.0) / gamma * asym * bracket;
  return {rho1, rho3};
}

LambdaSteadyState lambda_steady_state(const AtomicParams& atoms, double delta,
                                      cplx g1) {
  const DerivedRates rates = derived_rates(atoms);
  LambdaSteadyState s;
  s.gamma_opt = rates.gamma_opt;
  s.gamma_mag = rates.gamma_mag;
  s.big_gamma = gamma_factor(delta, g1, rates);
  std::tie(s.rho32_1, s.rho32_3) = rho32_coefficients(delta, g1, rates);
  const cplx rho1_ref = rho32_coefficients(delta, 0.0, rates).first;
  if (rho1_ref == cplx(0.0, 0.0))
    throw std::domain_error("coupling ratios: rho32^(1)(g1=0) vanishes");
  s.L_l = s.rho32_1 / rho1_ref;
  s.L_nl = s.rho32_3 / rho1_ref;
  return s;
}

CouplingConstants coupling_constants(const AtomicParams& atoms,
                                     const CondensateParams& condensate,
                                     double delta, cplx g1,
                                     double quant_volume) {
  if (quant_volume <= 0.0)
    throw std::invalid_argument("quantization volume must be > 0");
  if (condensate.n_atoms < 1.0)
    throw std::invalid_argument("atom number must be >= 1");
  const LambdaSteadyState s = lambda_steady_state(atoms, delta, g1);
  const double omega_p = atoms.omega_opt + delta;  // Delta = omega_p - omega_opt
  CouplingConstants c;
  c.k0 = atoms.mu32 * std::sqrt(omega_p / (2.0 * hbar * eps0 * quant_volume));
  c.k1 = c.k0 * s.L_l;
  c.k2 = c.k0 * c.k0 * c.k0 * s.L_nl;
  const double root_n = std::sqrt(condensate.n_atoms);
  c.K1 = root_n * c.k1;
  c.K2 = root_n * c.k2;
  return c;
}

Eigen::Matrix3cd liouville_steady_state(const AtomicParams& atoms,
                                        const FieldParams& fields) {
  if (atoms.gamma31 <= 0.0 && atoms.gamma32 <= 0.0 && atoms.gamma12 <= 0.0)
    throw std::invalid_argument("need at least one decay rate > 0");

  // Basis {|1>, |2>, |3>}; rotating frame with the coupling on resonance.
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h(0, 0) = fields.delta;
  h(2, 2) = fields.delta;
  h(2, 0) = -fields.g1;
  h(0, 2) = -std::conj(fields.g1);
  h(2, 1) = -fields.g2;
  h(1, 2) = -std::conj(fields.g2);

  // Dissipator channels (from, to, gamma) in the half-rate convention of the
  // equation of motion: gamma (P_i rho - 2 s rho s^+ + rho P_i), s = |to><from|.
  struct Channel { int from, to; double gamma; };
  const Channel channels[] = {{0, 1, atoms.gamma12},
                              {2, 1, atoms.gamma32},
                              {2, 0, atoms.gamma31}};

  auto idx = [](int r, int c) { return 3 * r + c; };
  Eigen::MatrixXcd liou = Eigen::MatrixXcd::Zero(9, 9);
  const cplx minus_i(0.0, -1.0);

  // -(i)[H, rho]
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      for (int k = 0; k < 3; ++k) {
        liou(idx(r, c), idx(k, c)) += minus_i * h(r, k);
        liou(idx(r, c), idx(r, k)) -= minus_i * h(k, c);
      }

  for (const auto& ch : channels) {
    const int i = ch.from, j = ch.to;
    // -gamma (P_i rho + rho P_i)
    for (int c = 0; c < 3; ++c) liou(idx(i, c), idx(i, c)) -= ch.gamma;
    for (int r = 0; r < 3; ++r) liou(idx(r, i), idx(r, i)) -= ch.gamma;
    // +2 gamma s rho s^+ feeds (j, j) from (i, i)
    liou(idx(j, j), idx(i, i)) += 2.0 * ch.gamma;
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(liou, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double scale = sv(0);
  if (scale > 0.0 && sv(7) < 1e-9 * scale)
    throw std::runtime_error("liouville_steady_state: null space dimension != 1");

  Eigen::VectorXcd null_vec = svd.matrixV().col(8);
  Eigen::Matrix3cd rho;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) rho(r, c) = null_vec(idx(r, c));

  const cplx trace = rho.trace();
  if (std::abs(trace) < 1e-12)
    throw std::runtime_error("liouville_steady_state: traceless null vector");
  rho /= trace;
  // kill the residual anti-Hermitian part from the numerical null space
  rho = 0.5 * (rho + rho.adjoint().eval());
  return rho;
}

CubicFit perturbative_fit(const std::vector<std::pair<double, cplx>>& samples) {
  std::set<double> distinct;
  for (const auto& [g2, rho] : samples) distinct.insert(g2);
  if (distinct.size() < 3)
    throw std::invalid_argument("perturbative_fit: need >= 3 distinct g2 samples");

  Eigen::MatrixXcd a(samples.size(), 3);
  Eigen::VectorXcd b(samples.size());
  for (Eigen::Index r = 0; r < Eigen::Index(samples.size()); ++r) {
    const double g2 = samples[r].first;
    a(r, 0) = 1.0;
    a(r, 1) = g2;
    a(r, 2) = g2 * g2 * g2;
    b(r) = samples[r].second;
  }
  Eigen::VectorXcd sol = a.colPivHouseholderQr().solve(b);
  return {sol(0), sol(1), sol(2)};
}

}  // namespace defbec
