#include "defbec/dispersion.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace defbec {

std::string to_string(Propagation p) {
  switch (p) {
    case Propagation::subluminal: return "subluminal";
    case Propagation::superluminal: return "superluminal";
    case Propagation::luminal: return "luminal";
  }
  return "?";
}

cplx refractive_index_point(cplx chi) {
  const cplx arg = 1.0 + chi;
  if (arg == cplx(0.0, 0.0))
    throw std::domain_error("refractive index branch point: 1 + chi = 0");
  cplx n = std::sqrt(arg);
  if (n.real() < 0.0) n = -n;
  return n;
}

std::vector<cplx> refractive_index(const std::vector<cplx>& chi) {
  std::vector<cplx> n(chi.size());
  for (size_t i = 0; i < chi.size(); ++i) n[i] = refractive_index_point(chi[i]);
  return n;
}

std::vector<double> group_index(const std::vector<double>& omega_grid,
                                const std::vector<cplx>& n_complex) {
  const size_t count = omega_grid.size();
  if (count < 3)
    throw std::invalid_argument("group_index: need at least 3 grid points");
  if (n_complex.size() != count)
    throw std::invalid_argument("group_index: grid/index size mismatch");
  for (size_t i = 1; i < count; ++i)
    if (omega_grid[i] <= omega_grid[i - 1])
      throw std::invalid_argument("group_index: grid must be strictly increasing");

  std::vector<double> ng(count);
  auto re = [&](size_t i) { return n_complex[i].real(); };
  for (size_t i = 0; i < count; ++i) {
    double dn_dw;
    if (i == 0)
      dn_dw = (re(1) - re(0)) / (omega_grid[1] - omega_grid[0]);
    else if (i == count - 1)
      dn_dw = (re(count - 1) - re(count - 2)) /
              (omega_grid[count - 1] - omega_grid[count - 2]);
    else
      dn_dw = (re(i + 1) - re(i - 1)) / (omega_grid[i + 1] - omega_grid[i - 1]);
    ng[i] = re(i) + omega_grid[i] * dn_dw;
  }
  return ng;
}

std::vector<double> group_index_analytic(
    const std::vector<double>& omega_grid,
    const std::function<cplx(double)>& chi,
    const std::function<cplx(double)>& dchi_domega) {
  std::vector<double> ng(omega_grid.size());
  for (size_t i = 0; i < omega_grid.size(); ++i) {
    const double w = omega_grid[i];
    const cplx n = refractive_index_point(chi(w));
    const cplx dn = dchi_domega(w) / (2.0 * n);
    ng[i] = n.real() + w * dn.real();
  }
  return ng;
}

Propagation classify_point(double n_group, double tol) {
  if (std::abs(n_group - 1.0) <= tol || std::abs(n_group) <= tol)
    return Propagation::luminal;
  if (n_group > 1.0) return Propagation::subluminal;
  return Propagation::superluminal;
}

std::vector<Propagation> classify(const std::vector<double>& n_group,
                                  double tol) {
  std::vector<Propagation> out(n_group.size());
  for (size_t i = 0; i < n_group.size(); ++i)
    out[i] = classify_point(n_group[i], tol);
  return out;
}

ZeroCrossingReport group_index_zero_crossings(
    const std::vector<double>& delta_grid, const std::vector<double>& n_group) {
  if (delta_grid.size() != n_group.size())
    throw std::invalid_argument("zero crossings: size mismatch");
  ZeroCrossingReport report;
  for (size_t i = 0; i < n_group.size(); ++i) {
    if (n_group[i] > 0.0) report.has_positive = true;
    if (n_group[i] < 0.0) report.has_negative = true;
    if (i > 0 && n_group[i - 1] * n_group[i] < 0.0) {
      const double t = n_group[i - 1] / (n_group[i - 1] - n_group[i]);
      report.crossings.push_back(delta_grid[i - 1] +
                                 t * (delta_grid[i] - delta_grid[i - 1]));
    }
  }
  return report;
}

DispersionResult dispersion_from_chi(const std::vector<double>& omega_grid,
                                     const std::vector<cplx>& chi, double tol) {
  DispersionResult result;
  result.omega_grid = omega_grid;
  result.n_complex = refractive_index(chi);
  result.n_group = group_index(omega_grid, result.n_complex);
  result.v_group.resize(result.n_group.size());
  for (size_t i = 0; i < result.n_group.size(); ++i)
    result.v_group[i] = result.n_group[i] != 0.0
                            ? constants::c0 / result.n_group[i]
                            : std::numeric_limits<double>::infinity();
  result.classification = classify(result.n_group, tol);
  return result;
}

}  // namespace defbec
