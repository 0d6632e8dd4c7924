#pragma once

#include <functional>
#include <string>
#include <vector>

#include "defbec/units.hpp"

namespace defbec {

enum class Propagation { subluminal, superluminal, luminal };

std::string to_string(Propagation p);

/// Principal square root n = sqrt(1 + chi) with Re n >= 0. Throws
/// std::domain_error when 1 + chi vanishes.
std::vector<cplx> refractive_index(const std::vector<cplx>& chi);
cplx refractive_index_point(cplx chi);

/// n_g = Re n + omega d(Re n)/d omega, central differences in the interior and
/// one-sided stencils at the endpoints. The grid must be strictly increasing
/// with at least three points.
std::vector<double> group_index(const std::vector<double>& omega_grid,
                                const std::vector<cplx>& n_complex);

/// Analytic-derivative variant for a closed-form chi(omega) with known
/// dchi/domega.
std::vector<double> group_index_analytic(
    const std::vector<double>& omega_grid,
    const std::function<cplx(double)>& chi,
    const std::function<cplx(double)>& dchi_domega);

/// n_g > 1 + tol -> subluminal; within tol of {0, 1} -> luminal band;
/// otherwise (n_g < 0 or 0 < n_g < 1) -> superluminal.
std::vector<Propagation> classify(const std::vector<double>& n_group,
                                  double tol = 1e-6);
Propagation classify_point(double n_group, double tol = 1e-6);

/// Detuning offsets (rad/s) at which n_g(Delta) crosses zero (linear
/// interpolation between grid points), plus whether both signs occur.
struct ZeroCrossingReport {
  std::vector<double> crossings;
  bool has_positive = false;
  bool has_negative = false;
};
ZeroCrossingReport group_index_zero_crossings(const std::vector<double>& delta_grid,
                                              const std::vector<double>& n_group);

struct DispersionResult {
  std::vector<double> omega_grid;
  std::vector<cplx> n_complex;
  std::vector<double> n_group;
  std::vector<double> v_group;  // c / n_g, signed; infinity where n_g == 0
  std::vector<Propagation> classification;
};

DispersionResult dispersion_from_chi(const std::vector<double>& omega_grid,
                                     const std::vector<cplx>& chi,
                                     double tol = 1e-6);

}  // namespace defbec
