#pragma once

// Measures on [1, inf) in logarithmic coordinates y = log x.
//
// A LogGridMeasure is a finite list of atoms plus a density sampled on the
// uniform grid y_j = j*h, j = 0..n-1.  Multiplicative convolution of measures
// on [1, inf) is additive convolution in y, so everything below is ordinary
// convolution on a half line.
//
// To reach large cutoffs without overflow a measure may be stored "tilted":
// the stored density is e^{-tilt*y} sigma(y) and the stored atom weights are
// e^{-tilt*y} w.  Tilting commutes with convolution, so the algebra below works
// on stored values directly; only evaluations (distribution, Mellin weights)
// undo the tilt.  With tilt = 1 the stored values of dN are those of e^{-y}dN,
// i.e. the measure whose distribution is the one appearing in N(x)/x.
//
// Densities are node values of a piecewise-linear function (trapezoid rule).
// A density that switches on between nodes is sampled as the average over the
// node's cell, which keeps trapezoid sums second order (see sample_density).

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace beurling {

struct Atom {
  double y;
  double weight;  // stored (tilted) weight
};

class LogGridMeasure {
 public:
  // positions closer than this are the same atom
  static constexpr double kAtomMergeTolerance = 1e-11;

  LogGridMeasure() = default;
  LogGridMeasure(double step_h, double y_max, double tilt = 0.0);

  double step_h() const noexcept { return h_; }
  double y_max() const noexcept { return y_max_; }
  double tilt() const noexcept { return tilt_; }
  std::size_t nodes() const noexcept { return density_.size(); }
  double node_y(std::size_t j) const noexcept { return static_cast<double>(j) * h_; }

  std::span<const double> density() const noexcept { return density_; }
  std::span<double> density() noexcept { return density_; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }

  // stored weight; positions beyond y_max are dropped
  void add_atom(double y, double stored_weight);
  // replaces all atoms; sorts and merges coincident positions
  void set_atoms(std::vector<Atom> atoms);

  bool has_density() const noexcept;
  bool same_grid(const LogGridMeasure& other) const noexcept;
  bool is_positive() const noexcept;

 private:
  double h_ = 0.0;
  double y_max_ = 0.0;
  double tilt_ = 0.0;
  std::vector<double> density_;
  std::vector<Atom> atoms_;
};

// unit atom at y = 0 (the identity for multiplicative convolution)
LogGridMeasure delta_one(double step_h, double y_max, double tilt = 0.0);

// Node values for a density that vanishes for y < support_start; `stored`
// returns the already tilted value e^{-tilt y} sigma(y).  Fully covered cells
// take the point value, the cell containing support_start takes the covered
// fraction times the value at the midpoint of the covered part.
LogGridMeasure sample_density(const std::function<double(double)>& stored, double support_start,
                              double step_h, double y_max, double tilt = 0.0);

// mu([1, x]) = atoms with y <= log x plus the density integral up to log x.
double distribution(const LogGridMeasure& mu, double x);
// same, in y coordinates
double distribution_y(const LogGridMeasure& mu, double y);

// int_{[0, y_hi]} e^{-s y} dmu(y) = int_{[1, e^{y_hi}]} u^{-s} dmu(u)
std::complex<double> weighted_mass(const LogGridMeasure& mu, std::complex<double> s, double y_hi);
double weighted_mass(const LogGridMeasure& mu, double s, double y_hi);

// e^{-y_j} mu([0, y_j]) at every node, accumulated without overflow
std::vector<double> normalized_distribution(const LogGridMeasure& mu);

// int over [0, y_hi] of e^{lambda y} against the stored measure
std::complex<double> integrate_exp(const LogGridMeasure& mu, std::complex<double> lambda, double y_hi);

LogGridMeasure log_weighted(const LogGridMeasure& mu);            // y dmu(y)
LogGridMeasure scaled(const LogGridMeasure& mu, double factor);
LogGridMeasure add(const LogGridMeasure& a, const LogGridMeasure& b);
LogGridMeasure retilted(const LogGridMeasure& mu, double tilt);
LogGridMeasure truncated(const LogGridMeasure& mu, double y_max);

// total variation of the stored representation
double stored_mass(const LogGridMeasure& mu);

LogGridMeasure mconvolve(const LogGridMeasure& mu, const LogGridMeasure& nu);
LogGridMeasure mexp(const LogGridMeasure& nu, double tol = 1e-12);

// dN = exp(dPi) through y dN = dN * dpsi, dpsi = y dPi
LogGridMeasure volterra_N_from_Pi(const LogGridMeasure& pi);
// dM with dM * dN = delta_1
LogGridMeasure volterra_inverse(const LogGridMeasure& dN);

// serial reference versions of the two solvers (no OpenMP, plain loops)
namespace reference {
LogGridMeasure mconvolve(const LogGridMeasure& mu, const LogGridMeasure& nu);
LogGridMeasure volterra_N_from_Pi(const LogGridMeasure& pi);
LogGridMeasure volterra_inverse(const LogGridMeasure& dN);
}  // namespace reference

}  // namespace beurling
