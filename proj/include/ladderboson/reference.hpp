#pragma once

#include <complex>
#include <vector>

#include "ladderboson/model.hpp"

namespace ladder {

/// Squeezed-pump parameter bundle tied together by r = 2 alpha tau.
struct SqueezeParams {
  double alpha;  // coherent pump amplitude, > 0
  double r;      // squeezing parameter, >= 0
  double tau;    // dimensionless propagation time

  static SqueezeParams from_time(double alpha, double tau);
  static SqueezeParams from_squeezing(double alpha, double r);
};

/// Exactly solvable one-photon exchange case:
/// gamma_n(tau) = cos^{N-n}(tau) sin^n(tau) / n!.
double beamsplitter_gamma(int N, int n, double tau);

/// Even-Fock amplitudes of the squeezed vacuum with squeezing parameter r:
/// entry n is <2n|S_r> = sqrt(sech r) C(2n,n)^{1/2} (-i tanh r / 2)^n.
std::vector<std::complex<double>> squeezed_state_amplitudes(double r, int n_max);

/// Semiclassical-pump coefficient, independent of the subspace:
/// sqrt(sech r) (tanh r / 2 alpha)^n / n!.
double parametric_gamma(int n, double r, double alpha);

/// Semiclassical-pump amplitude inside the N ladder:
/// [(N)_n C(2n,n) sech r]^{1/2} (-i tanh r / 2 alpha)^n.
std::complex<double> parametric_psi(int N, int n, double r, double alpha);

struct ParametricErrorRow {
  int n;
  double gamma_exact;
  double gamma_param;
  double rel_err;
};

struct ParametricErrorTable {
  int subspace_size;  // N
  std::vector<ParametricErrorRow> rows;
  int first_exceed_n;  // first n with rel_err > eps, -1 if none
};

/// Per-amplitude comparison of the semiclassical coefficient against the
/// exact engine at the representative subspace N = round(alpha^2), optionally
/// with the neighbors N -+ ceil(alpha) spanning the significant pump window.
struct ParametricErrorReport {
  double alpha;
  double r;
  double eps;
  double predicted_crossing;  // eps * alpha / r^2
  ParametricErrorTable main;
  std::vector<ParametricErrorTable> neighbors;
};

ParametricErrorReport parametric_error_report(double alpha, double r, double eps,
                                              bool include_neighbors = false,
                                              int max_dimension = 2001);

}  // namespace ladder
