#pragma once

#include <complex>
#include <vector>

#include "ladderboson/model.hpp"

namespace ladder {

/// Real symmetric tridiagonal matrix of the interaction Hamiltonian inside
/// one subspace: zero diagonal, off-diagonal entries sqrt(beta_n).
struct TridiagonalHamiltonian {
  std::vector<double> offdiagonal;  // sqrt(beta_0)..sqrt(beta_{N-1})

  static TridiagonalHamiltonian from_beta(const BetaSequence& beta);
  int dimension() const { return static_cast<int>(offdiagonal.size()) + 1; }
};

/// Spectral propagator exp(-i tau H) e_0.  The eigendecomposition is done
/// once, so sweeping tau is cheap; valid at any tau (no series cancellation).
class Propagator {
 public:
  explicit Propagator(const TridiagonalHamiltonian& h);

  std::vector<std::complex<double>> psi(double tau) const;
  int dimension() const { return dim_; }

 private:
  int dim_;
  std::vector<double> eigenvalues_;
  std::vector<double> eigenvectors_;  // column-major, dim_ x dim_
  std::vector<double> initial_weights_;  // first row of the eigenvector matrix
};

/// One-shot spectral propagation of e_0.
std::vector<std::complex<double>> propagator_psi(const BetaSequence& beta, double tau);

/// Classical fixed-step RK4 on the real amplitude system
///   d gamma_n / d tau = gamma_{n-1} - beta_n gamma_{n+1},
/// from gamma(0) = e_0.  Global error O(step^4).
std::vector<double> integrate_gamma_ode(const BetaSequence& beta, double tau,
                                        double step);

/// Same integration recording the state at each requested time (ascending,
/// starting from 0); one pass instead of one integration per sample.
std::vector<std::vector<double>> integrate_gamma_ode_grid(
    const BetaSequence& beta, const std::vector<double>& taus, double step);

/// Default step policy 1e-4 * min(1, 1/sqrt(max beta)).
double default_ode_step(const BetaSequence& beta);

/// First-principles reference: applies the raw boson operators on the
/// truncated product Fock space to rebuild the ladder basis, checks the
/// squared matrix elements against the integer betas, then propagates.
/// `max_dimension` caps the product-space size.
std::vector<std::complex<double>> brute_force_fock(const ModelSpec& model,
                                                   const SubspaceIndex& subspace,
                                                   double tau,
                                                   int max_dimension = 10000,
                                                   double* worst_beta_mismatch = nullptr);

}  // namespace ladder
