#pragma once

#include <vector>

#include "ladderboson/bigint.hpp"
#include "ladderboson/errors.hpp"

namespace ladder {

/// Parameters of the monomial ladder-operator family: one pump mode raised
/// to `pump_power` combined with one annihilation factor of order
/// `signal_powers[s]` per signal mode.
struct ModelSpec {
  int pump_power = 1;              // m >= 1
  std::vector<int> signal_powers;  // k_1..k_S, each >= 1

  int mode_count() const { return static_cast<int>(signal_powers.size()); }
  bool is_two_mode() const { return signal_powers.size() == 1; }
  void validate() const;
};

/// Label of one invariant subspace: pump photon number of the top state plus
/// the initial signal populations.  The ladder inside the subspace has
/// `ladder_steps + 1` rungs.
struct SubspaceIndex {
  int pump_photons = 0;             // M
  std::vector<int> signal_offsets;  // ell_s in [0, k_s - 1]
  int ladder_steps = 0;             // N = floor(M / m)
  int pump_remainder = 0;           // q = M - N m

  int dimension() const { return ladder_steps + 1; }
};

/// Validates offsets against the model and fills the derived fields.
SubspaceIndex make_subspace(const ModelSpec& model, int pump_photons,
                            std::vector<int> signal_offsets);

/// The exact squared ladder matrix elements beta_0..beta_N of one subspace.
/// beta_N = 0 terminates the ladder; all earlier entries are positive.
struct BetaSequence {
  ModelSpec model;
  SubspaceIndex subspace;
  std::vector<Int> values;

  int steps() const { return subspace.ladder_steps; }
  const Int& at(int n) const;
  /// Ladder commutator value B(n) = beta_n - beta_{n-1}, with beta_{-1} = 0.
  Int commutator(int n) const;
  /// Sum of beta_0..beta_{N-1}; the natural scale of the coefficient growth.
  Int sum() const;
  std::vector<double> as_doubles() const;
};

/// Two-mode (S = 1) squared matrix element
///   beta_n = [prod_{i<m} (M - m n - i)] * prod_{j=1..k} (k n + ell + j).
Int beta_two_mode(const ModelSpec& model, const SubspaceIndex& subspace, int n);

/// Multi-mode generalization; reduces to beta_two_mode for S = 1.
Int beta_multi_mode(const ModelSpec& model, const SubspaceIndex& subspace, int n);

/// beta_n / M^m as a real; the companion time rescaling tau -> sqrt(M^m) tau
/// leaves the normalized amplitudes invariant.
double rescaled_beta(const ModelSpec& model, const SubspaceIndex& subspace, int n);

BetaSequence beta_sequence(const ModelSpec& model, const SubspaceIndex& subspace);

/// All subspaces with pump photon number <= max_pump_photons, lexicographic in
/// (M, ell_1, ..., ell_S).
std::vector<SubspaceIndex> enumerate_subspaces(const ModelSpec& model,
                                               int max_pump_photons);

}  // namespace ladder
