#pragma once

#include <vector>

#include "ladderboson/model.hpp"

namespace ladder {

/// Exact integer table of power-series coefficients g^(l)_n built from a beta
/// sequence.  Row 0 is all ones; each deeper row is a weighted prefix
/// accumulation of the previous one:
///   g^(l)_n = g^(l)_{n-1} + beta_n g^(l-1)_{n+1},   g^(l)_0 = beta_0 g^(l-1)_1.
/// Because beta_N = 0, the last two columns of every row coincide.
struct GTable {
  BetaSequence beta;
  std::vector<std::vector<Int>> rows;  // rows[l][n], 0 <= n <= N

  int depth() const { return static_cast<int>(rows.size()) - 1; }
  const Int& g(int l, int n) const { return rows[static_cast<std::size_t>(l)][static_cast<std::size_t>(n)]; }

  /// Appends rows until depth() == new_depth.  The parallel path distributes
  /// the big-integer products across threads; the result is identical to the
  /// serial one.
  void extend(int new_depth, bool parallel = false);
};

GTable build_gtable(const BetaSequence& beta, int depth, bool parallel = false);

/// Same table computed by repeated Hessenberg matrix-vector products against
/// the all-ones vector.  Kept as an independent route for cross-checking.
GTable gtable_via_matrix(const BetaSequence& beta, int depth);

/// The (N+1)-dimensional lower Hessenberg matrix behind the recursion: row n
/// holds beta_0..beta_{min(n, N-1)} in columns 1..min(n+1, N).  Its rank is N
/// (the last two rows are equal) and it factors as the all-ones unit lower
/// triangle times the superdiagonal matrix of betas.
struct HessenbergB {
  std::vector<Int> beta_values;  // beta_0..beta_N (beta_N = 0)

  explicit HessenbergB(const BetaSequence& beta) : beta_values(beta.values) {}
  int dimension() const { return static_cast<int>(beta_values.size()); }

  Int entry(int row, int col) const;
  std::vector<Int> matvec(const std::vector<Int>& v) const;
  std::vector<std::vector<Int>> dense() const;
  /// Unit lower-triangular factor (all ones on and below the diagonal).
  std::vector<std::vector<Int>> unit_lower_factor() const;
  /// Superdiagonal factor with beta_0..beta_{N-1} above the diagonal.
  std::vector<std::vector<Int>> superdiagonal_factor() const;
};

}  // namespace ladder
