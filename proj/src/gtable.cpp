#include "ladderboson/gtable.hpp"

#include <algorithm>

namespace ladder {

namespace {

// Serial row update via the neighbor recurrence; O(N) multiply-adds.
std::vector<Int> next_row_serial(const std::vector<Int>& prev,
                                 const std::vector<Int>& beta) {
  const int N = static_cast<int>(beta.size()) - 1;
  std::vector<Int> row(N + 1);
  if (N == 0) {
    row[0] = 0;  // beta_0 = 0, empty sum
    return row;
  }
  row[0] = beta[0] * prev[1];
  for (int n = 1; n < N; ++n) row[n] = row[n - 1] + beta[n] * prev[n + 1];
  row[N] = row[N - 1];
  return row;
}

// Parallel variant: the big-integer products beta_n * g^(l-1)_{n+1} carry the
// cost and are independent, so they are farmed out; the prefix accumulation
// stays serial.  Bit-identical to next_row_serial.
std::vector<Int> next_row_parallel(const std::vector<Int>& prev,
                                   const std::vector<Int>& beta) {
  const int N = static_cast<int>(beta.size()) - 1;
  std::vector<Int> row(N + 1);
  if (N == 0) {
    row[0] = 0;
    return row;
  }
  std::vector<Int> products(N);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int n = 0; n < N; ++n) products[n] = beta[n] * prev[n + 1];
  row[0] = products[0];
  for (int n = 1; n < N; ++n) row[n] = row[n - 1] + products[n];
  row[N] = row[N - 1];
  return row;
}

}  // namespace

void GTable::extend(int new_depth, bool parallel) {
  if (rows.empty()) rows.emplace_back(beta.subspace.dimension(), Int(1));
  while (depth() < new_depth) {
    const std::vector<Int>& prev = rows.back();
    rows.push_back(parallel ? next_row_parallel(prev, beta.values)
                            : next_row_serial(prev, beta.values));
  }
}

GTable build_gtable(const BetaSequence& beta, int depth, bool parallel) {
  if (depth < 0) throw DomainError("table depth must be >= 0");
  GTable table;
  table.beta = beta;
  table.extend(depth, parallel);
  return table;
}

GTable gtable_via_matrix(const BetaSequence& beta, int depth) {
  if (depth < 0) throw DomainError("table depth must be >= 0");
  GTable table;
  table.beta = beta;
  HessenbergB B(beta);
  std::vector<Int> v(B.dimension(), Int(1));
  table.rows.push_back(v);
  for (int p = 1; p <= depth; ++p) {
    v = B.matvec(v);
    table.rows.push_back(v);
  }
  return table;
}

Int HessenbergB::entry(int row, int col) const {
  const int N = dimension() - 1;
  if (row < 0 || row > N || col < 0 || col > N)
    throw DomainError("matrix index out of range");
  if (col >= 1 && col <= std::min(row + 1, N)) return beta_values[col - 1];
  return 0;
}

std::vector<Int> HessenbergB::matvec(const std::vector<Int>& v) const {
  const int N = dimension() - 1;
  if (static_cast<int>(v.size()) != N + 1)
    throw DomainError("vector length mismatch");
  std::vector<Int> out(N + 1);
  for (int n = 0; n <= N; ++n) {
    Int acc = 0;
    const int top = std::min(n + 1, N);
    for (int col = 1; col <= top; ++col) acc += beta_values[col - 1] * v[col];
    out[n] = acc;
  }
  return out;
}

std::vector<std::vector<Int>> HessenbergB::dense() const {
  const int N = dimension() - 1;
  std::vector<std::vector<Int>> out(N + 1, std::vector<Int>(N + 1, Int(0)));
  for (int r = 0; r <= N; ++r)
    for (int c = 0; c <= N; ++c) out[r][c] = entry(r, c);
  return out;
}

std::vector<std::vector<Int>> HessenbergB::unit_lower_factor() const {
  const int N = dimension() - 1;
  std::vector<std::vector<Int>> out(N + 1, std::vector<Int>(N + 1, Int(0)));
  for (int r = 0; r <= N; ++r)
    for (int c = 0; c <= r; ++c) out[r][c] = 1;
  return out;
}

std::vector<std::vector<Int>> HessenbergB::superdiagonal_factor() const {
  const int N = dimension() - 1;
  std::vector<std::vector<Int>> out(N + 1, std::vector<Int>(N + 1, Int(0)));
  for (int r = 0; r < N; ++r) out[r][r + 1] = beta_values[r];
  return out;
}

}  // namespace ladder
