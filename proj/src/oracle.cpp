#include "ladderboson/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace ladder {

TridiagonalHamiltonian TridiagonalHamiltonian::from_beta(const BetaSequence& beta) {
  TridiagonalHamiltonian h;
  h.offdiagonal.resize(beta.steps());
  for (int n = 0; n < beta.steps(); ++n)
    h.offdiagonal[n] = std::sqrt(to_double(beta.at(n)));
  return h;
}

Propagator::Propagator(const TridiagonalHamiltonian& h) : dim_(h.dimension()) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim_);
  Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(
      h.offdiagonal.data(), static_cast<Eigen::Index>(h.offdiagonal.size()));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("tridiagonal eigendecomposition failed");
  eigenvalues_.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + dim_);
  eigenvectors_.assign(solver.eigenvectors().data(),
                       solver.eigenvectors().data() + dim_ * dim_);
  initial_weights_.resize(dim_);
  for (int j = 0; j < dim_; ++j) initial_weights_[j] = eigenvectors_[j * dim_];
}

std::vector<std::complex<double>> Propagator::psi(double tau) const {
  std::vector<std::complex<double>> out(dim_, {0.0, 0.0});
  for (int j = 0; j < dim_; ++j) {
    const double phase = -tau * eigenvalues_[j];
    const std::complex<double> c =
        initial_weights_[j] * std::complex<double>(std::cos(phase), std::sin(phase));
    const double* column = &eigenvectors_[j * dim_];
    for (int n = 0; n < dim_; ++n) out[n] += column[n] * c;
  }
  return out;
}

std::vector<std::complex<double>> propagator_psi(const BetaSequence& beta, double tau) {
  if (!std::isfinite(tau)) throw DomainError("tau must be finite");
  return Propagator(TridiagonalHamiltonian::from_beta(beta)).psi(tau);
}

namespace {

// d gamma / d tau with gamma_{-1} = gamma_{N+1} = 0.
void gamma_rhs(const std::vector<double>& beta, const double* y, double* dy) {
  const int N = static_cast<int>(beta.size()) - 1;
  dy[0] = (N >= 1) ? -beta[0] * y[1] : 0.0;
  for (int n = 1; n <= N; ++n)
    dy[n] = y[n - 1] - (n < N ? beta[n] * y[n + 1] : 0.0);
}

struct Rk4Workspace {
  std::vector<double> k1, k2, k3, k4, tmp;
  explicit Rk4Workspace(int dim) : k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim) {}
};

void rk4_advance(const std::vector<double>& beta, std::vector<double>& y,
                 double t_len, double step, Rk4Workspace& w) {
  if (t_len <= 0.0) return;
  const int dim = static_cast<int>(y.size());
  const long steps = std::max(1L, std::lround(std::ceil(t_len / step - 1e-12)));
  const double h = t_len / static_cast<double>(steps);
  for (long s = 0; s < steps; ++s) {
    gamma_rhs(beta, y.data(), w.k1.data());
    for (int i = 0; i < dim; ++i) w.tmp[i] = y[i] + 0.5 * h * w.k1[i];
    gamma_rhs(beta, w.tmp.data(), w.k2.data());
    for (int i = 0; i < dim; ++i) w.tmp[i] = y[i] + 0.5 * h * w.k2[i];
    gamma_rhs(beta, w.tmp.data(), w.k3.data());
    for (int i = 0; i < dim; ++i) w.tmp[i] = y[i] + h * w.k3[i];
    gamma_rhs(beta, w.tmp.data(), w.k4.data());
    for (int i = 0; i < dim; ++i)
      y[i] += (h / 6.0) * (w.k1[i] + 2.0 * w.k2[i] + 2.0 * w.k3[i] + w.k4[i]);
  }
}

}  // namespace

std::vector<double> integrate_gamma_ode(const BetaSequence& beta, double tau,
                                        double step) {
  if (step <= 0.0) throw DomainError("integration step must be > 0");
  if (tau < 0.0) throw DomainError("tau must be >= 0");
  const std::vector<double> b = beta.as_doubles();
  std::vector<double> y(beta.subspace.dimension(), 0.0);
  y[0] = 1.0;
  Rk4Workspace w(static_cast<int>(y.size()));
  rk4_advance(b, y, tau, step, w);
  return y;
}

std::vector<std::vector<double>> integrate_gamma_ode_grid(
    const BetaSequence& beta, const std::vector<double>& taus, double step) {
  if (step <= 0.0) throw DomainError("integration step must be > 0");
  const std::vector<double> b = beta.as_doubles();
  std::vector<double> y(beta.subspace.dimension(), 0.0);
  y[0] = 1.0;
  Rk4Workspace w(static_cast<int>(y.size()));
  std::vector<std::vector<double>> out;
  out.reserve(taus.size());
  double t = 0.0;
  for (double target : taus) {
    if (target < t) throw DomainError("sample times must be ascending");
    rk4_advance(b, y, target - t, step, w);
    t = target;
    out.push_back(y);
  }
  return out;
}

double default_ode_step(const BetaSequence& beta) {
  double max_beta = 0.0;
  for (int n = 0; n < beta.steps(); ++n)
    max_beta = std::max(max_beta, to_double(beta.at(n)));
  return 1e-4 * std::min(1.0, max_beta > 0.0 ? 1.0 / std::sqrt(max_beta) : 1.0);
}

namespace {

// Mixed-radix product Fock space: mode occupancies decoded from a flat index.
struct FockSpace {
  std::vector<int> dims;     // occupancy range per mode
  std::vector<long> strides;
  long total = 1;

  explicit FockSpace(const std::vector<int>& mode_dims) : dims(mode_dims) {
    strides.resize(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
      strides[i] = total;
      total *= dims[i];
    }
  }

  void annihilate(int mode, const std::vector<double>& in, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    const long stride = strides[mode];
    const int dim = dims[mode];
    for (long idx = 0; idx < total; ++idx) {
      const int occ = static_cast<int>((idx / stride) % dim);
      if (occ >= 1 && in[idx] != 0.0)
        out[idx - stride] += std::sqrt(static_cast<double>(occ)) * in[idx];
    }
  }

  void create(int mode, const std::vector<double>& in, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    const long stride = strides[mode];
    const int dim = dims[mode];
    for (long idx = 0; idx < total; ++idx) {
      const int occ = static_cast<int>((idx / stride) % dim);
      if (occ + 1 < dim && in[idx] != 0.0)
        out[idx + stride] += std::sqrt(static_cast<double>(occ + 1)) * in[idx];
    }
  }
};

}  // namespace

std::vector<std::complex<double>> brute_force_fock(const ModelSpec& model,
                                                   const SubspaceIndex& subspace,
                                                   double tau, int max_dimension,
                                                   double* worst_beta_mismatch) {
  model.validate();
  const int m = model.pump_power;
  const int S = model.mode_count();
  const int N = subspace.ladder_steps;

  std::vector<int> dims(1 + S);
  dims[0] = subspace.pump_photons + 1;
  long total = dims[0];
  for (int s = 0; s < S; ++s) {
    dims[1 + s] = model.signal_powers[s] * N + subspace.signal_offsets[s] + 1;
    total *= dims[1 + s];
  }
  if (total > max_dimension)
    throw ResourceError("product Fock space dimension exceeds the cap");

  FockSpace space(dims);
  std::vector<double> v(space.total, 0.0), w(space.total, 0.0);

  // initial ket |M, ell_1, ..., ell_S>
  long start = subspace.pump_photons * space.strides[0];
  for (int s = 0; s < S; ++s) start += subspace.signal_offsets[s] * space.strides[1 + s];
  v[start] = 1.0;

  // A^dag = a^m prod_s (b_s^dag)^{k_s}; each application yields sqrt(beta_n)
  // times the next (normalized) rung.
  const BetaSequence beta = beta_sequence(model, subspace);
  std::vector<double> raw_offdiag(N);
  double worst = 0.0;
  for (int n = 0; n < N; ++n) {
    for (int i = 0; i < m; ++i) {
      space.annihilate(0, v, w);
      v.swap(w);
    }
    for (int s = 0; s < S; ++s) {
      for (int j = 0; j < model.signal_powers[s]; ++j) {
        space.create(1 + s, v, w);
        v.swap(w);
      }
    }
    double norm_sq = 0.0;
    for (double x : v) norm_sq += x * x;
    raw_offdiag[n] = std::sqrt(norm_sq);
    const double expected = to_double(beta.at(n));
    worst = std::max(worst, std::abs(norm_sq - expected) / std::max(1.0, expected));
    const double inv = 1.0 / raw_offdiag[n];
    for (double& x : v) x *= inv;
  }
  if (worst_beta_mismatch) *worst_beta_mismatch = worst;

  TridiagonalHamiltonian h;
  h.offdiagonal = raw_offdiag;
  return Propagator(h).psi(tau);
}

}  // namespace ladder
