#include "ladderboson/model.hpp"

#include <algorithm>

namespace ladder {

void ModelSpec::validate() const {
  if (pump_power < 1) throw DomainError("pump power m must be >= 1");
  if (signal_powers.empty()) throw DomainError("at least one signal mode required");
  for (int k : signal_powers)
    if (k < 1) throw DomainError("signal powers k_s must be >= 1");
}

SubspaceIndex make_subspace(const ModelSpec& model, int pump_photons,
                            std::vector<int> signal_offsets) {
  model.validate();
  if (pump_photons < 0) throw DomainError("pump photon number M must be >= 0");
  if (signal_offsets.size() != model.signal_powers.size())
    throw DomainError("one signal offset per signal mode required");
  for (std::size_t s = 0; s < signal_offsets.size(); ++s) {
    if (signal_offsets[s] < 0 || signal_offsets[s] > model.signal_powers[s] - 1)
      throw DomainError("signal offset ell_s must satisfy 0 <= ell_s <= k_s - 1");
  }
  SubspaceIndex idx;
  idx.pump_photons = pump_photons;
  idx.signal_offsets = std::move(signal_offsets);
  idx.ladder_steps = pump_photons / model.pump_power;
  idx.pump_remainder = pump_photons - idx.ladder_steps * model.pump_power;
  return idx;
}

const Int& BetaSequence::at(int n) const {
  if (n < 0 || n > steps()) throw DomainError("beta index out of range");
  return values[static_cast<std::size_t>(n)];
}

Int BetaSequence::commutator(int n) const {
  if (n == 0) return at(0);
  return at(n) - at(n - 1);
}

Int BetaSequence::sum() const {
  Int acc = 0;
  for (int n = 0; n < steps(); ++n) acc += values[static_cast<std::size_t>(n)];
  return acc;
}

std::vector<double> BetaSequence::as_doubles() const {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = to_double(values[i]);
  return out;
}

Int beta_multi_mode(const ModelSpec& model, const SubspaceIndex& subspace, int n) {
  if (n < 0 || n > subspace.ladder_steps) throw DomainError("ladder index out of range");
  const int m = model.pump_power;
  const int M = subspace.pump_photons;
  Int beta = 1;
  for (int i = 0; i < m; ++i) beta *= (M - m * n - i);
  for (std::size_t s = 0; s < model.signal_powers.size(); ++s) {
    const int k = model.signal_powers[s];
    const int ell = subspace.signal_offsets[s];
    for (int j = 1; j <= k; ++j) beta *= (k * n + ell + j);
  }
  return beta;
}

Int beta_two_mode(const ModelSpec& model, const SubspaceIndex& subspace, int n) {
  if (!model.is_two_mode())
    throw DomainError("beta_two_mode requires a single signal mode");
  return beta_multi_mode(model, subspace, n);
}

double rescaled_beta(const ModelSpec& model, const SubspaceIndex& subspace, int n) {
  if (subspace.pump_photons < 1)
    throw DomainError("time rescaling undefined for M = 0");
  Int scale = 1;
  for (int i = 0; i < model.pump_power; ++i) scale *= subspace.pump_photons;
  return ratio_as_double(beta_multi_mode(model, subspace, n), scale);
}

BetaSequence beta_sequence(const ModelSpec& model, const SubspaceIndex& subspace) {
  BetaSequence seq;
  seq.model = model;
  seq.subspace = subspace;
  seq.values.reserve(static_cast<std::size_t>(subspace.dimension()));
  for (int n = 0; n <= subspace.ladder_steps; ++n)
    seq.values.push_back(beta_multi_mode(model, subspace, n));
  return seq;
}

std::vector<SubspaceIndex> enumerate_subspaces(const ModelSpec& model,
                                               int max_pump_photons) {
  model.validate();
  if (max_pump_photons < 0) throw DomainError("max pump photon number must be >= 0");
  std::vector<SubspaceIndex> out;
  std::vector<int> offsets(model.signal_powers.size(), 0);
  for (int M = 0; M <= max_pump_photons; ++M) {
    std::fill(offsets.begin(), offsets.end(), 0);
    while (true) {
      out.push_back(make_subspace(model, M, offsets));
      // odometer increment over the offset ranges, least significant last
      int s = static_cast<int>(offsets.size()) - 1;
      while (s >= 0) {
        if (++offsets[s] < model.signal_powers[s]) break;
        offsets[s] = 0;
        --s;
      }
      if (s < 0) break;
    }
  }
  return out;
}

}  // namespace ladder
