#pragma once

#include <span>
#include <vector>

#include "swivel/commutant.hpp"
#include "swivel/matlib.hpp"
#include "swivel/optimizer.hpp"

namespace swivel {

/// Stacked parameter space of several commutant groups.
class SwivelSpace {
 public:
  SwivelSpace() = default;
  explicit SwivelSpace(std::vector<Commutant> groups);

  const std::vector<Commutant>& groups() const { return groups_; }
  int free_dim() const { return free_dim_; }
  bool torus() const;
  SearchSpace search_space() const { return {free_dim_, torus()}; }

  std::span<const double> slice(std::span<const double> params, std::size_t group) const;
  std::vector<Matrix> members(std::span<const double> params) const;

 private:
  std::vector<Commutant> groups_;
  std::vector<int> offsets_;
  int free_dim_ = 0;
};

/// X(params) = F_0 W_1 F_1 W_2 … W_k F_k with W_j a member of group j.
/// Factors are pre-rotated into the commutant bases, so each evaluation only
/// applies block-diagonal (for tori: diagonal) unitaries. For the 2-norm on
/// tori with few phase terms the squared norm is a Hermitian form in the
/// phase products and is evaluated from a precomputed Gram matrix.
class NormChain {
 public:
  NormChain(std::vector<Matrix> factors, SwivelSpace space);

  const SwivelSpace& space() const { return space_; }
  Matrix assemble(std::span<const double> params) const;
  /// log‖X‖_p for p in (0, ∞]; −inf when X = 0.
  double log_norm(std::span<const double> params, double p) const;

 private:
  double log_norm_gram(std::span<const double> params) const;

  SwivelSpace space_;
  std::vector<Matrix> g_;
  std::vector<std::vector<int>> coord_block_;  // per group: block index of every basis coordinate
  bool use_gram_ = false;
  Matrix gram_;
  std::vector<std::vector<int>> terms_;  // per term: block choice in each group
};

}  // namespace swivel
