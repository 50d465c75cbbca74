#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hassett/tree.hpp"
#include "hassett/weights.hpp"

namespace hassett {

struct StratumRef {
  int dim = 0;
  int index = 0;
  auto operator<=>(const StratumRef&) const = default;
};

/// All isomorphism classes of A-trees for one weight datum, grouped by complex
/// dimension and sorted by canonical key within each dimension.
class StrataTable {
 public:
  StrataTable(WeightsPtr weights, std::vector<ATree> trees);

  const WeightDatum& weights() const { return *weights_; }
  const WeightsPtr& weights_ptr() const { return weights_; }
  int top_dimension() const { return weights_->size() - 3; }

  const std::vector<ATree>& of_dimension(int d) const { return by_dim_.at(d); }
  const ATree& at(StratumRef ref) const { return by_dim_.at(ref.dim).at(ref.index); }
  std::optional<StratumRef> find(const CanonicalKey& key) const;
  std::optional<StratumRef> find(const ATree& g) const { return find(g.key()); }

  size_t total() const;
  std::vector<size_t> counts() const;

 private:
  WeightsPtr weights_;
  std::vector<std::vector<ATree>> by_dim_;
  std::map<CanonicalKey, StratumRef> index_;
};

// Splits (side without label 1) that can occur in some A-tree: both sides
// weigh more than 1.
std::vector<TailSet> admissible_splits(const WeightDatum& a);

// Set partitions of `tails` whose non-singleton blocks weigh at most 1.
std::vector<std::vector<TailSet>> admissible_r_structures(const WeightDatum& a, TailSet tails);

StrataTable enumerate_strata(WeightsPtr a, int jobs = 1);
StrataTable enumerate_strata(const WeightDatum& a, int jobs = 1);

/// Strata in the closure of `g`, including `g`, in table order.
std::vector<ATree> closure_strata(const StrataTable& table, const ATree& g);

/// Covering pairs (lower, upper) of the closure order; dimensions differ by one.
std::vector<std::pair<StratumRef, StratumRef>> covering_relations(const StrataTable& table);

/// Product over vertices of (-1)^(k-3) (k-3)!, k = blocks + edges at the vertex.
Integer stratum_euler_characteristic(const ATree& g);

}  // namespace hassett
