#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hassett/rational.hpp"
#include "hassett/weights.hpp"

namespace hassett {

using WeightsPtr = std::shared_ptr<const WeightDatum>;

inline WeightsPtr share(const WeightDatum& a) { return std::make_shared<const WeightDatum>(a); }

/// A half edge. Tails are the fixed points of the involution (`partner == own
/// index`) and carry a label in 1..n; edge flags carry label 0.
struct Flag {
  int vertex = 0;
  int partner = 0;
  int label = 0;
};

/// Complete isomorphism invariant of an A-tree. Splits record, for every edge,
/// the side of the tail bipartition that does not contain label 1. Each vertex
/// contributes its fingerprint (tail sets of the branches around it) and its
/// r-structure blocks.
struct CanonicalKey {
  using VertexEntry = std::pair<std::vector<TailSet>, std::vector<TailSet>>;

  std::vector<TailSet> splits;
  std::vector<VertexEntry> vertices;

  auto operator<=>(const CanonicalKey&) const = default;
  bool operator==(const CanonicalKey&) const = default;
};

std::string to_string(const CanonicalKey& key);

/// An entry of the weight structure at a vertex: a block of coinciding tails or
/// an edge flag. `tails` is the block itself, or for an edge flag, the tails
/// reached through that edge; at a fixed vertex it identifies the mark.
struct Mark {
  enum class Kind { TailBlock, EdgeFlag };
  Kind kind = Kind::TailBlock;
  TailSet tails = 0;
  int flag = -1;

  bool is_edge() const { return kind == Kind::EdgeFlag; }
  bool operator==(const Mark& o) const { return kind == o.kind && tails == o.tails; }
};

// Vertex-level description used to build and rebuild trees.
struct TreeShape {
  std::vector<std::vector<TailSet>> blocks;  // r-structure per vertex
  std::vector<std::pair<int, int>> edges;
};

/// A tail-labelled weighted tree with an r-structure satisfying the
/// block-weight and vertex-stability conditions for its weight datum. Immutable.
class ATree {
 public:
  // Validates every invariant; throws Error on violation.
  static ATree from_graph(WeightsPtr weights, std::vector<Flag> flags, int vertex_count,
                          std::vector<std::vector<TailSet>> blocks);
  static ATree build(WeightsPtr weights, const TreeShape& shape);

  const WeightDatum& weights() const { return *weights_; }
  const WeightsPtr& weights_ptr() const { return weights_; }

  int tail_count() const { return weights_->size(); }
  int vertex_count() const { return static_cast<int>(vertex_flags_.size()); }
  int edge_count() const { return vertex_count() - 1; }

  const std::vector<Flag>& flags() const { return flags_; }
  const std::vector<int>& flags_at(int v) const { return vertex_flags_[v]; }
  bool is_tail(int flag) const { return flags_[flag].partner == flag; }
  int degree(int v) const;

  const std::vector<TailSet>& blocks(int v) const { return blocks_[v]; }
  TailSet tails_at(int v) const;
  int vertex_of_tail(int label) const;
  int block_count() const;

  // Tails reached through `flag`: the label itself for a tail, everything
  // beyond the edge for an edge flag.
  TailSet far_side(int flag) const { return far_[flag]; }
  std::vector<TailSet> fingerprint(int v) const;
  TailSet split_of_edge(int flag) const;
  std::vector<TailSet> splits() const;
  std::optional<int> edge_for_split(TailSet split) const;

  std::vector<Mark> marks(int v) const;
  Rational vertex_weight(int v) const;

  int codimension() const;
  int dimension() const { return tail_count() - 3 - codimension(); }

  const CanonicalKey& key() const { return key_; }
  // Vertices sorted by fingerprint; independent of internal ids.
  std::vector<int> canonical_vertex_order() const;
  TreeShape shape() const;

 private:
  ATree() = default;
  void validate_and_index();

  WeightsPtr weights_;
  std::vector<Flag> flags_;
  std::vector<std::vector<int>> vertex_flags_;
  std::vector<std::vector<TailSet>> blocks_;
  std::vector<TailSet> far_;
  CanonicalKey key_;
};

CanonicalKey canonical_key(const ATree& g);
int codimension(const ATree& g);
int dimension(const ATree& g);

ATree one_vertex_tree(WeightsPtr a, std::vector<TailSet> blocks);
ATree one_vertex_tree(const WeightDatum& a, std::vector<TailSet> blocks);
ATree principal_tree(WeightsPtr a);

/// Tree realising a set of pairwise compatible splits (each given as either
/// side). Tails not covered by `blocks` stay singletons; each block must sit at
/// a single vertex.
ATree tree_from_splits(WeightsPtr a, const std::vector<TailSet>& splits, const std::vector<TailSet>& blocks = {});
ATree tree_from_splits(const WeightDatum& a, const std::vector<TailSet>& splits,
                       const std::vector<TailSet>& blocks = {});

bool splits_compatible(TailSet a, TailSet b, int n);

ATree contract_edge(const ATree& g, int edge_flag);
ATree identify_tail_blocks(const ATree& g, int vertex, const std::vector<TailSet>& blocks);

/// g1 <= g2 in the closure order generated by edge contraction and tail
/// identification (g1 is in the closure of the stratum of g2).
bool degenerates_to(const ATree& g1, const ATree& g2);

struct ForgetResult {
  ATree tree;
  // Vertex ids of the input tree that were collapsed by stabilisation.
  std::vector<int> collapsed;
};

ForgetResult forget_tail_detailed(const ATree& g, int label);
// Removes a tail, stabilises, and renumbers larger labels down by one.
ATree forget_tail(const ATree& g, int label);

struct PuncturedLine {
  int punctures = 0;
};
struct ProductOfModuli {
  std::vector<WeightDatum> factors;
};
using FiberKind = std::variant<PuncturedLine, ProductOfModuli>;

FiberKind classify_fiber(const ATree& g, int label);

}  // namespace hassett
