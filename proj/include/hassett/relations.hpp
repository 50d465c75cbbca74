#pragma once

#include <array>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "hassett/strata.hpp"
#include "hassett/tree.hpp"

namespace hassett {

struct UnstableSide {
  int side = 0;  // 1 or 2
};
using InsertResult = std::variant<ATree, UnstableSide>;

/// Splits vertex `v` into two vertices joined by a new edge, distributing the
/// marks at v as given. Each side needs at least two marks.
InsertResult insert_edge(const ATree& g, int v, const std::vector<Mark>& side1, const std::vector<Mark>& side2);

/// Which two marks share a side in the subtracted half of the relation; the
/// added half always pairs marks 1,2 against 3,4.
enum class Pairing { P13_24, P14_23 };
std::string to_string(Pairing p);

/// Sparse integer combination of stratum classes of one dimension.
struct RelationVector {
  int dim = 0;
  std::map<CanonicalKey, int> terms;

  bool empty() const { return terms.empty(); }
};

RelationVector principal_relation(const ATree& g, int v, const std::array<Mark, 4>& marks, Pairing pairing);

/// Generating data of one relation, all in canonical (id-free) terms.
struct RelationSource {
  int stratum = 0;  // index among strata of dimension d+1
  std::vector<TailSet> vertex;  // fingerprint of the vertex
  std::array<TailSet, 4> marks{};
  Pairing pairing = Pairing::P13_24;
};

struct Relation {
  RelationVector vector;
  RelationSource source;
  // (index among dimension-d strata, coefficient), sorted by index.
  std::vector<std::pair<int, int>> columns;
};

/// Every nonzero principal relation among d-dimensional strata, in generation
/// order (stratum, vertex, 4-subset of marks, pairing).
std::vector<Relation> all_relations(const StrataTable& table, int d, int jobs = 1);

}  // namespace hassett
