#pragma once

#include <string>
#include <vector>

#include "hassett/relations.hpp"
#include "hassett/smith.hpp"
#include "hassett/strata.hpp"

namespace hassett {

/// A_d = H_{2d}: free abelian group on the d-dimensional strata modulo the
/// principal relations of that dimension.
struct DimensionGroup {
  int dim = 0;
  int generators = 0;
  int relations = 0;  // after deduplication
  SmithForm smith;
  long long betti = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
};

struct ChowPresentation {
  WeightsPtr weights;
  std::vector<DimensionGroup> groups;  // indexed by dimension

  std::vector<long long> betti() const;
  bool torsion_free() const;
};

using RelationsByDim = std::vector<std::vector<Relation>>;

RelationsByDim all_relations_by_dim(const StrataTable& table, int jobs = 1);

// Builds the presentation from explicitly supplied relations.
ChowPresentation present(const StrataTable& table, const RelationsByDim& relations, int jobs = 1);
ChowPresentation chow_groups(const StrataTable& table, int jobs = 1);
ChowPresentation chow_groups(const WeightDatum& a, int jobs = 1);

/// Coefficients of sum_d b_d t^(2d), index = power of t.
std::vector<long long> poincare_polynomial(const ChowPresentation& p);
std::string poincare_string(const ChowPresentation& p);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<Check> checks;
  bool passed() const;
};

/// Duality, Euler characteristic, torsion, and point-count agreement.
VerificationReport verify_presentation(const ChowPresentation& p, const StrataTable& table);

}  // namespace hassett
