#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hassett/rational.hpp"

namespace hassett {

/// A weight datum (m_1, ..., m_n): every m_i in (0, 1], total strictly above 2,
/// and n >= 3. Instances are always valid; construct through `create`.
class WeightDatum {
 public:
  static WeightDatum create(std::vector<Rational> values);

  int size() const { return static_cast<int>(weights_.size()); }
  // 1-based label.
  const Rational& weight(int label) const { return weights_[label - 1]; }
  const std::vector<Rational>& weights() const { return weights_; }

  Rational sum(TailSet tails) const;
  Rational total() const { return sum(full_set(size())); }

  bool operator==(const WeightDatum& other) const;

 private:
  explicit WeightDatum(std::vector<Rational> w) : weights_(std::move(w)) {}
  std::vector<Rational> weights_;
};

WeightDatum new_weight_datum(std::vector<Rational> values);

// Comma separated rationals, e.g. "1,1,1/3,0.25".
std::vector<Rational> parse_rational_list(std::string_view text);
WeightDatum parse_weights(std::string_view text);
std::string to_string(const WeightDatum& a);

/// The subsets of size >= 2 whose total weight is <= 1, sorted as bitmasks.
struct ChamberSignature {
  int n = 0;
  std::vector<TailSet> mergeable;

  bool contains(TailSet s) const;
  bool operator==(const ChamberSignature&) const = default;
};

ChamberSignature chamber_signature(const WeightDatum& a);
bool same_chamber(const WeightDatum& a, const WeightDatum& b);
std::string to_string(const ChamberSignature& sig);

/// Weight structure of a vertex: one entry per block (its weight sum), then one
/// entry of weight 1 per incident edge.
WeightDatum vertex_weight_structure(const WeightDatum& a, const std::vector<TailSet>& tail_blocks,
                                    int edge_count);

/// m_i(eps) = offset_i + slope_i * eps over the half-open domain (lower, upper].
struct WeightFamily {
  std::vector<Rational> offset;
  std::vector<Rational> slope;
  Rational lower;
  Rational upper;

  int size() const { return static_cast<int>(offset.size()); }
  std::vector<Rational> values_at(const Rational& eps) const;
  // nullopt where the values do not form a valid weight datum.
  std::optional<WeightDatum> datum_at(const Rational& eps) const;
};

// Validates the family: each m_i stays within [0, 1] on the domain and is not
// identically zero; lower < upper.
WeightFamily make_family(std::vector<Rational> offset, std::vector<Rational> slope,
                         Rational lower, Rational upper);

// Entries are `eps`, `c`, `c*eps`, `a+eps`, `a+b*eps` or `a-b*eps`; range is "lo,hi".
WeightFamily parse_family(std::string_view entries, std::string_view range);

/// Parameter values strictly inside the domain where the chamber signature
/// changes, together with points where the total weight crosses 2.
std::vector<Rational> find_walls(const WeightFamily& family);

}  // namespace hassett
