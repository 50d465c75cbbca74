#pragma once

#include <string>
#include <vector>

#include "hassett/rational.hpp"
#include "hassett/strata.hpp"

namespace hassett {

/// Polynomial in q; coeffs[i] multiplies q^i.
struct CountPolynomial {
  std::vector<Integer> coeffs;

  Integer evaluate(const Integer& q) const;
  std::string to_string() const;
};

// Number of configurations of k distinct points on a line up to automorphism
// over a field with q elements: (q-2)(q-3)...(q-k+2), and 1 for k = 3.
CountPolynomial configuration_count(int k);

/// Sum over strata of the product over vertices of configuration_count(k_v),
/// where k_v counts blocks and edges at v.
CountPolynomial point_count_polynomial(const StrataTable& table);

/// Eulerian numbers A(m, 0..m-1) by the standard recurrence.
std::vector<Integer> eulerian_numbers(int m);

/// Reads b_d off the q^d coefficient; throws NegativeCoefficient.
std::vector<long long> betti_from_point_count(const CountPolynomial& c);

}  // namespace hassett
