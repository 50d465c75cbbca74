#pragma once

#include <vector>

#include "hassett/rational.hpp"

// Reference values computed without any of the library's strata, relation or
// Smith form code.
namespace oracle {

// Betti numbers of the all-ones space with n points from Keel's recursion
// P_{n+1} = (1+q) P_n + q/2 sum_{j=2}^{n-2} C(n,j) P_{j+1} P_{n-j+1}.
std::vector<long long> keel_betti(int n);

// A(m, k) = sum_j (-1)^j C(m+1, j) (k+1-j)^m.
std::vector<long long> eulerian_closed_form(int m);

// Subsets of size >= 2 with weight sum <= 1, by scanning all 2^n subsets.
std::vector<hassett::TailSet> brute_mergeable(const std::vector<hassett::Rational>& w);

long long binomial(int n, int k);

}  // namespace oracle
