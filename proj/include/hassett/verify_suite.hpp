#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hassett/presentation.hpp"
#include "hassett/strata.hpp"

namespace hassett {

using Rng = std::mt19937_64;

/// Rational weights k/D with D <= max_denominator, redrawn until valid.
WeightDatum random_weight_datum(Rng& rng, int n, int max_denominator = 12);

/// A different datum with the same chamber signature: every weight scaled by
/// (1 - delta) with delta below the smallest slack of a strict inequality.
WeightDatum same_chamber_partner(const WeightDatum& a, Rng& rng);

/// Same tree with flag and vertex ids permuted at random.
ATree relabel_randomly(const ATree& g, Rng& rng);

// Everything reachable from g by contracting edges and splitting blocks,
// i.e. the strata whose closure contains g's stratum.
std::vector<CanonicalKey> upward_closure(const ATree& g);

/// Textual dump of a table and presentation with the weights left out; equal
/// for data in the same chamber.
std::string strata_fingerprint(const StrataTable& table);
std::string presentation_fingerprint(const ChowPresentation& p);

struct MoveCheckOptions {
  bool exhaustive = true;
  std::size_t sample = 40;  // trees per table when not exhaustive
  int relabelings = 100;
};

// Each returned string describes one violated move property.
std::vector<std::string> check_move_properties(const StrataTable& table, Rng& rng, const MoveCheckOptions& options);

struct SuiteOptions {
  int max_n = 5;
  int trials = 25;
  std::uint64_t seed = 7;
  int jobs = 1;
  // Drops the first dimension-0 relation from every presentation.
  bool inject_fault = false;
};

struct SuiteFailure {
  std::string weights;
  std::string check;
  std::string detail;
};

struct SuiteReport {
  int data_tested = 0;
  std::optional<SuiteFailure> failure;
  bool passed() const { return !failure; }
};

/// Runs every invariant on fixed and random data for n = 4..max_n, stopping at
/// the first failure (the smallest n that fails).
SuiteReport run_verify_suite(const SuiteOptions& options);

// All suite checks on one datum; empty on success.
std::vector<SuiteFailure> check_datum(const WeightDatum& a, Rng& rng, const SuiteOptions& options);

}  // namespace hassett
