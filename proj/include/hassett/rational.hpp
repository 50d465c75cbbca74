#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hassett {

using Integer = mpz_class;
// mpq_class keeps values canonical (lowest terms, positive denominator).
using Rational = mpq_class;

// gmpxx has no long long overloads.
inline Integer to_integer(long long x) { return Integer(static_cast<long>(x)); }

// Set of tail labels 1..n, bit (i-1) for label i.
using TailSet = std::uint64_t;

inline constexpr int kMaxTails = 62;

constexpr TailSet tail_bit(int label) { return TailSet{1} << (label - 1); }
constexpr TailSet full_set(int n) { return (TailSet{1} << n) - 1; }
inline int popcount(TailSet s) { return __builtin_popcountll(s); }
inline int lowest_label(TailSet s) { return __builtin_ctzll(s) + 1; }

std::vector<int> labels_of(TailSet s);
TailSet make_set(std::initializer_list<int> labels);

// Drops `label` and renumbers every larger label down by one.
TailSet remove_label(TailSet s, int label);

// Accepts INT, INT/INT and INT.DIGITS (optionally signed).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

}  // namespace hassett
