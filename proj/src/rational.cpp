#include "hassett/rational.hpp"

#include <cctype>

#include "hassett/error.hpp"

namespace hassett {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorKind::TotalTooSmall: return "TotalTooSmall";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::BlockTooHeavy: return "BlockTooHeavy";
    case ErrorKind::UnstableVertex: return "UnstableVertex";
    case ErrorKind::InvalidTree: return "InvalidTree";
    case ErrorKind::NotAnEdge: return "NotAnEdge";
    case ErrorKind::NotAtVertex: return "NotAtVertex";
    case ErrorKind::IncompatibleSplits: return "IncompatibleSplits";
    case ErrorKind::InvalidResidualDatum: return "InvalidResidualDatum";
    case ErrorKind::NotSingleton: return "NotSingleton";
    case ErrorKind::UnknownStratum: return "UnknownStratum";
    case ErrorKind::BadPartition: return "BadPartition";
    case ErrorKind::TooFewMarks: return "TooFewMarks";
    case ErrorKind::MarksNotDistinct: return "MarksNotDistinct";
    case ErrorKind::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorKind::InvalidFamily: return "InvalidFamily";
  }
  return "Unknown";
}

std::vector<int> labels_of(TailSet s) {
  std::vector<int> out;
  out.reserve(popcount(s));
  while (s) {
    out.push_back(lowest_label(s));
    s &= s - 1;
  }
  return out;
}

TailSet make_set(std::initializer_list<int> labels) {
  TailSet s = 0;
  for (int l : labels) s |= tail_bit(l);
  return s;
}

TailSet remove_label(TailSet s, int label) {
  const TailSet below = s & (tail_bit(label) - 1);
  const TailSet above = (s >> label) << (label - 1);
  return below | above;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational q;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw Error(ErrorKind::Parse, "bad rational '" + std::string(text) + "'");
    Integer d(std::string(den), 10);
    if (d == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    q = Rational(Integer(std::string(num), 10), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac))
      throw Error(ErrorKind::Parse, "bad decimal '" + std::string(text) + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    q = Rational(Integer(std::string(whole) + std::string(frac), 10), scale);
  } else {
    if (!all_digits(s)) throw Error(ErrorKind::Parse, "bad integer '" + std::string(text) + "'");
    q = Rational(Integer(std::string(s), 10));
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace hassett
