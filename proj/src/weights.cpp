#include "hassett/weights.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "hassett/error.hpp"

namespace hassett {

namespace {

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

WeightDatum WeightDatum::create(std::vector<Rational> values) {
  const int n = static_cast<int>(values.size());
  if (n < 3) throw Error(ErrorKind::TooFewPoints, "need at least 3 weights, got " + std::to_string(n));
  if (n > kMaxTails)
    throw Error(ErrorKind::TooFewPoints, "at most " + std::to_string(kMaxTails) + " weights supported");
  Rational total = 0;
  for (int i = 0; i < n; ++i) {
    if (values[i] <= 0 || values[i] > 1)
      throw Error(ErrorKind::WeightOutOfRange,
                  "m_" + std::to_string(i + 1) + " = " + to_string(values[i]) + " not in (0,1]");
    total += values[i];
  }
  if (total <= 2) throw Error(ErrorKind::TotalTooSmall, "total weight " + to_string(total) + " <= 2");
  return WeightDatum(std::move(values));
}

Rational WeightDatum::sum(TailSet tails) const {
  Rational s = 0;
  while (tails) {
    s += weights_[lowest_label(tails) - 1];
    tails &= tails - 1;
  }
  return s;
}

bool WeightDatum::operator==(const WeightDatum& other) const {
  if (size() != other.size()) return false;
  for (int i = 0; i < size(); ++i)
    if (weights_[i] != other.weights_[i]) return false;
  return true;
}

WeightDatum new_weight_datum(std::vector<Rational> values) {
  return WeightDatum::create(std::move(values));
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> values;
  for (auto part : split_commas(text)) values.push_back(parse_rational(part));
  return values;
}

WeightDatum parse_weights(std::string_view text) { return WeightDatum::create(parse_rational_list(text)); }

std::string to_string(const WeightDatum& a) {
  std::string out;
  for (int i = 1; i <= a.size(); ++i) {
    if (i > 1) out += ',';
    out += to_string(a.weight(i));
  }
  return out;
}

bool ChamberSignature::contains(TailSet s) const {
  return std::binary_search(mergeable.begin(), mergeable.end(), s);
}

ChamberSignature chamber_signature(const WeightDatum& a) {
  ChamberSignature sig;
  sig.n = a.size();
  // Weights are positive, so the mergeable family is downward closed and the
  // search can prune as soon as a partial sum exceeds 1.
  std::function<void(TailSet, int, const Rational&)> grow = [&](TailSet set, int next, const Rational& sum) {
    if (popcount(set) >= 2) sig.mergeable.push_back(set);
    for (int label = next; label <= a.size(); ++label) {
      Rational s = sum + a.weight(label);
      if (s <= 1) grow(set | tail_bit(label), label + 1, s);
    }
  };
  grow(0, 1, Rational(0));
  std::sort(sig.mergeable.begin(), sig.mergeable.end());
  return sig;
}

bool same_chamber(const WeightDatum& a, const WeightDatum& b) {
  return a.size() == b.size() && chamber_signature(a) == chamber_signature(b);
}

std::string to_string(const ChamberSignature& sig) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < sig.mergeable.size(); ++i) {
    if (i) os << ',';
    os << '{';
    auto labels = labels_of(sig.mergeable[i]);
    for (size_t j = 0; j < labels.size(); ++j) os << (j ? "," : "") << labels[j];
    os << '}';
  }
  os << '}';
  return os.str();
}

WeightDatum vertex_weight_structure(const WeightDatum& a, const std::vector<TailSet>& tail_blocks,
                                    int edge_count) {
  std::vector<Rational> values;
  Rational total = 0;
  for (TailSet block : tail_blocks) {
    Rational w = a.sum(block);
    if (w > 1) throw Error(ErrorKind::BlockTooHeavy, "block weight " + to_string(w) + " > 1");
    total += w;
    values.push_back(w);
  }
  for (int i = 0; i < edge_count; ++i) values.emplace_back(1);
  total += edge_count;
  if (total <= 2) throw Error(ErrorKind::UnstableVertex, "vertex weight " + to_string(total) + " <= 2");
  return WeightDatum::create(std::move(values));
}

std::vector<Rational> WeightFamily::values_at(const Rational& eps) const {
  std::vector<Rational> v(offset.size());
  for (size_t i = 0; i < offset.size(); ++i) v[i] = offset[i] + slope[i] * eps;
  return v;
}

std::optional<WeightDatum> WeightFamily::datum_at(const Rational& eps) const {
  try {
    return WeightDatum::create(values_at(eps));
  } catch (const Error&) {
    return std::nullopt;
  }
}

WeightFamily make_family(std::vector<Rational> offset, std::vector<Rational> slope, Rational lower,
                         Rational upper) {
  if (offset.size() != slope.size() || offset.size() < 3)
    throw Error(ErrorKind::InvalidFamily, "family needs at least 3 entries");
  if (offset.size() > static_cast<size_t>(kMaxTails)) throw Error(ErrorKind::InvalidFamily, "too many entries");
  if (!(lower < upper)) throw Error(ErrorKind::InvalidFamily, "empty domain");
  WeightFamily f{std::move(offset), std::move(slope), std::move(lower), std::move(upper)};
  auto lo = f.values_at(f.lower), hi = f.values_at(f.upper);
  for (int i = 0; i < f.size(); ++i) {
    // Affine, so the endpoints bound the open domain.
    if (lo[i] < 0 || lo[i] > 1 || hi[i] < 0 || hi[i] > 1 || (lo[i] == 0 && hi[i] == 0))
      throw Error(ErrorKind::InvalidFamily, "m_" + std::to_string(i + 1) + " leaves (0,1] on the domain");
  }
  return f;
}

namespace {

// Parses one family entry into (offset, slope).
std::pair<Rational, Rational> parse_affine(std::string_view entry) {
  std::string_view s = strip(entry);
  auto pos = s.find("eps");
  if (pos == std::string_view::npos) return {parse_rational(s), Rational(0)};
  if (s.substr(pos + 3).size() != 0) throw Error(ErrorKind::Parse, "bad family entry '" + std::string(entry) + "'");
  std::string_view head = s.substr(0, pos);  // "", "b*", "a+", "a+b*", "a-b*"
  Rational coeff = 1;
  if (!head.empty() && head.back() == '*') {
    head.remove_suffix(1);
    auto op = head.find_last_of("+-");
    std::string_view num = op == std::string_view::npos || op == 0 ? head : head.substr(op + 1);
    coeff = parse_rational(num);
    head = head.substr(0, head.size() - num.size());
  }
  Rational offset = 0;
  if (!head.empty()) {
    char op = head.back();
    if (op != '+' && op != '-') throw Error(ErrorKind::Parse, "bad family entry '" + std::string(entry) + "'");
    head.remove_suffix(1);
    if (op == '-') coeff = -coeff;
    if (!head.empty()) offset = parse_rational(head);
  }
  return {offset, coeff};
}

}  // namespace

WeightFamily parse_family(std::string_view entries, std::string_view range) {
  std::vector<Rational> offset, slope;
  for (auto part : split_commas(entries)) {
    auto [a, b] = parse_affine(part);
    offset.push_back(a);
    slope.push_back(b);
  }
  auto bounds = parse_rational_list(range);
  if (bounds.size() != 2) throw Error(ErrorKind::Parse, "range must be 'lo,hi'");
  return make_family(std::move(offset), std::move(slope), bounds[0], bounds[1]);
}

std::vector<Rational> find_walls(const WeightFamily& family) {
  const int n = family.size();
  std::vector<Rational> walls;
  auto consider = [&](const Rational& a, const Rational& b, int target) {
    if (b == 0) return;
    Rational eps = (target - a) / b;
    if (eps > family.lower && eps < family.upper) walls.push_back(eps);
  };
  std::function<void(int, int, const Rational&, const Rational&)> visit = [&](int next, int size, const Rational& a,
                                                                             const Rational& b) {
    if (size >= 2) consider(a, b, 1);
    for (int i = next; i < n; ++i) visit(i + 1, size + 1, a + family.offset[i], b + family.slope[i]);
  };
  visit(0, 0, Rational(0), Rational(0));

  Rational a = 0, b = 0;
  for (int i = 0; i < n; ++i) {
    a += family.offset[i];
    b += family.slope[i];
  }
  consider(a, b, 2);

  std::sort(walls.begin(), walls.end());
  walls.erase(std::unique(walls.begin(), walls.end()), walls.end());
  return walls;
}

}  // namespace hassett
