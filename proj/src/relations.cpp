#include "hassett/relations.hpp"

#include <algorithm>
#include <set>

#include "hassett/error.hpp"
#include "hassett/parallel.hpp"

namespace hassett {

namespace {

Rational mark_weight(const WeightDatum& a, const Mark& m) { return m.is_edge() ? Rational(1) : a.sum(m.tails); }

bool contains_mark(const std::vector<Mark>& marks, const Mark& m) {
  return std::find(marks.begin(), marks.end(), m) != marks.end();
}

}  // namespace

std::string to_string(Pairing p) { return p == Pairing::P13_24 ? "13|24" : "14|23"; }

InsertResult insert_edge(const ATree& g, int v, const std::vector<Mark>& side1, const std::vector<Mark>& side2) {
  if (v < 0 || v >= g.vertex_count()) throw Error(ErrorKind::NotAtVertex, "vertex out of range");
  const auto here = g.marks(v);
  if (side1.size() < 2 || side2.size() < 2)
    throw Error(ErrorKind::BadPartition, "each side of an inserted edge needs at least two marks");
  if (side1.size() + side2.size() != here.size())
    throw Error(ErrorKind::BadPartition, "sides do not partition the marks at the vertex");
  for (const auto* side : {&side1, &side2})
    for (const Mark& m : *side)
      if (!contains_mark(here, m)) throw Error(ErrorKind::BadPartition, "mark is not at the vertex");
  for (const Mark& m : here)
    if (contains_mark(side1, m) == contains_mark(side2, m))
      throw Error(ErrorKind::BadPartition, "sides do not partition the marks at the vertex");

  const WeightDatum& a = g.weights();
  Rational w1 = 1, w2 = 1;
  for (const Mark& m : side1) w1 += mark_weight(a, m);
  for (const Mark& m : side2) w2 += mark_weight(a, m);
  if (w1 <= 2 && w2 <= 2) throw Error(ErrorKind::InvalidTree, "both sides of an inserted edge are unstable");
  if (w1 <= 2) return UnstableSide{1};
  if (w2 <= 2) return UnstableSide{2};

  // Vertex v keeps side 1; a new vertex takes side 2.
  TreeShape shape;
  shape.blocks.resize(g.vertex_count() + 1);
  const int fresh = g.vertex_count();
  for (int u = 0; u < g.vertex_count(); ++u) shape.blocks[u] = g.blocks(u);
  shape.blocks[v].clear();
  for (const Mark& m : side1)
    if (!m.is_edge()) shape.blocks[v].push_back(m.tails);
  for (const Mark& m : side2)
    if (!m.is_edge()) shape.blocks[fresh].push_back(m.tails);
  std::set<int> moved;
  for (const Mark& m : here)
    if (m.is_edge() && contains_mark(side2, m)) moved.insert(m.flag);
  const auto& flags = g.flags();
  for (int f = 0; f < static_cast<int>(flags.size()); ++f) {
    if (g.is_tail(f) || f > flags[f].partner) continue;
    int x = flags[f].vertex, y = flags[flags[f].partner].vertex;
    if (moved.count(f)) x = fresh;
    if (moved.count(flags[f].partner)) y = fresh;
    shape.edges.emplace_back(x, y);
  }
  shape.edges.emplace_back(v, fresh);
  return ATree::build(g.weights_ptr(), shape);
}

RelationVector principal_relation(const ATree& g, int v, const std::array<Mark, 4>& marks, Pairing pairing) {
  if (v < 0 || v >= g.vertex_count()) throw Error(ErrorKind::NotAtVertex, "vertex out of range");
  const auto here = g.marks(v);
  if (here.size() < 4) throw Error(ErrorKind::TooFewMarks, "vertex carries fewer than four marks");
  for (int i = 0; i < 4; ++i) {
    if (!contains_mark(here, marks[i])) throw Error(ErrorKind::NotAtVertex, "mark is not at the vertex");
    for (int j = 0; j < i; ++j)
      if (marks[i] == marks[j]) throw Error(ErrorKind::MarksNotDistinct, "selected marks repeat");
  }
  // Resolve to the tree's own marks so edge flag ids are current.
  std::array<Mark, 4> sel;
  for (int i = 0; i < 4; ++i) sel[i] = *std::find(here.begin(), here.end(), marks[i]);
  std::vector<Mark> rest;
  for (const Mark& m : here)
    if (std::find(sel.begin(), sel.end(), m) == sel.end()) rest.push_back(m);

  auto classes = [&](const Mark& a1, const Mark& a2, const Mark& b1, const Mark& b2) {
    std::set<CanonicalKey> keys;
    const size_t r = rest.size();
    for (size_t mask = 0; mask < (size_t{1} << r); ++mask) {
      std::vector<Mark> s1{a1, a2}, s2{b1, b2};
      for (size_t i = 0; i < r; ++i) (mask >> i & 1 ? s1 : s2).push_back(rest[i]);
      auto res = insert_edge(g, v, s1, s2);
      if (auto* tree = std::get_if<ATree>(&res)) {
        keys.insert(tree->key());
        continue;
      }
      const int side = std::get<UnstableSide>(res).side;
      const Mark& x = side == 1 ? a1 : b1;
      const Mark& y = side == 1 ? a2 : b2;
      // An unstable side never carries an edge flag: it would weigh more than 2.
      if (x.is_edge() || y.is_edge()) throw Error(ErrorKind::InvalidTree, "unstable side contains an edge flag");
      keys.insert(identify_tail_blocks(g, v, {x.tails, y.tails}).key());
    }
    return keys;
  };

  RelationVector rel;
  rel.dim = g.dimension() - 1;
  for (const auto& k : classes(sel[0], sel[1], sel[2], sel[3])) rel.terms[k] += 1;
  const auto minus = pairing == Pairing::P13_24 ? classes(sel[0], sel[2], sel[1], sel[3])
                                                : classes(sel[0], sel[3], sel[1], sel[2]);
  for (const auto& k : minus) {
    if (--rel.terms[k] == 0) rel.terms.erase(k);
  }
  return rel;
}

std::vector<Relation> all_relations(const StrataTable& table, int d, int jobs) {
  if (d < 0 || d + 1 > table.top_dimension()) return {};
  const auto& sources = table.of_dimension(d + 1);
  std::vector<std::vector<Relation>> per_stratum(sources.size());
  parallel_for(sources.size(), jobs, [&](size_t i) {
    const ATree& g = sources[i];
    for (int v : g.canonical_vertex_order()) {
      const auto marks = g.marks(v);
      const size_t k = marks.size();
      if (k < 4) continue;
      for (size_t a = 0; a < k; ++a)
        for (size_t b = a + 1; b < k; ++b)
          for (size_t c = b + 1; c < k; ++c)
            for (size_t e = c + 1; e < k; ++e)
              for (Pairing p : {Pairing::P13_24, Pairing::P14_23}) {
                std::array<Mark, 4> four{marks[a], marks[b], marks[c], marks[e]};
                Relation rel;
                rel.vector = principal_relation(g, v, four, p);
                if (rel.vector.empty()) continue;
                rel.source = {static_cast<int>(i), g.fingerprint(v),
                              {marks[a].tails, marks[b].tails, marks[c].tails, marks[e].tails}, p};
                for (const auto& [key, coeff] : rel.vector.terms) {
                  auto ref = table.find(key);
                  if (!ref || ref->dim != d)
                    throw Error(ErrorKind::UnknownStratum, "relation term not in table: " + to_string(key));
                  rel.columns.emplace_back(ref->index, coeff);
                }
                std::sort(rel.columns.begin(), rel.columns.end());
                per_stratum[i].push_back(std::move(rel));
              }
    }
  });
  std::vector<Relation> out;
  for (auto& list : per_stratum)
    for (auto& r : list) out.push_back(std::move(r));
  return out;
}

}  // namespace hassett
