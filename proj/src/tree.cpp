#include "hassett/tree.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include "hassett/error.hpp"

namespace hassett {

namespace {

std::string set_string(TailSet s) {
  std::string out = "{";
  bool first = true;
  for (int l : labels_of(s)) {
    if (!first) out += ',';
    out += std::to_string(l);
    first = false;
  }
  return out + "}";
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidTree, what); }

}  // namespace

std::string to_string(const CanonicalKey& key) {
  std::ostringstream os;
  os << "splits[";
  for (size_t i = 0; i < key.splits.size(); ++i) os << (i ? " " : "") << set_string(key.splits[i]);
  os << "] blocks[";
  bool first = true;
  for (const auto& [print, blocks] : key.vertices)
    for (TailSet b : blocks)
      if (popcount(b) > 1) {
        os << (first ? "" : " ") << set_string(b);
        first = false;
      }
  os << "]";
  return os.str();
}

ATree ATree::from_graph(WeightsPtr weights, std::vector<Flag> flags, int vertex_count,
                        std::vector<std::vector<TailSet>> blocks) {
  ATree g;
  g.weights_ = std::move(weights);
  g.flags_ = std::move(flags);
  g.vertex_flags_.assign(vertex_count, {});
  g.blocks_ = std::move(blocks);
  g.validate_and_index();
  return g;
}

ATree ATree::build(WeightsPtr weights, const TreeShape& shape) {
  const int vcount = static_cast<int>(shape.blocks.size());
  std::vector<Flag> flags;
  for (int v = 0; v < vcount; ++v)
    for (TailSet block : shape.blocks[v])
      for (int label : labels_of(block)) {
        int id = static_cast<int>(flags.size());
        flags.push_back({v, id, label});
      }
  for (auto [u, v] : shape.edges) {
    if (u < 0 || v < 0 || u >= vcount || v >= vcount) invalid("edge endpoint out of range");
    int id = static_cast<int>(flags.size());
    flags.push_back({u, id + 1, 0});
    flags.push_back({v, id, 0});
  }
  return from_graph(std::move(weights), std::move(flags), vcount, shape.blocks);
}

void ATree::validate_and_index() {
  const int n = weights_->size();
  const int vcount = vertex_count();
  const int fcount = static_cast<int>(flags_.size());
  if (vcount == 0) invalid("no vertices");
  if (static_cast<int>(blocks_.size()) != vcount) invalid("r-structure size mismatch");

  std::vector<TailSet> tails(vcount, 0);
  TailSet seen = 0;
  int edge_flags = 0;
  for (int f = 0; f < fcount; ++f) {
    const Flag& fl = flags_[f];
    if (fl.vertex < 0 || fl.vertex >= vcount) invalid("flag boundary out of range");
    if (fl.partner < 0 || fl.partner >= fcount || flags_[fl.partner].partner != f) invalid("involution is not an involution");
    vertex_flags_[fl.vertex].push_back(f);
    if (fl.partner == f) {
      if (fl.label < 1 || fl.label > n || (seen & tail_bit(fl.label))) invalid("tail labels are not a bijection");
      seen |= tail_bit(fl.label);
      tails[fl.vertex] |= tail_bit(fl.label);
    } else {
      if (fl.label != 0) invalid("edge flag carries a label");
      if (flags_[fl.partner].vertex == fl.vertex) invalid("loop edge");
      ++edge_flags;
    }
  }
  if (seen != full_set(n)) invalid("tail labels are not a bijection");
  if (edge_flags / 2 != vcount - 1) invalid("edge count is not |V|-1");

  // Connectivity.
  std::vector<char> reached(vcount, 0);
  std::vector<int> stack{0};
  reached[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int f : vertex_flags_[v]) {
      int u = flags_[flags_[f].partner].vertex;
      if (!reached[u]) {
        reached[u] = 1;
        stack.push_back(u);
      }
    }
  }
  if (std::count(reached.begin(), reached.end(), 1) != vcount) invalid("graph is not connected");

  for (int v = 0; v < vcount; ++v) {
    auto& bl = blocks_[v];
    std::sort(bl.begin(), bl.end());
    TailSet cover = 0;
    for (TailSet b : bl) {
      if (b == 0 || (cover & b)) invalid("r-structure blocks overlap or are empty");
      cover |= b;
      if (weights_->sum(b) > 1) throw Error(ErrorKind::BlockTooHeavy, "block " + set_string(b) + " weighs more than 1");
    }
    if (cover != tails[v]) invalid("r-structure does not partition the tails at a vertex");
    if (vertex_weight(v) <= 2)
      throw Error(ErrorKind::UnstableVertex, "vertex with tails " + set_string(tails[v]) + " has weight " +
                                                 to_string(vertex_weight(v)) + " <= 2");
  }

  // Far sides: tails beyond each edge flag.
  far_.assign(fcount, 0);
  for (int f = 0; f < fcount; ++f) {
    if (is_tail(f)) {
      far_[f] = tail_bit(flags_[f].label);
      continue;
    }
    const int from = flags_[f].vertex;
    TailSet acc = 0;
    std::vector<std::pair<int, int>> todo{{flags_[flags_[f].partner].vertex, from}};
    while (!todo.empty()) {
      auto [v, parent] = todo.back();
      todo.pop_back();
      acc |= tails[v];
      for (int h : vertex_flags_[v]) {
        if (is_tail(h)) continue;
        int u = flags_[flags_[h].partner].vertex;
        if (u != parent) todo.push_back({u, v});
      }
    }
    far_[f] = acc;
  }

  key_.splits = splits();
  key_.vertices.clear();
  for (int v = 0; v < vcount; ++v) key_.vertices.emplace_back(fingerprint(v), blocks_[v]);
  std::sort(key_.vertices.begin(), key_.vertices.end());
}

int ATree::degree(int v) const {
  int d = 0;
  for (int f : vertex_flags_[v]) d += is_tail(f) ? 0 : 1;
  return d;
}

TailSet ATree::tails_at(int v) const {
  TailSet s = 0;
  for (TailSet b : blocks_[v]) s |= b;
  return s;
}

int ATree::vertex_of_tail(int label) const {
  for (const Flag& f : flags_)
    if (f.label == label) return f.vertex;
  throw Error(ErrorKind::NotAtVertex, "no tail labelled " + std::to_string(label));
}

int ATree::block_count() const {
  int c = 0;
  for (const auto& b : blocks_) c += static_cast<int>(b.size());
  return c;
}

std::vector<TailSet> ATree::fingerprint(int v) const {
  std::vector<TailSet> out;
  for (int f : vertex_flags_[v]) out.push_back(far_[f]);
  std::sort(out.begin(), out.end());
  return out;
}

TailSet ATree::split_of_edge(int flag) const {
  if (flag < 0 || flag >= static_cast<int>(flags_.size()) || is_tail(flag))
    throw Error(ErrorKind::NotAnEdge, "flag " + std::to_string(flag) + " is not part of an edge");
  TailSet s = far_[flag];
  return (s & 1) ? full_set(tail_count()) & ~s : s;
}

std::vector<TailSet> ATree::splits() const {
  std::vector<TailSet> out;
  for (int f = 0; f < static_cast<int>(flags_.size()); ++f)
    if (!is_tail(f) && f < flags_[f].partner) out.push_back(split_of_edge(f));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<int> ATree::edge_for_split(TailSet split) const {
  const TailSet all = full_set(tail_count());
  if (split & 1) split = all & ~split;
  for (int f = 0; f < static_cast<int>(flags_.size()); ++f)
    if (!is_tail(f) && split_of_edge(f) == split) return f;
  return std::nullopt;
}

std::vector<Mark> ATree::marks(int v) const {
  std::vector<Mark> out;
  for (TailSet b : blocks_[v]) out.push_back({Mark::Kind::TailBlock, b, -1});
  for (int f : vertex_flags_[v])
    if (!is_tail(f)) out.push_back({Mark::Kind::EdgeFlag, far_[f], f});
  std::sort(out.begin(), out.end(), [](const Mark& a, const Mark& b) { return a.tails < b.tails; });
  return out;
}

Rational ATree::vertex_weight(int v) const { return weights_->sum(tails_at(v)) + degree(v); }

int ATree::codimension() const { return edge_count() + tail_count() - block_count(); }

std::vector<int> ATree::canonical_vertex_order() const {
  std::vector<std::pair<std::vector<TailSet>, int>> tagged;
  for (int v = 0; v < vertex_count(); ++v) tagged.emplace_back(fingerprint(v), v);
  std::sort(tagged.begin(), tagged.end());
  std::vector<int> order;
  for (auto& t : tagged) order.push_back(t.second);
  return order;
}

TreeShape ATree::shape() const {
  TreeShape s;
  s.blocks = blocks_;
  for (int f = 0; f < static_cast<int>(flags_.size()); ++f)
    if (!is_tail(f) && f < flags_[f].partner) s.edges.emplace_back(flags_[f].vertex, flags_[flags_[f].partner].vertex);
  return s;
}

CanonicalKey canonical_key(const ATree& g) { return g.key(); }
int codimension(const ATree& g) { return g.codimension(); }
int dimension(const ATree& g) { return g.dimension(); }

ATree one_vertex_tree(WeightsPtr a, std::vector<TailSet> blocks) {
  const TailSet all = full_set(a->size());
  TailSet cover = 0;
  for (TailSet b : blocks) {
    if (b == 0 || (cover & b) || (b & ~all)) throw Error(ErrorKind::BadPartition, "blocks do not partition the tails");
    cover |= b;
  }
  if (cover != all) throw Error(ErrorKind::BadPartition, "blocks do not cover every tail");
  for (TailSet b : blocks)
    if (a->sum(b) > 1) throw Error(ErrorKind::BlockTooHeavy, "block " + set_string(b) + " weighs more than 1");
  return ATree::build(std::move(a), TreeShape{{std::move(blocks)}, {}});
}

ATree one_vertex_tree(const WeightDatum& a, std::vector<TailSet> blocks) {
  return one_vertex_tree(share(a), std::move(blocks));
}

ATree principal_tree(WeightsPtr a) {
  std::vector<TailSet> blocks;
  for (int l = 1; l <= a->size(); ++l) blocks.push_back(tail_bit(l));
  return one_vertex_tree(std::move(a), std::move(blocks));
}

bool splits_compatible(TailSet a, TailSet b, int n) {
  const TailSet all = full_set(n);
  const TailSet ac = all & ~a, bc = all & ~b;
  return !(a & b) || !(a & bc) || !(ac & b) || !(ac & bc);
}

ATree tree_from_splits(WeightsPtr a, const std::vector<TailSet>& raw_splits, const std::vector<TailSet>& blocks) {
  const int n = a->size();
  const TailSet all = full_set(n);
  std::vector<TailSet> splits;
  for (TailSet s : raw_splits) {
    if (s & 1) s = all & ~s;
    if (popcount(s) < 1 || popcount(s) > n - 1 || (s & ~all))
      throw Error(ErrorKind::IncompatibleSplits, "split " + set_string(s) + " is trivial");
    splits.push_back(s);
  }
  std::sort(splits.begin(), splits.end(), [](TailSet x, TailSet y) {
    return popcount(x) != popcount(y) ? popcount(x) > popcount(y) : x < y;
  });
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
  for (size_t i = 0; i < splits.size(); ++i)
    for (size_t j = i + 1; j < splits.size(); ++j)
      if (!splits_compatible(splits[i], splits[j], n))
        throw Error(ErrorKind::IncompatibleSplits, set_string(splits[i]) + " vs " + set_string(splits[j]));

  // Vertex 0 holds label 1; vertex i+1 is the far end of split i.
  const int vcount = static_cast<int>(splits.size()) + 1;
  auto owner = [&](TailSet s) {
    int best = 0;
    for (size_t i = 0; i < splits.size(); ++i)
      if ((s & splits[i]) == s && (best == 0 || popcount(splits[i]) < popcount(splits[best - 1])))
        best = static_cast<int>(i) + 1;
    return best;
  };
  TreeShape shape;
  shape.blocks.assign(vcount, {});
  for (size_t i = 0; i < splits.size(); ++i) {
    int parent = 0;
    for (size_t j = 0; j < splits.size(); ++j)
      if (j != i && (splits[i] & splits[j]) == splits[i] &&
          (parent == 0 || popcount(splits[j]) < popcount(splits[parent - 1])))
        parent = static_cast<int>(j) + 1;
    shape.edges.emplace_back(parent, static_cast<int>(i) + 1);
  }
  std::vector<int> tail_vertex(n + 1);
  for (int l = 1; l <= n; ++l) tail_vertex[l] = owner(tail_bit(l));
  TailSet blocked = 0;
  for (TailSet b : blocks) {
    if (b == 0 || (b & blocked) || (b & ~all)) throw Error(ErrorKind::BadPartition, "blocks overlap");
    blocked |= b;
    int v = tail_vertex[lowest_label(b)];
    for (int l : labels_of(b))
      if (tail_vertex[l] != v) throw Error(ErrorKind::NotAtVertex, "block " + set_string(b) + " spans vertices");
    shape.blocks[v].push_back(b);
  }
  for (int l = 1; l <= n; ++l)
    if (!(blocked & tail_bit(l))) shape.blocks[tail_vertex[l]].push_back(tail_bit(l));
  for (size_t v = 0; v < shape.blocks.size(); ++v)
    for (TailSet b : shape.blocks[v])
      if (a->sum(b) > 1) throw Error(ErrorKind::BlockTooHeavy, "block " + set_string(b) + " weighs more than 1");
  return ATree::build(std::move(a), shape);
}

ATree tree_from_splits(const WeightDatum& a, const std::vector<TailSet>& splits, const std::vector<TailSet>& blocks) {
  return tree_from_splits(share(a), splits, blocks);
}

ATree contract_edge(const ATree& g, int edge_flag) {
  if (edge_flag < 0 || edge_flag >= static_cast<int>(g.flags().size()) || g.is_tail(edge_flag))
    throw Error(ErrorKind::NotAnEdge, "flag " + std::to_string(edge_flag) + " is not part of an edge");
  const int keep = g.flags()[edge_flag].vertex;
  const int gone = g.flags()[g.flags()[edge_flag].partner].vertex;
  TreeShape old = g.shape();
  TreeShape s;
  std::vector<int> remap(g.vertex_count());
  for (int v = 0, next = 0; v < g.vertex_count(); ++v) {
    if (v == gone) continue;
    remap[v] = next++;
    s.blocks.push_back(old.blocks[v]);
  }
  remap[gone] = remap[keep];
  for (TailSet b : old.blocks[gone]) s.blocks[remap[keep]].push_back(b);
  for (auto [u, v] : old.edges) {
    if ((u == keep && v == gone) || (u == gone && v == keep)) continue;
    s.edges.emplace_back(remap[u], remap[v]);
  }
  return ATree::build(g.weights_ptr(), s);
}

ATree identify_tail_blocks(const ATree& g, int vertex, const std::vector<TailSet>& chosen) {
  if (vertex < 0 || vertex >= g.vertex_count())
    throw Error(ErrorKind::NotAtVertex, "vertex " + std::to_string(vertex) + " out of range");
  std::set<TailSet> picked(chosen.begin(), chosen.end());
  if (picked.size() < 2 || picked.size() != chosen.size())
    throw Error(ErrorKind::BadPartition, "need at least two distinct blocks to identify");
  const auto& here = g.blocks(vertex);
  TailSet merged = 0;
  for (TailSet b : picked) {
    if (!std::binary_search(here.begin(), here.end(), b))
      throw Error(ErrorKind::NotAtVertex, "block " + set_string(b) + " is not a block at this vertex");
    merged |= b;
  }
  if (g.weights().sum(merged) > 1)
    throw Error(ErrorKind::BlockTooHeavy, "merged block " + set_string(merged) + " weighs more than 1");
  TreeShape s = g.shape();
  auto& bl = s.blocks[vertex];
  bl.erase(std::remove_if(bl.begin(), bl.end(), [&](TailSet b) { return picked.count(b) > 0; }), bl.end());
  bl.push_back(merged);
  return ATree::build(g.weights_ptr(), s);
}

bool degenerates_to(const ATree& g1, const ATree& g2) {
  if (!(g1.weights() == g2.weights())) return false;
  const auto s1 = g1.splits(), s2 = g2.splits();
  if (!std::includes(s1.begin(), s1.end(), s2.begin(), s2.end())) return false;
  std::vector<TailSet> coarse;
  for (int v = 0; v < g1.vertex_count(); ++v)
    for (TailSet b : g1.blocks(v)) coarse.push_back(b);
  for (int v = 0; v < g2.vertex_count(); ++v)
    for (TailSet b : g2.blocks(v)) {
      bool inside = std::any_of(coarse.begin(), coarse.end(), [b](TailSet c) { return (b & c) == b; });
      if (!inside) return false;
    }
  return true;
}

ForgetResult forget_tail_detailed(const ATree& g, int label) {
  const WeightDatum& b = g.weights();
  const int n = b.size();
  if (label < 1 || label > n) throw Error(ErrorKind::NotAtVertex, "no tail labelled " + std::to_string(label));
  std::vector<Rational> residual_values;
  for (int l = 1; l <= n; ++l)
    if (l != label) residual_values.push_back(b.weight(l));
  WeightsPtr residual;
  try {
    residual = share(WeightDatum::create(std::move(residual_values)));
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidResidualDatum, e.what());
  }

  TreeShape s = g.shape();
  const int vcount = g.vertex_count();
  std::vector<char> alive(vcount, 1);
  std::vector<std::vector<int>> adj(vcount);
  for (auto [u, v] : s.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  auto unlink = [&](int u, int v) {
    adj[u].erase(std::find(adj[u].begin(), adj[u].end(), v));
    adj[v].erase(std::find(adj[v].begin(), adj[v].end(), u));
  };

  const TailSet gone = tail_bit(label);
  for (auto& bl : s.blocks) {
    for (TailSet& blk : bl) blk &= ~gone;
    bl.erase(std::remove(bl.begin(), bl.end(), TailSet{0}), bl.end());
  }

  auto weight = [&](int v) -> Rational {
    TailSet t = 0;
    for (TailSet blk : s.blocks[v]) t |= blk;
    return b.sum(t) + static_cast<int>(adj[v].size());
  };

  std::vector<int> collapsed;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < vcount; ++v) {
      if (!alive[v] || weight(v) > 2) continue;
      TailSet t = 0;
      for (TailSet blk : s.blocks[v]) t |= blk;
      if (adj[v].size() == 1) {
        int u = adj[v][0];
        unlink(u, v);
        if (t) s.blocks[u].push_back(t);
      } else if (adj[v].size() == 2 && t == 0) {
        // A bare bridge vertex: its two edges become one.
        int u = adj[v][0], w = adj[v][1];
        unlink(u, v);
        unlink(w, v);
        adj[u].push_back(w);
        adj[w].push_back(u);
      } else {
        invalid("unexpected unstable vertex while forgetting a tail");
      }
      s.blocks[v].clear();
      alive[v] = 0;
      collapsed.push_back(v);
      changed = true;
    }
  }

  TreeShape out;
  std::vector<int> remap(vcount, -1);
  for (int v = 0; v < vcount; ++v)
    if (alive[v]) {
      remap[v] = static_cast<int>(out.blocks.size());
      std::vector<TailSet> bl;
      for (TailSet blk : s.blocks[v]) bl.push_back(remove_label(blk, label));
      out.blocks.push_back(std::move(bl));
    }
  for (int v = 0; v < vcount; ++v)
    if (alive[v])
      for (int u : adj[v])
        if (v < u) out.edges.emplace_back(remap[v], remap[u]);
  return ForgetResult{ATree::build(residual, out), std::move(collapsed)};
}

ATree forget_tail(const ATree& g, int label) { return forget_tail_detailed(g, label).tree; }

FiberKind classify_fiber(const ATree& g, int label) {
  const int v = g.vertex_of_tail(label);
  const auto& bl = g.blocks(v);
  if (!std::binary_search(bl.begin(), bl.end(), tail_bit(label)))
    throw Error(ErrorKind::NotSingleton, "tail " + std::to_string(label) + " shares its block");
  const Rational rest = g.vertex_weight(v) - g.weights().weight(label);
  if (rest > 2) return PuncturedLine{static_cast<int>(bl.size()) + g.degree(v) - 1};
  ProductOfModuli product;
  for (int c : forget_tail_detailed(g, label).collapsed)
    product.factors.push_back(vertex_weight_structure(g.weights(), g.blocks(c), g.degree(c)));
  return product;
}

}  // namespace hassett
