#include "hassett/strata.hpp"

#include <algorithm>
#include <functional>

#include "hassett/error.hpp"
#include "hassett/parallel.hpp"

namespace hassett {

StrataTable::StrataTable(WeightsPtr weights, std::vector<ATree> trees) : weights_(std::move(weights)) {
  by_dim_.assign(top_dimension() + 1, {});
  for (auto& t : trees) {
    if (t.dimension() < 0 || t.dimension() > top_dimension())
      throw Error(ErrorKind::InvalidTree, "tree dimension out of range");
    by_dim_[t.dimension()].push_back(std::move(t));
  }
  for (int d = 0; d <= top_dimension(); ++d) {
    auto& list = by_dim_[d];
    std::sort(list.begin(), list.end(), [](const ATree& a, const ATree& b) { return a.key() < b.key(); });
    list.erase(std::unique(list.begin(), list.end(), [](const ATree& a, const ATree& b) { return a.key() == b.key(); }),
               list.end());
    for (int i = 0; i < static_cast<int>(list.size()); ++i) index_.emplace(list[i].key(), StratumRef{d, i});
  }
}

std::optional<StratumRef> StrataTable::find(const CanonicalKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

size_t StrataTable::total() const { return index_.size(); }

std::vector<size_t> StrataTable::counts() const {
  std::vector<size_t> c;
  for (const auto& list : by_dim_) c.push_back(list.size());
  return c;
}

std::vector<TailSet> admissible_splits(const WeightDatum& a) {
  const int n = a.size();
  const TailSet all = full_set(n);
  std::vector<TailSet> out;
  for (TailSet s = 2; s < all; s += 2) {
    if (popcount(s) < 2 || popcount(s) > n - 2) continue;
    if (a.sum(s) > 1 && a.sum(all & ~s) > 1) out.push_back(s);
  }
  return out;
}

std::vector<std::vector<TailSet>> admissible_r_structures(const WeightDatum& a, TailSet tails) {
  std::vector<std::vector<TailSet>> out;
  const auto labels = labels_of(tails);
  std::vector<TailSet> blocks;
  std::vector<Rational> sums;
  std::function<void(size_t)> place = [&](size_t i) {
    if (i == labels.size()) {
      auto sorted = blocks;
      std::sort(sorted.begin(), sorted.end());
      out.push_back(std::move(sorted));
      return;
    }
    const int l = labels[i];
    for (size_t b = 0; b < blocks.size(); ++b) {
      Rational s = sums[b] + a.weight(l);
      if (s > 1) continue;
      std::swap(sums[b], s);
      blocks[b] |= tail_bit(l);
      place(i + 1);
      blocks[b] &= ~tail_bit(l);
      std::swap(sums[b], s);
    }
    blocks.push_back(tail_bit(l));
    sums.push_back(a.weight(l));
    place(i + 1);
    blocks.pop_back();
    sums.pop_back();
  };
  place(0);
  return out;
}

namespace {

// Every set of pairwise compatible admissible splits.
std::vector<std::vector<TailSet>> compatible_split_sets(const WeightDatum& a) {
  const int n = a.size();
  const auto candidates = admissible_splits(a);
  std::vector<std::vector<TailSet>> out;
  std::vector<TailSet> chosen;
  std::function<void(size_t)> extend = [&](size_t next) {
    out.push_back(chosen);
    for (size_t i = next; i < candidates.size(); ++i) {
      bool ok = std::all_of(chosen.begin(), chosen.end(),
                            [&](TailSet s) { return splits_compatible(s, candidates[i], n); });
      if (!ok) continue;
      chosen.push_back(candidates[i]);
      extend(i + 1);
      chosen.pop_back();
    }
  };
  extend(0);
  return out;
}

std::vector<ATree> trees_with_r_structures(const ATree& skeleton) {
  const WeightDatum& a = skeleton.weights();
  const TreeShape base = skeleton.shape();
  std::vector<std::vector<std::vector<TailSet>>> options;
  for (int v = 0; v < skeleton.vertex_count(); ++v) options.push_back(admissible_r_structures(a, skeleton.tails_at(v)));
  std::vector<ATree> out;
  TreeShape shape = base;
  std::function<void(int)> pick = [&](int v) {
    if (v == skeleton.vertex_count()) {
      out.push_back(ATree::build(skeleton.weights_ptr(), shape));
      return;
    }
    for (const auto& r : options[v]) {
      shape.blocks[v] = r;
      pick(v + 1);
    }
  };
  pick(0);
  return out;
}

}  // namespace

StrataTable enumerate_strata(WeightsPtr a, int jobs) {
  const auto split_sets = compatible_split_sets(*a);
  std::vector<std::vector<ATree>> found(split_sets.size());
  parallel_for(split_sets.size(), jobs, [&](size_t i) {
    found[i] = trees_with_r_structures(tree_from_splits(a, split_sets[i]));
  });
  std::vector<ATree> all;
  for (auto& f : found)
    for (auto& t : f) all.push_back(std::move(t));
  return StrataTable(std::move(a), std::move(all));
}

StrataTable enumerate_strata(const WeightDatum& a, int jobs) { return enumerate_strata(share(a), jobs); }

std::vector<ATree> closure_strata(const StrataTable& table, const ATree& g) {
  if (!table.find(g)) throw Error(ErrorKind::UnknownStratum, to_string(g.key()));
  std::vector<ATree> out;
  for (int d = 0; d <= g.dimension(); ++d)
    for (const auto& t : table.of_dimension(d))
      if (degenerates_to(t, g)) out.push_back(t);
  return out;
}

std::vector<std::pair<StratumRef, StratumRef>> covering_relations(const StrataTable& table) {
  std::vector<std::pair<StratumRef, StratumRef>> out;
  for (int d = 0; d < table.top_dimension(); ++d) {
    const auto& list = table.of_dimension(d);
    for (int i = 0; i < static_cast<int>(list.size()); ++i) {
      const ATree& g = list[i];
      std::vector<StratumRef> uppers;
      auto note = [&](const ATree& up) {
        auto ref = table.find(up);
        if (!ref) throw Error(ErrorKind::UnknownStratum, "cover missing from table: " + to_string(up.key()));
        uppers.push_back(*ref);
      };
      for (int f = 0; f < static_cast<int>(g.flags().size()); ++f)
        if (!g.is_tail(f) && f < g.flags()[f].partner) note(contract_edge(g, f));
      // Splitting one block in two undoes a two-block identification.
      TreeShape shape = g.shape();
      for (int v = 0; v < g.vertex_count(); ++v)
        for (size_t b = 0; b < shape.blocks[v].size(); ++b) {
          const TailSet block = shape.blocks[v][b];
          if (popcount(block) < 2) continue;
          const TailSet anchor = TailSet{1} << __builtin_ctzll(block);
          for (TailSet part = (block - 1) & block; part; part = (part - 1) & block) {
            if (!(part & anchor)) continue;
            TreeShape up = shape;
            up.blocks[v][b] = part;
            up.blocks[v].push_back(block & ~part);
            note(ATree::build(g.weights_ptr(), up));
          }
        }
      std::sort(uppers.begin(), uppers.end());
      uppers.erase(std::unique(uppers.begin(), uppers.end()), uppers.end());
      for (auto u : uppers) out.emplace_back(StratumRef{d, i}, u);
    }
  }
  return out;
}

Integer stratum_euler_characteristic(const ATree& g) {
  Integer chi = 1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const int k = static_cast<int>(g.blocks(v).size()) + g.degree(v);
    for (int i = 2; i <= k - 3; ++i) chi *= i;
    if ((k - 3) % 2) chi = -chi;
  }
  return chi;
}

}  // namespace hassett
