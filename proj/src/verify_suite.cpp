#include "hassett/verify_suite.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "hassett/error.hpp"
#include "hassett/export.hpp"

namespace hassett {

WeightDatum random_weight_datum(Rng& rng, int n, int max_denominator) {
  std::uniform_int_distribution<int> den(1, max_denominator);
  while (true) {
    std::vector<Rational> w;
    for (int i = 0; i < n; ++i) {
      const int d = den(rng);
      std::uniform_int_distribution<int> num(1, d);
      w.emplace_back(num(rng), d);
      w.back().canonicalize();
    }
    try {
      return WeightDatum::create(std::move(w));
    } catch (const Error&) {
    }
  }
}

WeightDatum same_chamber_partner(const WeightDatum& a, Rng& rng) {
  const int n = a.size();
  // Scaling by (1 - delta) keeps every sum <= 1 and keeps sum > 1 (and the
  // total > 2) as long as delta < 1 - bound/sum for each strict inequality.
  Rational limit = 1 - Rational(2) / a.total();
  for (TailSet s = 1; s <= full_set(n); ++s) {
    if (popcount(s) < 2) continue;
    Rational sum = a.sum(s);
    if (sum > 1) limit = std::min(limit, Rational(1 - 1 / sum));
  }
  std::uniform_int_distribution<int> pick(1, 16);
  Rational delta = limit * Rational(pick(rng), 17);
  std::vector<Rational> w;
  for (const auto& m : a.weights()) w.push_back(m * (1 - delta));
  return WeightDatum::create(std::move(w));
}

ATree relabel_randomly(const ATree& g, Rng& rng) {
  const auto& flags = g.flags();
  std::vector<int> fperm(flags.size()), vperm(g.vertex_count());
  std::iota(fperm.begin(), fperm.end(), 0);
  std::iota(vperm.begin(), vperm.end(), 0);
  std::shuffle(fperm.begin(), fperm.end(), rng);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::vector<Flag> out(flags.size());
  for (size_t f = 0; f < flags.size(); ++f)
    out[fperm[f]] = Flag{vperm[flags[f].vertex], fperm[flags[f].partner], flags[f].label};
  std::vector<std::vector<TailSet>> blocks(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    blocks[vperm[v]] = g.blocks(v);
    std::shuffle(blocks[vperm[v]].begin(), blocks[vperm[v]].end(), rng);
  }
  return ATree::from_graph(g.weights_ptr(), std::move(out), g.vertex_count(), std::move(blocks));
}

std::vector<CanonicalKey> upward_closure(const ATree& g) {
  std::set<CanonicalKey> seen{g.key()};
  std::deque<ATree> todo{g};
  while (!todo.empty()) {
    ATree t = todo.front();
    todo.pop_front();
    auto visit = [&](ATree up) {
      if (seen.insert(up.key()).second) todo.push_back(std::move(up));
    };
    for (int f = 0; f < static_cast<int>(t.flags().size()); ++f)
      if (!t.is_tail(f) && f < t.flags()[f].partner) visit(contract_edge(t, f));
    const TreeShape shape = t.shape();
    for (int v = 0; v < t.vertex_count(); ++v)
      for (size_t b = 0; b < shape.blocks[v].size(); ++b) {
        const TailSet block = shape.blocks[v][b];
        for (TailSet part = (block - 1) & block; part; part = (part - 1) & block) {
          TreeShape up = shape;
          up.blocks[v][b] = part;
          up.blocks[v].push_back(block & ~part);
          visit(ATree::build(t.weights_ptr(), up));
        }
      }
  }
  return {seen.begin(), seen.end()};
}

std::string strata_fingerprint(const StrataTable& table) {
  Json j = to_json(table);
  j.erase("weights");
  return j.dump();
}

std::string presentation_fingerprint(const ChowPresentation& p) {
  Json j = to_json(p, VerificationReport{});
  j.erase("weights");
  Json factors = Json::array();
  for (const auto& g : p.groups) {
    Json f = Json::array();
    for (const auto& x : g.smith.factors) f.push_back(x.get_str());
    factors.push_back(std::move(f));
  }
  j["smith"] = std::move(factors);
  return j.dump();
}

std::vector<std::string> check_move_properties(const StrataTable& table, Rng& rng, const MoveCheckOptions& options) {
  std::vector<std::string> problems;
  std::vector<const ATree*> all;
  for (int d = 0; d <= table.top_dimension(); ++d)
    for (const auto& g : table.of_dimension(d)) all.push_back(&g);
  std::vector<const ATree*> trees = all;
  if (!options.exhaustive && trees.size() > options.sample) {
    std::shuffle(trees.begin(), trees.end(), rng);
    trees.resize(options.sample);
  }

  for (const ATree* gp : trees) {
    const ATree& g = *gp;
    const std::string name = to_string(g.key());
    for (int r = 0; r < options.relabelings; ++r)
      if (relabel_randomly(g, rng).key() != g.key()) {
        problems.push_back("relabeling changed the key of " + name);
        break;
      }
    for (int f = 0; f < static_cast<int>(g.flags().size()); ++f) {
      if (g.is_tail(f) || f > g.flags()[f].partner) continue;
      ATree c = contract_edge(g, f);
      if (c.codimension() != g.codimension() - 1) problems.push_back("contraction did not lower codim: " + name);
      if (!table.find(c)) problems.push_back("contraction left the table: " + name);
      if (!degenerates_to(g, c)) problems.push_back("tree not below its contraction: " + name);
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
      const auto& bl = g.blocks(v);
      const size_t k = bl.size();
      for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
        if (__builtin_popcountll(mask) < 2) continue;
        std::vector<TailSet> chosen;
        TailSet merged = 0;
        for (size_t i = 0; i < k; ++i)
          if (mask >> i & 1) {
            chosen.push_back(bl[i]);
            merged |= bl[i];
          }
        if (g.weights().sum(merged) > 1) continue;
        ATree m = identify_tail_blocks(g, v, chosen);
        if (m.codimension() != g.codimension() + static_cast<int>(chosen.size()) - 1)
          problems.push_back("identification changed codim wrongly: " + name);
        if (!table.find(m)) problems.push_back("identification left the table: " + name);
        if (!degenerates_to(m, g)) problems.push_back("identification not below its source: " + name);
      }
    }
  }

  // Closure order: the direct characterisation must agree with reachability
  // under the inverse moves, and be antisymmetric.
  for (const ATree* lo : trees) {
    const auto ups = upward_closure(*lo);
    for (const ATree* hi : all) {
      const bool reach = std::binary_search(ups.begin(), ups.end(), hi->key());
      const bool below = degenerates_to(*lo, *hi);
      if (reach != below)
        problems.push_back("degenerates_to disagrees with move closure: " + to_string(lo->key()) + " vs " +
                           to_string(hi->key()));
      if (below && lo->key() != hi->key()) {
        if (degenerates_to(*hi, *lo)) problems.push_back("closure order not antisymmetric: " + to_string(lo->key()));
        if (lo->dimension() >= hi->dimension())
          problems.push_back("strict degeneration without dimension drop: " + to_string(lo->key()));
      }
    }
    if (!degenerates_to(*lo, *lo)) problems.push_back("closure order not reflexive: " + to_string(lo->key()));
  }
  return problems;
}

std::vector<SuiteFailure> check_datum(const WeightDatum& a, Rng& rng, const SuiteOptions& options) {
  std::vector<SuiteFailure> failures;
  const std::string w = to_string(a);
  auto fail = [&](const std::string& check, const std::string& detail) { failures.push_back({w, check, detail}); };

  auto pipeline = [&](const StrataTable& t) {
    RelationsByDim rel = all_relations_by_dim(t, options.jobs);
    if (options.inject_fault && !rel.empty() && !rel[0].empty()) rel[0].erase(rel[0].begin());
    return present(t, rel, options.jobs);
  };

  const StrataTable table = enumerate_strata(a, options.jobs);
  const ChowPresentation p = pipeline(table);
  for (const auto& c : verify_presentation(p, table).checks)
    if (!c.passed) fail(c.name, c.detail);
  const auto b = p.betti();
  if (b.front() != 1 || b.back() != 1) fail("extreme_betti", "b_0 and b_top must both be 1");

  const WeightDatum partner = same_chamber_partner(a, rng);
  if (!same_chamber(a, partner)) {
    fail("chamber_partner", "scaled datum " + to_string(partner) + " left the chamber");
  } else {
    const StrataTable t2 = enumerate_strata(partner, options.jobs);
    if (strata_fingerprint(t2) != strata_fingerprint(table))
      fail("chamber_invariance", "strata differ for " + to_string(partner));
    else if (presentation_fingerprint(pipeline(t2)) != presentation_fingerprint(p))
      fail("chamber_invariance", "presentations differ for " + to_string(partner));
  }

  MoveCheckOptions moves;
  moves.exhaustive = a.size() <= 5;
  for (const auto& problem : check_move_properties(table, rng, moves)) fail("move_properties", problem);
  return failures;
}

namespace {

std::vector<WeightDatum> fixed_data(int n) {
  std::vector<WeightDatum> out;
  out.push_back(WeightDatum::create(std::vector<Rational>(n, Rational(1))));
  std::vector<Rational> lm{1, 1};
  for (int i = 2; i < n; ++i) lm.emplace_back(1, n - 2);
  out.push_back(WeightDatum::create(lm));
  if (n == 4) out.push_back(WeightDatum::create({1, Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
  return out;
}

}  // namespace

SuiteReport run_verify_suite(const SuiteOptions& options) {
  SuiteReport report;
  Rng rng(options.seed);
  for (int n = 4; n <= options.max_n; ++n) {
    std::vector<WeightDatum> data = fixed_data(n);
    for (int t = 0; t < options.trials; ++t) data.push_back(random_weight_datum(rng, n));
    for (const auto& a : data) {
      auto failures = check_datum(a, rng, options);
      ++report.data_tested;
      if (!failures.empty()) {
        report.failure = failures.front();
        return report;
      }
    }
  }
  return report;
}

}  // namespace hassett
