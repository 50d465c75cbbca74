// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <deque>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "hassett/oracles.hpp"
#include "hassett/presentation.hpp"
#include "hassett/relations.hpp"
#include "hassett/verify_suite.hpp"
#include "oracle_support.hpp"

using namespace hassett;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string show(const std::vector<long long>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str() + ")";
}

// Collects failures for one criterion.
struct Criterion {
  std::vector<std::string> problems;
  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

// Every datum whose presentation was computed, for the structural identities.
struct Computed {
  StrataTable table;
  ChowPresentation presentation;
};
std::deque<Computed> g_computed;

const Computed& compute(const WeightDatum& a) {
  StrataTable t = enumerate_strata(a);
  ChowPresentation p = chow_groups(t);
  g_computed.push_back({std::move(t), std::move(p)});
  return g_computed.back();
}

WeightDatum ones(int n) { return WeightDatum::create(std::vector<Rational>(n, Rational(1))); }

WeightDatum losev_manin(int n, const Rational& eps) {
  std::vector<Rational> w{1, 1};
  for (int i = 2; i < n; ++i) w.push_back(eps);
  return WeightDatum::create(w);
}

std::set<CanonicalKey> keys(std::initializer_list<ATree> trees) {
  std::set<CanonicalKey> out;
  for (const auto& g : trees) out.insert(g.key());
  return out;
}

std::set<CanonicalKey> keys(const std::vector<ATree>& trees) {
  std::set<CanonicalKey> out;
  for (const auto& g : trees) out.insert(g.key());
  return out;
}

TailSet S(std::initializer_list<int> l) { return make_set(l); }

void criterion_1(Criterion& c) {
  const auto start = Clock::now();
  auto a = share(parse_weights("1,1,1,1"));
  auto b = share(parse_weights("1,1,1/4,1/4"));
  auto d = share(parse_weights("1,1/2,1/2,1/2"));
  const std::vector<std::pair<WeightsPtr, std::set<CanonicalKey>>> cases{
      {a, keys({tree_from_splits(a, {S({1, 2})}), tree_from_splits(a, {S({1, 3})}), tree_from_splits(a, {S({1, 4})})})},
      {b, keys({tree_from_splits(b, {S({1, 3})}), tree_from_splits(b, {S({1, 4})}),
                one_vertex_tree(b, {S({1}), S({2}), S({3, 4})})})},
      {d, keys({one_vertex_tree(d, {S({1}), S({2, 3}), S({4})}), one_vertex_tree(d, {S({1}), S({2, 4}), S({3})}),
                one_vertex_tree(d, {S({1}), S({2}), S({3, 4})})})}};
  for (const auto& [w, points] : cases) {
    const Computed& r = compute(*w);
    const std::string name = to_string(*w);
    c.expect(r.table.counts() == std::vector<size_t>{3, 1}, name + ": strata counts");
    c.expect(keys(r.table.of_dimension(0)) == points, name + ": boundary trees");
    c.expect(keys(r.table.of_dimension(1)) == keys({principal_tree(w)}), name + ": open stratum");
    c.expect(r.presentation.betti() == std::vector<long long>{1, 1}, name + ": betti " + show(r.presentation.betti()));
    c.expect(r.presentation.torsion_free(), name + ": torsion");
  }
  const double t = seconds_since(start);
  c.expect(t < 1.0, "took " + std::to_string(t) + " s");
}

void criterion_2(Criterion& c) {
  for (int n : {5, 6}) {
    const auto start = Clock::now();
    const Computed& r = compute(ones(n));
    const double t = seconds_since(start);
    const auto expected = n == 5 ? std::vector<long long>{1, 5, 1} : std::vector<long long>{1, 16, 16, 1};
    const std::string name = "n=" + std::to_string(n);
    c.expect(r.presentation.betti() == expected, name + ": betti " + show(r.presentation.betti()));
    c.expect(expected == oracle::keel_betti(n), name + ": Keel recursion disagrees with the expected values");
    const size_t divisors = n == 5 ? 10 : 25;
    c.expect(r.table.of_dimension(n - 4).size() == divisors, name + ": divisor count");
    c.expect(divisors == (size_t{1} << (n - 1)) - n - 1, name + ": split count oracle");
    if (n == 6) c.expect(t < 60.0, "n=6 took " + std::to_string(t) + " s");
  }
}

void criterion_3(Criterion& c) {
  const std::vector<std::vector<long long>> expected{{1, 1}, {1, 4, 1}, {1, 11, 11, 1}, {1, 26, 66, 26, 1}};
  for (int n = 4; n <= 7; ++n) {
    const auto oracle_values = oracle::eulerian_closed_form(n - 2);
    c.expect(oracle_values == expected[n - 4], "Eulerian oracle at m=" + std::to_string(n - 2));
    // The chamber boundary (n-2) eps = 1 and a point well inside it.
    for (const Rational& eps : {Rational(1, n - 2), Rational(1, 2 * (n - 2))}) {
      const WeightDatum a = losev_manin(n, eps);
      const auto start = Clock::now();
      const Computed& r = compute(a);
      const double t = seconds_since(start);
      c.expect(r.presentation.betti() == expected[n - 4], to_string(a) + ": betti " + show(r.presentation.betti()));
      c.expect(r.presentation.torsion_free(), to_string(a) + ": torsion");
      if (n == 7) c.expect(t < 600.0, to_string(a) + " took " + std::to_string(t) + " s");
    }
  }
}

void criterion_4(Criterion& c, int& tested) {
  Rng rng(2024);
  for (int n = 4; n <= 6; ++n)
    for (int i = 0; i < 10; ++i) {
      const WeightDatum a = random_weight_datum(rng, n);
      const Computed& r = compute(a);
      const CountPolynomial count = point_count_polynomial(r.table);
      std::vector<long long> from_count;
      for (const auto& x : count.coeffs) from_count.push_back(x.get_si());
      c.expect(r.presentation.betti() == from_count,
               to_string(a) + ": ranks " + show(r.presentation.betti()) + " vs count " + count.to_string());
      c.expect(r.presentation.torsion_free(), to_string(a) + ": torsion");
      ++tested;
    }
}

void criterion_5(Criterion& c) {
  for (const auto& r : g_computed) {
    const std::string name = to_string(r.table.weights());
    const auto b = r.presentation.betti();
    const int top = r.table.top_dimension();
    c.expect(static_cast<int>(b.size()) == top + 1, name + ": betti length");
    for (int d = 0; d <= top; ++d) c.expect(b[d] == b[top - d], name + ": duality at " + std::to_string(d));
    Integer sum = 0, chi = 0;
    for (long long x : b) sum += to_integer(x);
    for (int d = 0; d <= top; ++d)
      for (const auto& g : r.table.of_dimension(d)) chi += stratum_euler_characteristic(g);
    const Integer at_one = point_count_polynomial(r.table).evaluate(1);
    c.expect(sum == at_one && at_one == chi,
             name + ": sum b " + sum.get_str() + ", count(1) " + at_one.get_str() + ", chi " + chi.get_str());
    c.expect(b.front() == 1 && b.back() == 1, name + ": b_0 and b_top");
  }
}

void criterion_6(Criterion& c, int& pairs) {
  Rng rng(99);
  for (int n = 4; n <= 6; ++n)
    for (int i = 0; i < 5; ++i) {
      const WeightDatum a = random_weight_datum(rng, n);
      const WeightDatum b = same_chamber_partner(a, rng);
      const std::string name = to_string(a) + " vs " + to_string(b);
      c.expect(!(a == b), name + ": partner equals the datum");
      c.expect(chamber_signature(a) == chamber_signature(b), name + ": signatures differ");
      const StrataTable ta = enumerate_strata(a), tb = enumerate_strata(b);
      c.expect(strata_fingerprint(ta) == strata_fingerprint(tb), name + ": strata tables differ");
      c.expect(presentation_fingerprint(chow_groups(ta)) == presentation_fingerprint(chow_groups(tb)),
               name + ": presentations differ");
      ++pairs;
    }
  // Two data from the examples sharing a chamber.
  const StrataTable t1 = enumerate_strata(parse_weights("1,1,1/4,1/4")), t2 = enumerate_strata(parse_weights("1,1,1/3,1/3"));
  c.expect(strata_fingerprint(t1) == strata_fingerprint(t2), "(1,1,1/4,1/4) vs (1,1,1/3,1/3): strata");
  c.expect(presentation_fingerprint(chow_groups(t1)) == presentation_fingerprint(chow_groups(t2)),
           "(1,1,1/4,1/4) vs (1,1,1/3,1/3): presentations");
  ++pairs;
}

void criterion_7(Criterion& c, int& tables) {
  Rng rng(5);
  std::vector<WeightDatum> data{ones(4), ones(5), ones(6), losev_manin(5, Rational(1, 3)),
                                losev_manin(6, Rational(1, 4)), parse_weights("1,1/2,1/2,1/2"),
                                parse_weights("1,1/2,1/2,1/2,1/2")};
  for (int n = 4; n <= 6; ++n)
    for (int i = 0; i < 4; ++i) data.push_back(random_weight_datum(rng, n));
  for (const auto& a : data) {
    MoveCheckOptions options;
    options.exhaustive = a.size() <= 5;
    for (const auto& problem : check_move_properties(enumerate_strata(a), rng, options))
      c.expect(false, to_string(a) + ": " + problem);
    ++tables;
  }
}

// Splits (side without label 1) separating {x,y} from {z,w}, by brute force.
std::set<TailSet> separating(int n, int x, int y, int z, int w) {
  std::set<TailSet> out;
  const TailSet all = full_set(n);
  for (TailSet s = 1; s < all; ++s) {
    if (s & 1) continue;
    const TailSet t = all & ~s;
    if (popcount(s) < 2 || popcount(t) < 2) continue;
    const bool xy_in_s = (s & tail_bit(x)) && (s & tail_bit(y)) && !(s & tail_bit(z)) && !(s & tail_bit(w));
    const bool xy_in_t = (t & tail_bit(x)) && (t & tail_bit(y)) && !(t & tail_bit(z)) && !(t & tail_bit(w));
    if (xy_in_s || xy_in_t) out.insert(s);
  }
  return out;
}

void criterion_8(Criterion& c) {
  for (int n : {4, 5, 6}) {
    auto a = share(ones(n));
    const ATree p = principal_tree(a);
    const auto marks = p.marks(0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          for (int l = k + 1; l < n; ++l)
            for (Pairing pairing : {Pairing::P13_24, Pairing::P14_23}) {
              const RelationVector r = principal_relation(p, 0, {marks[i], marks[j], marks[k], marks[l]}, pairing);
              const int f1 = i + 1, f2 = j + 1, f3 = k + 1, f4 = l + 1;
              const auto plus = separating(n, f1, f2, f3, f4);
              const auto minus =
                  pairing == Pairing::P13_24 ? separating(n, f1, f3, f2, f4) : separating(n, f1, f4, f2, f3);
              std::map<CanonicalKey, int> expected;
              for (TailSet s : plus) expected[tree_from_splits(a, {s}).key()] += 1;
              for (TailSet s : minus) expected[tree_from_splits(a, {s}).key()] -= 1;
              c.expect(r.terms == expected, "n=" + std::to_string(n) + " marks " + std::to_string(f1) +
                                                std::to_string(f2) + std::to_string(f3) + std::to_string(f4) + " " +
                                                to_string(pairing));
            }
  }
  auto b = share(parse_weights("1,1,1/4,1/4"));
  const ATree p = principal_tree(b);
  const auto m = p.marks(0);
  const RelationVector r = principal_relation(p, 0, {m[0], m[1], m[2], m[3]}, Pairing::P13_24);
  std::map<CanonicalKey, int> expected{{one_vertex_tree(b, {S({1}), S({2}), S({3, 4})}).key(), 1},
                                       {tree_from_splits(b, {S({1, 3})}).key(), -1}};
  c.expect(r.terms == expected, "(1,1,1/4,1/4): unstable case");
}

// The checks the verify suite applies to one presentation.
bool suite_detects(const StrataTable& t, const RelationsByDim& rel) {
  const ChowPresentation p = present(t, rel);
  const auto b = p.betti();
  return !verify_presentation(p, t).passed() || b.front() != 1 || b.back() != 1;
}

void criterion_9(Criterion& c, int& mutants) {
  Rng rng(17);
  std::vector<WeightDatum> data{ones(4), parse_weights("1,1,1/4,1/4"), parse_weights("1,1/2,1/2,1/2"), ones(5),
                                losev_manin(5, Rational(1, 3)), parse_weights("1,1/2,1/2,1/2,1/2")};
  for (int i = 0; i < 5; ++i) data.push_back(random_weight_datum(rng, 4));
  for (int i = 0; i < 5; ++i) data.push_back(random_weight_datum(rng, 5));
  for (const auto& a : data) {
    const StrataTable t = enumerate_strata(a);
    const RelationsByDim all = all_relations_by_dim(t);
    c.expect(!suite_detects(t, all), to_string(a) + ": unmutated presentation rejected");
    for (size_t d = 0; d < all.size(); ++d) {
      if (all[d].empty()) continue;
      RelationsByDim cut = all;
      cut[d].clear();
      c.expect(suite_detects(t, cut), to_string(a) + ": family of dimension " + std::to_string(d) + " went undetected");
      ++mutants;
      if (a.size() == 4)
        for (size_t i = 0; i < all[d].size(); ++i) {
          RelationsByDim one = all;
          one[d].erase(one[d].begin() + static_cast<long>(i));
          c.expect(suite_detects(t, one), to_string(a) + ": single relation " + std::to_string(i) + " went undetected");
          ++mutants;
        }
    }
  }
  SuiteOptions options;
  options.max_n = 5;
  options.inject_fault = true;
  const SuiteReport report = run_verify_suite(options);
  c.expect(!report.passed() && report.failure->weights == "1,1,1,1", "fault-injected suite run did not fail at n=4");
}

}  // namespace

int main() {
  int failures = 0;
  auto run = [&](int number, const std::string& title, const std::function<std::string(Criterion&)>& body) {
    Criterion c;
    const auto start = Clock::now();
    std::string note;
    try {
      note = body(c);
    } catch (const std::exception& e) {
      c.problems.push_back(std::string("exception: ") + e.what());
    }
    const double t = seconds_since(start);
    const bool ok = c.problems.empty();
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << number << "  " << title;
    if (!note.empty()) std::cout << " [" << note << "]";
    std::cout << "  (" << std::fixed << std::setprecision(2) << t << " s)\n";
    for (size_t i = 0; i < c.problems.size() && i < 10; ++i) std::cout << "      " << c.problems[i] << "\n";
    if (c.problems.size() > 10) std::cout << "      ... " << c.problems.size() - 10 << " more\n";
  };

  run(1, "n=4 chambers: strata, trees, Betti (1,1), no torsion", [](Criterion& c) {
    criterion_1(c);
    return std::string();
  });
  run(2, "all-ones n=5,6: Betti and boundary divisor counts", [](Criterion& c) {
    criterion_2(c);
    return std::string();
  });
  run(3, "Losev-Manin n=4..7: Betti equal Eulerian numbers", [](Criterion& c) {
    criterion_3(c);
    return std::string();
  });
  run(4, "random data: Smith ranks equal point-count coefficients", [](Criterion& c) {
    int tested = 0;
    criterion_4(c, tested);
    return std::to_string(tested) + " data";
  });
  run(5, "duality, Euler characteristic, extreme Betti numbers", [](Criterion& c) {
    criterion_5(c);
    return std::to_string(g_computed.size()) + " data";
  });
  run(6, "chamber invariance of strata and presentations", [](Criterion& c) {
    int pairs = 0;
    criterion_6(c, pairs);
    return std::to_string(pairs) + " pairs";
  });
  run(7, "move properties and closure order", [](Criterion& c) {
    int tables = 0;
    criterion_7(c, tables);
    return std::to_string(tables) + " tables";
  });
  run(8, "principal relation supports", [](Criterion& c) {
    criterion_8(c);
    return std::string();
  });
  run(9, "dropped relations are detected", [](Criterion& c) {
    int mutants = 0;
    criterion_9(c, mutants);
    return std::to_string(mutants) + " mutants";
  });

  std::cout << (failures ? std::to_string(failures) + " criteria failed\n" : "all criteria passed\n");
  return failures ? 1 : 0;
}
