#include <random>

#include "hassett/presentation.hpp"
#include "hassett/smith.hpp"
#include "oracle_support.hpp"
#include "test_util.hpp"

using namespace hassett;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// Product of the invariant factors equals the gcd of the maximal minors; for a
// square full-rank matrix that is |det|, computed here by fraction-free
// elimination.
Integer abs_det(std::vector<std::vector<Integer>> a) {
  const size_t n = a.size();
  Integer prev = 1, sign = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return abs(prev);
}

}  // namespace

TEST_CASE("Smith normal form on small matrices") {
  auto diag23 = IntegerMatrix::from_dense({ints({2, 0}), ints({0, 3})});
  CHECK(smith_normal_form(diag23).factors == ints({1, 6}));
  CHECK(smith_normal_form(diag23).rank == 2);

  auto zero = IntegerMatrix::from_dense({ints({0, 0, 0}), ints({0, 0, 0})});
  CHECK(smith_normal_form(zero).rank == 0);
  CHECK(smith_normal_form(zero).factors.empty());

  auto id = IntegerMatrix::from_dense({ints({1, 0, 0}), ints({0, 1, 0}), ints({0, 0, 1})});
  CHECK(smith_normal_form(id).factors == ints({1, 1, 1}));

  auto m = IntegerMatrix::from_dense({ints({2, 4, 4}), ints({-6, 6, 12}), ints({10, -4, -16})});
  CHECK(smith_normal_form(m).factors == ints({2, 6, 12}));
  CHECK(smith_normal_form_dense(m.dense()).factors == ints({2, 6, 12}));

  IntegerMatrix empty(4);
  CHECK(smith_normal_form(empty).rank == 0);
  CHECK(kind_of([] {
          IntegerMatrix bad(2);
          bad.add_row({{5, Integer(1)}});
        }) == ErrorKind::BadPartition);
}

TEST_CASE("sparse and dense Smith forms agree on random matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(1, 9), small(-3, 3), pick(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = size(rng), cols = size(rng);
    std::vector<std::vector<Integer>> d(rows, std::vector<Integer>(cols, 0));
    for (auto& row : d)
      for (auto& x : row)
        if (pick(rng) == 0) x = small(rng);
    const SmithForm sparse = smith_normal_form(IntegerMatrix::from_dense(d, cols));
    const SmithForm dense = smith_normal_form_dense(d);
    CAPTURE(trial);
    CHECK(sparse == dense);
    for (size_t i = 1; i < dense.factors.size(); ++i) CHECK(dense.factors[i] % dense.factors[i - 1] == 0);
    if (rows == cols && dense.rank == rows) {
      Integer product = 1;
      for (const auto& f : dense.factors) product *= f;
      CHECK(product == abs_det(d));
    }
  }
}

TEST_CASE("entries beyond machine words fall back to exact arithmetic") {
  Integer big("123456789012345678901234567890");
  auto m = IntegerMatrix::from_dense({{Integer(1), big}, {big, Integer(1)}});
  const SmithForm s = smith_normal_form(m);
  CHECK(s.factors.size() == 2);
  CHECK(s.factors[1] == abs(Integer(1) - big * big));

  // Fill-in overflows 64 bits only after several eliminations.
  const Integer huge = Integer(1) << 40;
  auto chain = IntegerMatrix::from_dense({{Integer(1), huge, 0, 0},
                                          {0, Integer(1), huge, 0},
                                          {0, 0, Integer(1), huge},
                                          {huge, 0, 0, Integer(1)}});
  CHECK(smith_normal_form(chain) == smith_normal_form_dense(chain.dense()));
}

TEST_CASE("Poincare polynomials") {
  CHECK(poincare_string(chow_groups(parse_weights("1,1,1,1"))) == "1+t^2");
  CHECK(poincare_polynomial(chow_groups(parse_weights("1,1,1,1"))) == std::vector<long long>{1, 0, 1});
  CHECK(poincare_string(chow_groups(parse_weights("1,1,1,1,1"))) == "1+5*t^2+t^4");
  CHECK(poincare_string(chow_groups(parse_weights("1,1,1/4,1/4,1/4"))) == "1+4*t^2+t^4");
}

TEST_CASE("all-ones Betti numbers agree with Keel's recursion") {
  for (int n = 4; n <= 7; ++n) {
    CAPTURE(n);
    const auto p = chow_groups(WeightDatum::create(std::vector<Rational>(n, Rational(1))), 2);
    CHECK(p.betti() == oracle::keel_betti(n));
    CHECK(p.torsion_free());
  }
}

TEST_CASE("verification report") {
  for (const char* w : {"1,1,1,1", "1,1,1/4,1/4", "1,1/2,1/2,1/2"}) {
    const StrataTable t = enumerate_strata(parse_weights(w));
    const auto p = chow_groups(t);
    const auto report = verify_presentation(p, t);
    CAPTURE(w);
    CHECK(report.passed());
    CHECK(report.checks.size() == 4);
    CHECK(p.betti() == std::vector<long long>{1, 1});
  }
  const StrataTable t6 = enumerate_strata(parse_weights("1,1,1,1,1,1"));
  const auto p6 = chow_groups(t6);
  CHECK(p6.betti() == std::vector<long long>{1, 16, 16, 1});
  CHECK(verify_presentation(p6, t6).passed());
}

TEST_CASE("dropping a relation is caught") {
  const StrataTable t = enumerate_strata(parse_weights("1,1,1,1"));
  RelationsByDim rel = all_relations_by_dim(t);
  rel[0].erase(rel[0].begin());
  const auto p = present(t, rel);
  CHECK(p.betti() == std::vector<long long>{2, 1});
  const auto report = verify_presentation(p, t);
  CHECK_FALSE(report.passed());
  for (const auto& c : report.checks)
    if (c.name == "point_count") CHECK_FALSE(c.passed);
}

TEST_CASE("presentations do not depend on the worker count") {
  const StrataTable t = enumerate_strata(parse_weights("1,1,1/2,1/2,1/3,1/3"));
  const auto one = chow_groups(t, 1), four = chow_groups(t, 4);
  REQUIRE(one.groups.size() == four.groups.size());
  for (size_t d = 0; d < one.groups.size(); ++d) {
    CHECK(one.groups[d].relations == four.groups[d].relations);
    CHECK(one.groups[d].smith == four.groups[d].smith);
  }
}
