#include "hassett/oracles.hpp"
#include "oracle_support.hpp"
#include "test_util.hpp"

using namespace hassett;

namespace {

std::vector<long long> small(const std::vector<Integer>& v) {
  std::vector<long long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

CountPolynomial poly(std::initializer_list<long> coeffs) {
  CountPolynomial c;
  for (long x : coeffs) c.coeffs.emplace_back(x);
  return c;
}

}  // namespace

TEST_CASE("configuration counts") {
  CHECK(configuration_count(3).coeffs == std::vector<Integer>{1});
  CHECK(configuration_count(4).to_string() == "q-2");
  CHECK(configuration_count(5).to_string() == "q^2-5*q+6");
  // At q = 1 the count is the Euler characteristic (-1)^(k-3) (k-3)!.
  CHECK(configuration_count(6).evaluate(1) == -6);
}

TEST_CASE("Eulerian numbers") {
  CHECK(small(eulerian_numbers(2)) == std::vector<long long>{1, 1});
  CHECK(small(eulerian_numbers(3)) == std::vector<long long>{1, 4, 1});
  CHECK(small(eulerian_numbers(4)) == std::vector<long long>{1, 11, 11, 1});
  for (int m = 1; m <= 12; ++m) CHECK(small(eulerian_numbers(m)) == oracle::eulerian_closed_form(m));
}

TEST_CASE("reading Betti numbers off a count") {
  CHECK(betti_from_point_count(poly({1, 1})) == std::vector<long long>{1, 1});
  CHECK(betti_from_point_count(poly({1, 5, 1})) == std::vector<long long>{1, 5, 1});
  CHECK(betti_from_point_count(poly({1, 16, 16, 1})) == std::vector<long long>{1, 16, 16, 1});
  CHECK(kind_of([] { betti_from_point_count(poly({1, -2, 1})); }) == ErrorKind::NegativeCoefficient);
}

TEST_CASE("point counts of whole spaces") {
  for (int n = 4; n <= 7; ++n) {
    const StrataTable t = enumerate_strata(WeightDatum::create(std::vector<Rational>(n, Rational(1))));
    CHECK(betti_from_point_count(point_count_polynomial(t)) == oracle::keel_betti(n));
  }
  for (int n = 4; n <= 7; ++n) {
    std::vector<Rational> w{1, 1};
    for (int i = 2; i < n; ++i) w.emplace_back(1, n - 2);
    const StrataTable t = enumerate_strata(WeightDatum::create(w));
    CHECK(betti_from_point_count(point_count_polynomial(t)) == oracle::eulerian_closed_form(n - 2));
  }
}

TEST_CASE("point count at q = 1 is the sum of stratum Euler characteristics") {
  for (const char* w : {"1,1,1,1,1", "1,1/2,1/2,1/2,1/3", "1,1,1/3,1/3,1/3,1/3", "1/2,1/2,1/2,1/2,1/2,1/2"}) {
    const StrataTable t = enumerate_strata(parse_weights(w));
    Integer chi = 0;
    for (int d = 0; d <= t.top_dimension(); ++d)
      for (const auto& g : t.of_dimension(d)) chi += stratum_euler_characteristic(g);
    CAPTURE(w);
    CHECK(point_count_polynomial(t).evaluate(1) == chi);
  }
}
