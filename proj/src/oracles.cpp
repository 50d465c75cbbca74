#include "hassett/oracles.hpp"

#include "hassett/error.hpp"

namespace hassett {

namespace {

CountPolynomial multiply(const CountPolynomial& a, const CountPolynomial& b) {
  CountPolynomial c;
  c.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j) c.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  return c;
}

void add_into(CountPolynomial& acc, const CountPolynomial& p) {
  if (acc.coeffs.size() < p.coeffs.size()) acc.coeffs.resize(p.coeffs.size(), 0);
  for (size_t i = 0; i < p.coeffs.size(); ++i) acc.coeffs[i] += p.coeffs[i];
}

}  // namespace

Integer CountPolynomial::evaluate(const Integer& q) const {
  Integer v = 0;
  for (size_t i = coeffs.size(); i-- > 0;) v = v * q + coeffs[i];
  return v;
}

std::string CountPolynomial::to_string() const {
  std::string out;
  for (size_t i = coeffs.size(); i-- > 0;) {
    const Integer& c = coeffs[i];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? "-" : "+";
    }
    if (i == 0 || mag != 1) out += mag.get_str();
    if (i > 0) {
      if (mag != 1) out += "*";
      out += i == 1 ? std::string("q") : "q^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

CountPolynomial configuration_count(int k) {
  CountPolynomial p{{Integer(1)}};
  for (int i = 0; i <= k - 4; ++i) p = multiply(p, CountPolynomial{{Integer(-2 - i), Integer(1)}});
  return p;
}

CountPolynomial point_count_polynomial(const StrataTable& table) {
  CountPolynomial total{{Integer(0)}};
  for (int d = 0; d <= table.top_dimension(); ++d)
    for (const ATree& g : table.of_dimension(d)) {
      CountPolynomial term{{Integer(1)}};
      for (int v = 0; v < g.vertex_count(); ++v)
        term = multiply(term, configuration_count(static_cast<int>(g.blocks(v).size()) + g.degree(v)));
      add_into(total, term);
    }
  while (total.coeffs.size() > 1 && total.coeffs.back() == 0) total.coeffs.pop_back();
  return total;
}

std::vector<Integer> eulerian_numbers(int m) {
  if (m < 1) throw Error(ErrorKind::BadPartition, "Eulerian numbers need m >= 1");
  std::vector<Integer> row{Integer(1)};
  for (int k = 2; k <= m; ++k) {
    std::vector<Integer> next(k, 0);
    for (int j = 0; j < k; ++j) {
      if (j < k - 1) next[j] += (j + 1) * row[j];
      if (j >= 1) next[j] += (k - j) * row[j - 1];
    }
    row = std::move(next);
  }
  return row;
}

std::vector<long long> betti_from_point_count(const CountPolynomial& c) {
  std::vector<long long> b;
  for (size_t i = 0; i < c.coeffs.size(); ++i) {
    if (c.coeffs[i] < 0)
      throw Error(ErrorKind::NegativeCoefficient, "q^" + std::to_string(i) + " coefficient " + c.coeffs[i].get_str());
    b.push_back(c.coeffs[i].get_si());
  }
  return b;
}

}  // namespace hassett
