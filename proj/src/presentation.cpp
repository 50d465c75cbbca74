#include "hassett/presentation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hassett/oracles.hpp"
#include "hassett/parallel.hpp"

namespace hassett {

std::vector<long long> ChowPresentation::betti() const {
  std::vector<long long> b;
  for (const auto& g : groups) b.push_back(g.betti);
  return b;
}

bool ChowPresentation::torsion_free() const {
  return std::all_of(groups.begin(), groups.end(), [](const DimensionGroup& g) { return g.torsion.empty(); });
}

RelationsByDim all_relations_by_dim(const StrataTable& table, int jobs) {
  RelationsByDim out(table.top_dimension() + 1);
  for (int d = 0; d < table.top_dimension(); ++d) out[d] = all_relations(table, d, jobs);
  return out;
}

ChowPresentation present(const StrataTable& table, const RelationsByDim& relations, int jobs) {
  ChowPresentation p;
  p.weights = table.weights_ptr();
  const int top = table.top_dimension();
  p.groups.resize(top + 1);
  parallel_for(top + 1, jobs, [&](size_t i) {
    const int d = static_cast<int>(i);
    DimensionGroup& g = p.groups[d];
    g.dim = d;
    g.generators = static_cast<int>(table.of_dimension(d).size());
    std::set<std::vector<std::pair<int, int>>> distinct;
    if (d < static_cast<int>(relations.size()))
      for (const auto& r : relations[d])
        if (!r.columns.empty()) distinct.insert(r.columns);
    IntegerMatrix m(g.generators);
    for (const auto& cols : distinct) {
      IntegerMatrix::Row row;
      for (auto [c, v] : cols) row.emplace_back(c, Integer(v));
      m.add_row(std::move(row));
    }
    g.relations = m.rows;
    g.smith = smith_normal_form(m);
    g.betti = g.generators - g.smith.rank;
    for (const auto& f : g.smith.factors)
      if (f > 1) g.torsion.push_back(f);
  });
  return p;
}

ChowPresentation chow_groups(const StrataTable& table, int jobs) {
  return present(table, all_relations_by_dim(table, jobs), jobs);
}

ChowPresentation chow_groups(const WeightDatum& a, int jobs) { return chow_groups(enumerate_strata(a, jobs), jobs); }

std::vector<long long> poincare_polynomial(const ChowPresentation& p) {
  std::vector<long long> c(2 * p.groups.size() - 1, 0);
  for (const auto& g : p.groups) c[2 * g.dim] = g.betti;
  return c;
}

std::string poincare_string(const ChowPresentation& p) {
  std::string out;
  for (const auto& g : p.groups) {
    if (g.betti == 0) continue;
    if (!out.empty()) out += "+";
    if (g.dim == 0) {
      out += std::to_string(g.betti);
      continue;
    }
    if (g.betti != 1) out += std::to_string(g.betti) + "*";
    out += g.dim == 1 ? std::string("t^2") : "t^" + std::to_string(2 * g.dim);
  }
  return out.empty() ? "0" : out;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

std::string join(const std::vector<long long>& v) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace

VerificationReport verify_presentation(const ChowPresentation& p, const StrataTable& table) {
  VerificationReport report;
  const auto b = p.betti();
  const int top = static_cast<int>(b.size()) - 1;

  {
    bool ok = true;
    for (int d = 0; d <= top; ++d) ok = ok && b[d] == b[top - d];
    report.checks.push_back({"duality", ok, "betti " + join(b)});
  }

  const CountPolynomial count = point_count_polynomial(table);
  {
    Integer chi = 0;
    for (int d = 0; d <= table.top_dimension(); ++d)
      for (const auto& g : table.of_dimension(d)) chi += stratum_euler_characteristic(g);
    Integer sum = 0;
    for (long long x : b) sum += to_integer(x);
    const Integer at_one = count.evaluate(1);
    report.checks.push_back({"euler_characteristic", sum == chi && chi == at_one,
                             "sum b = " + sum.get_str() + ", sum chi = " + chi.get_str() +
                                 ", count(1) = " + at_one.get_str()});
  }

  report.checks.push_back({"torsion_free", p.torsion_free(), p.torsion_free() ? "no torsion" : "torsion present"});

  {
    bool ok = static_cast<int>(count.coeffs.size()) == top + 1;
    for (int d = 0; ok && d <= top; ++d) ok = count.coeffs[d] == to_integer(b[d]);
    report.checks.push_back({"point_count", ok, "betti " + join(b) + " vs count " + count.to_string()});
  }
  return report;
}

}  // namespace hassett
