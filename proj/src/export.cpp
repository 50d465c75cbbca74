#include "hassett/export.hpp"

#include <sstream>

namespace hassett {

namespace {

Json labels_json(TailSet s) { return Json(labels_of(s)); }

Json sets_json(const std::vector<TailSet>& sets) {
  Json out = Json::array();
  for (TailSet s : sets) out.push_back(labels_json(s));
  return out;
}

std::string stratum_id(StratumRef r) { return "d" + std::to_string(r.dim) + "_" + std::to_string(r.index); }

const char* kPalette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"};

}  // namespace

Json to_json(const WeightDatum& a) {
  Json out = Json::array();
  for (const auto& w : a.weights()) out.push_back(to_string(w));
  return out;
}

Json to_json(const ChamberSignature& sig) { return sets_json(sig.mergeable); }

Json to_json(const ATree& g) {
  Json blocks = Json::object();
  const auto order = g.canonical_vertex_order();
  for (size_t i = 0; i < order.size(); ++i) blocks[std::to_string(i)] = sets_json(g.blocks(order[i]));
  Json out;
  out["splits"] = sets_json(g.splits());
  out["blocks"] = std::move(blocks);
  out["dim"] = g.dimension();
  return out;
}

Json to_json(const StrataTable& table, int only_dim) {
  Json dims = Json::object(), counts = Json::object();
  for (int d = 0; d <= table.top_dimension(); ++d) {
    if (only_dim >= 0 && d != only_dim) continue;
    Json list = Json::array();
    for (const auto& g : table.of_dimension(d)) list.push_back(to_json(g));
    dims[std::to_string(d)] = std::move(list);
    counts[std::to_string(d)] = table.of_dimension(d).size();
  }
  Json out;
  out["weights"] = to_json(table.weights());
  out["dims"] = std::move(dims);
  out["counts"] = std::move(counts);
  return out;
}

Json to_json(const Relation& r) {
  Json terms = Json::array();
  for (auto [index, coeff] : r.columns) terms.push_back({{"stratum", index}, {"coeff", coeff}});
  Json marks = Json::array();
  for (TailSet m : r.source.marks) marks.push_back(labels_json(m));
  Json out;
  out["dim"] = r.vector.dim;
  out["terms"] = std::move(terms);
  out["source"] = {{"stratum", r.source.stratum},
                   {"vertex", sets_json(r.source.vertex)},
                   {"marks", std::move(marks)},
                   {"pairing", to_string(r.source.pairing)}};
  return out;
}

Json to_json(const ChowPresentation& p, const VerificationReport& report) {
  Json torsion = Json::object(), checks = Json::object();
  Json generators = Json::array(), relations = Json::array();
  for (const auto& g : p.groups) {
    Json t = Json::array();
    for (const auto& f : g.torsion) t.push_back(f.get_str());
    torsion[std::to_string(g.dim)] = std::move(t);
    generators.push_back(g.generators);
    relations.push_back(g.relations);
  }
  for (const auto& c : report.checks) checks[c.name] = c.passed;
  Json out;
  out["weights"] = to_json(*p.weights);
  out["betti"] = p.betti();
  out["torsion"] = std::move(torsion);
  out["poincare"] = poincare_string(p);
  out["generators"] = std::move(generators);
  out["relation_counts"] = std::move(relations);
  out["checks"] = std::move(checks);
  return out;
}

std::string tree_to_dot(const ATree& g) {
  std::ostringstream os;
  os << "graph atree {\n  node [shape=circle];\n";
  const auto order = g.canonical_vertex_order();
  std::vector<int> name(g.vertex_count());
  for (size_t i = 0; i < order.size(); ++i) name[order[i]] = static_cast<int>(i);
  int color = 0;
  for (int v : order) {
    os << "  v" << name[v] << " [label=\"\" shape=point width=0.15];\n";
    for (TailSet b : g.blocks(v)) {
      const bool grouped = popcount(b) > 1;
      const char* c = grouped ? kPalette[color++ % 8] : "black";
      for (int l : labels_of(b)) {
        os << "  t" << l << " [label=\"" << l << "\" shape=plaintext fontcolor=" << c << "];\n";
        os << "  v" << name[v] << " -- t" << l << " [color=" << c << (grouped ? " style=dotted" : "") << "];\n";
      }
    }
  }
  for (auto [u, v] : g.shape().edges) os << "  v" << name[u] << " -- v" << name[v] << " [penwidth=2];\n";
  os << "}\n";
  return os.str();
}

std::string poset_to_dot(const StrataTable& table, int only_dim) {
  std::ostringstream os;
  os << "digraph strata {\n  rankdir=BT;\n";
  for (int d = 0; d <= table.top_dimension(); ++d) {
    if (only_dim >= 0 && d != only_dim) continue;
    const auto& list = table.of_dimension(d);
    for (int i = 0; i < static_cast<int>(list.size()); ++i)
      os << "  " << stratum_id({d, i}) << " [label=\"" << to_string(list[i].key()) << "\\ndim " << d << "\"];\n";
  }
  // Covers always join adjacent dimensions, so a single-dimension view has none.
  if (only_dim < 0)
    for (auto [lo, hi] : covering_relations(table)) os << "  " << stratum_id(lo) << " -> " << stratum_id(hi) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace hassett
