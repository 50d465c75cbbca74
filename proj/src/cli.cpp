#include "hassett/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hassett/error.hpp"
#include "hassett/export.hpp"
#include "hassett/oracles.hpp"
#include "hassett/verify_suite.hpp"

namespace hassett::cli {

namespace {

struct Config {
  std::string format = "json";
  std::string out_path;
  std::optional<int> max_n;
  int jobs = 0;
};

// Thrown for bad flag values that CLI11 itself cannot detect.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int guard_limit(const Config& cfg) {
  if (cfg.max_n) return *cfg.max_n;
  if (const char* env = std::getenv("HASSETT_CHOW_MAX_N")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError("HASSETT_CHOW_MAX_N is not an integer: " + std::string(env));
    }
  }
  return kDefaultMaxN;
}

void check_guard(const Config& cfg, int n) {
  const int limit = guard_limit(cfg);
  if (n > limit)
    throw GuardError("n = " + std::to_string(n) + " exceeds the limit " + std::to_string(limit) +
                     " (raise it with --max-n or HASSETT_CHOW_MAX_N)");
}

int jobs_of(const Config& cfg) {
  if (cfg.jobs > 0) return cfg.jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

void require_format(const Config& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (cfg.format == f) return;
  throw UsageError("format '" + cfg.format + "' is not available for this command");
}

std::string join(const std::vector<long long>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "(" + s + ")";
}

// Reports are assembled in memory so that --out gets exactly what stdout would.
struct Result {
  std::string text;
  int code = kOk;
};

Result dump(const Json& j) { return {j.dump(2) + "\n", kOk}; }

Result cmd_compute(const Config& cfg, const std::string& weights) {
  require_format(cfg, {"json", "text"});
  const WeightDatum a = parse_weights(weights);
  check_guard(cfg, a.size());
  const int jobs = jobs_of(cfg);
  const StrataTable table = enumerate_strata(a, jobs);
  const ChowPresentation p = chow_groups(table, jobs);
  const VerificationReport report = verify_presentation(p, table);
  const int code = report.passed() ? kOk : kCheckFailed;
  if (cfg.format == "json") return {to_json(p, report).dump(2) + "\n", code};

  std::ostringstream os;
  os << "weights   " << to_string(a) << "\n";
  os << "dim  strata  relations  rank  torsion\n";
  for (const auto& g : p.groups) {
    std::string tors;
    for (const auto& t : g.torsion) tors += (tors.empty() ? "Z/" : " Z/") + t.get_str();
    os << std::left << std::setw(5) << g.dim << std::setw(8) << g.generators << std::setw(11) << g.relations
       << std::setw(6) << g.betti << (tors.empty() ? "0" : tors) << "\n";
  }
  os << "betti     " << join(p.betti()) << "\n";
  os << "poincare  " << poincare_string(p) << "\n";
  for (const auto& c : report.checks)
    os << "check     " << c.name << " " << (c.passed ? "ok" : "FAILED") << (c.detail.empty() ? "" : ": " + c.detail)
       << "\n";
  return {os.str(), code};
}

Result cmd_strata(const Config& cfg, const std::string& weights, int dim) {
  require_format(cfg, {"json", "text", "dot"});
  const WeightDatum a = parse_weights(weights);
  check_guard(cfg, a.size());
  const StrataTable table = enumerate_strata(a, jobs_of(cfg));
  if (dim > table.top_dimension()) throw UsageError("--dim exceeds the dimension " + std::to_string(a.size() - 3));
  if (cfg.format == "json") return dump(to_json(table, dim));
  if (cfg.format == "dot") return {poset_to_dot(table, dim), kOk};
  std::ostringstream os;
  for (int d = table.top_dimension(); d >= 0; --d) {
    if (dim >= 0 && d != dim) continue;
    os << "dim " << d << ": " << table.of_dimension(d).size() << " strata\n";
    for (const auto& g : table.of_dimension(d)) os << "  " << to_string(g.key()) << "\n";
  }
  return {os.str(), kOk};
}

Result cmd_compare(const Config& cfg, const std::vector<std::string>& weights) {
  require_format(cfg, {"json", "text"});
  const WeightDatum a = parse_weights(weights[0]);
  const WeightDatum b = parse_weights(weights[1]);
  if (a.size() != b.size())
    throw UsageError("weight data have different lengths " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()));
  check_guard(cfg, a.size());
  const int jobs = jobs_of(cfg);
  const StrataTable ta = enumerate_strata(a, jobs), tb = enumerate_strata(b, jobs);
  const ChowPresentation pa = chow_groups(ta, jobs), pb = chow_groups(tb, jobs);
  const bool same = same_chamber(a, b);

  Json j;
  j["weights"] = {to_json(a), to_json(b)};
  j["same_chamber"] = same;
  int code = kOk;
  if (same) {
    const bool identical = strata_fingerprint(ta) == strata_fingerprint(tb) &&
                           presentation_fingerprint(pa) == presentation_fingerprint(pb);
    j["identical"] = identical;
    j["betti"] = pa.betti();
    if (!identical) code = kCheckFailed;
  } else {
    j["signatures"] = {to_json(chamber_signature(a)), to_json(chamber_signature(b))};
    j["betti"] = {pa.betti(), pb.betti()};
  }
  if (cfg.format == "json") return {j.dump(2) + "\n", code};

  std::ostringstream os;
  os << "A  " << to_string(a) << "\nB  " << to_string(b) << "\n";
  if (same) {
    os << "same chamber; presentations " << (code == kOk ? "identical" : "DIFFER") << "\n";
    os << "betti " << join(pa.betti()) << "\n";
  } else {
    os << "different chambers\n";
    os << "signature A  " << to_string(chamber_signature(a)) << "\n";
    os << "signature B  " << to_string(chamber_signature(b)) << "\n";
    os << "betti A  " << join(pa.betti()) << "\nbetti B  " << join(pb.betti()) << "\n";
  }
  return {os.str(), code};
}

struct Interval {
  Rational lo, hi;
  std::optional<ChamberSignature> signature;  // nullopt: no valid datum
  Rational sample;
};

Result cmd_sweep(const Config& cfg, const std::string& family_text, const std::string& range) {
  require_format(cfg, {"json", "text"});
  const WeightFamily family = parse_family(family_text, range);
  check_guard(cfg, family.size());
  const std::vector<Rational> walls = find_walls(family);

  // Each piece (lo, hi] of the domain has constant signature; sample its midpoint.
  std::vector<Rational> cuts{family.lower};
  cuts.insert(cuts.end(), walls.begin(), walls.end());
  cuts.push_back(family.upper);
  std::vector<Interval> pieces;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    Interval piece{cuts[i], cuts[i + 1], std::nullopt, (cuts[i] + cuts[i + 1]) / 2};
    if (auto d = family.datum_at(piece.sample)) piece.signature = chamber_signature(*d);
    if (!pieces.empty() && pieces.back().signature == piece.signature)
      pieces.back().hi = piece.hi;
    else
      pieces.push_back(std::move(piece));
  }

  const int jobs = jobs_of(cfg);
  Json walls_json = Json::array();
  for (const auto& w : walls) walls_json.push_back(to_string(w));
  Json chambers = Json::array();
  std::ostringstream os;
  os << "walls";
  for (const auto& w : walls) os << " " << to_string(w);
  os << (walls.empty() ? " none\n" : "\n");
  for (const auto& piece : pieces) {
    Json c;
    c["range"] = {to_string(piece.lo), to_string(piece.hi)};
    c["sample"] = to_string(piece.sample);
    os << "(" << to_string(piece.lo) << ", " << to_string(piece.hi) << "]  ";
    if (!piece.signature) {
      c["valid"] = false;
      os << "no valid weight datum\n";
    } else {
      const WeightDatum a = *family.datum_at(piece.sample);
      const StrataTable table = enumerate_strata(a, jobs);
      const ChowPresentation p = chow_groups(table, jobs);
      c["valid"] = true;
      c["weights"] = to_json(a);
      c["signature"] = to_json(*piece.signature);
      c["counts"] = table.counts();
      c["betti"] = p.betti();
      Json counts(table.counts());
      os << "sample " << to_string(a) << "  strata " << counts.dump() << "  betti " << join(p.betti()) << "\n";
    }
    chambers.push_back(std::move(c));
  }
  if (cfg.format == "text") return {os.str(), kOk};
  Json j;
  j["walls"] = std::move(walls_json);
  j["chambers"] = std::move(chambers);
  return dump(j);
}

Result cmd_verify(const Config& cfg, SuiteOptions options) {
  require_format(cfg, {"json", "text"});
  if (options.max_n < 4) throw UsageError("--max-n must be at least 4");
  if (options.trials < 0) throw UsageError("--trials must be non-negative");
  options.jobs = jobs_of(cfg);
  const SuiteReport report = run_verify_suite(options);
  const int code = report.passed() ? kOk : kCheckFailed;

  Json j;
  j["seed"] = options.seed;
  j["max_n"] = options.max_n;
  j["trials"] = options.trials;
  j["data_tested"] = report.data_tested;
  j["passed"] = report.passed();
  if (report.failure)
    j["counterexample"] = {
        {"weights", report.failure->weights}, {"check", report.failure->check}, {"detail", report.failure->detail}};
  if (cfg.format == "json") return {j.dump(2) + "\n", code};

  std::ostringstream os;
  os << "seed " << options.seed << ", n = 4.." << options.max_n << ", " << report.data_tested << " weight data\n";
  if (report.failure)
    os << "FAILED " << report.failure->check << " at " << report.failure->weights << ": " << report.failure->detail
       << "\n";
  else
    os << "all checks passed\n";
  return {os.str(), code};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strata, relations and Betti numbers of weighted genus-zero moduli spaces", "hassett-chow"};
  app.require_subcommand(1);
  Config cfg;
  std::string weights, family, range = "0,1";
  std::vector<std::string> pair;
  int dim = -1;
  SuiteOptions suite;
  int max_n_flag = 0;

  auto common = [&](CLI::App* sub, bool guard) {
    sub->add_option("--format", cfg.format, "json, text or dot")->check(CLI::IsMember({"json", "text", "dot"}));
    sub->add_option("--out", cfg.out_path, "write the report to this file");
    sub->add_option("--jobs", cfg.jobs, "worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
    if (guard) sub->add_option("--max-n", max_n_flag, "largest n accepted")->check(CLI::PositiveNumber);
  };

  CLI::App* compute = app.add_subcommand("compute", "strata, relations and Chow groups of one weight datum");
  compute->add_option("--weights", weights, "e.g. 1,1,1/3,1/3")->required();
  common(compute, true);

  CLI::App* strata = app.add_subcommand("strata", "list the strata");
  strata->add_option("--weights", weights)->required();
  strata->add_option("--dim", dim, "only this dimension")->check(CLI::NonNegativeNumber);
  common(strata, true);

  CLI::App* compare = app.add_subcommand("compare", "compare the chambers of two weight data");
  compare->add_option("--weights", pair, "give twice")->required()->expected(2)->allow_extra_args(false);
  common(compare, true);

  CLI::App* sweep = app.add_subcommand("sweep", "walls and chambers along a linear family");
  sweep->add_option("--family", family, "e.g. 1,1,eps,eps,eps")->required();
  sweep->add_option("--range", range, "lo,hi (default 0,1)");
  common(sweep, true);

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite on random weight data");
  verify->add_option("--max-n", suite.max_n, "largest n tested (default 5)");
  verify->add_option("--trials", suite.trials, "random data per n (default 25)");
  verify->add_option("--seed", suite.seed, "random seed (default 7)");
  verify->add_flag("--inject-fault", suite.inject_fault, "drop one relation to exercise the failure path");
  common(verify, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; everything else is a usage error.
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  if (max_n_flag > 0) cfg.max_n = max_n_flag;

  Result result;
  try {
    if (compute->parsed())
      result = cmd_compute(cfg, weights);
    else if (strata->parsed())
      result = cmd_strata(cfg, weights, dim);
    else if (compare->parsed())
      result = cmd_compare(cfg, pair);
    else if (sweep->parsed())
      result = cmd_sweep(cfg, family, range);
    else {
      if (const int limit = guard_limit(cfg); suite.max_n > limit)
        throw GuardError("--max-n " + std::to_string(suite.max_n) + " exceeds the limit " + std::to_string(limit));
      result = cmd_verify(cfg, suite);
    }
  } catch (const GuardError& e) {
    err << "error: " << e.what() << "\n";
    return kGuard;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (cfg.out_path.empty()) {
    out << result.text;
  } else {
    std::ofstream file(cfg.out_path);
    if (!(file << result.text)) {
      err << "error: cannot write " << cfg.out_path << "\n";
      return kUsage;
    }
  }
  return result.code;
}

}  // namespace hassett::cli
