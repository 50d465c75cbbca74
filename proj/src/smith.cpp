#include "hassett/smith.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

#include "hassett/error.hpp"

namespace hassett {

IntegerMatrix IntegerMatrix::from_dense(const std::vector<std::vector<Integer>>& dense, int column_count) {
  IntegerMatrix m(column_count >= 0 ? column_count : (dense.empty() ? 0 : static_cast<int>(dense[0].size())));
  for (const auto& r : dense) {
    Row row;
    for (int j = 0; j < static_cast<int>(r.size()); ++j)
      if (r[j] != 0) row.emplace_back(j, r[j]);
    m.add_row(std::move(row));
  }
  return m;
}

void IntegerMatrix::add_row(Row row) {
  std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [c, v] : row)
    if (c < 0 || c >= cols) throw Error(ErrorKind::BadPartition, "matrix column out of range");
  row.erase(std::remove_if(row.begin(), row.end(), [](const auto& e) { return e.second == 0; }), row.end());
  entries.push_back(std::move(row));
  ++rows;
}

std::vector<std::vector<Integer>> IntegerMatrix::dense() const {
  std::vector<std::vector<Integer>> d(rows, std::vector<Integer>(cols, 0));
  for (int i = 0; i < rows; ++i)
    for (const auto& [c, v] : entries[i]) d[i][c] += v;
  return d;
}

namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
bool is_unit(const Integer& a) { return mpz_cmpabs_ui(a.get_mpz_t(), 1) == 0; }

void normalize_chain(std::vector<Integer>& d) {
  for (auto& x : d) x = abs(x);
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j) {
      Integer g, l;
      mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      d[i] = g;
      d[j] = l;
    }
}

struct Overflow {};

// Exact arithmetic on either machine words (throwing Overflow) or GMP integers.
struct WordOps {
  using T = std::int64_t;
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T neg(T a) { return sub(0, a); }
  static bool unit(T a) { return a == 1 || a == -1; }
  static Integer big(T a) { return to_integer(a); }
};

struct BigOps {
  using T = Integer;
  static T mul(const T& a, const T& b) { return a * b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static T neg(const T& a) { return -a; }
  static bool unit(const T& a) { return is_unit(a); }
  static Integer big(const T& a) { return a; }
};

template <class V>
using SparseRow = std::vector<std::pair<int, V>>;

template <class V>
const V* find_entry(const SparseRow<V>& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, int c) { return e.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

// target -= factor * pivot
template <class Ops>
SparseRow<typename Ops::T> subtract_scaled(const SparseRow<typename Ops::T>& target,
                                           const SparseRow<typename Ops::T>& pivot, const typename Ops::T& factor) {
  SparseRow<typename Ops::T> out;
  out.reserve(target.size() + pivot.size());
  size_t i = 0, j = 0;
  while (i < target.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < target.size() && target[i].first < pivot[j].first)) {
      out.push_back(target[i++]);
    } else if (i == target.size() || pivot[j].first < target[i].first) {
      out.emplace_back(pivot[j].first, Ops::neg(Ops::mul(factor, pivot[j].second)));
      ++j;
    } else {
      auto v = Ops::sub(target[i].second, Ops::mul(factor, pivot[j].second));
      if (v != 0) out.emplace_back(target[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

constexpr int kBatch = 32;

struct SparsePhase {
  int unit_pivots = 0;
  std::vector<IntegerMatrix::Row> rest;  // rows left without a unit pivot
};

// Repeatedly pivots on unit entries, sparsest columns first.
template <class Ops>
SparsePhase eliminate_units(std::vector<SparseRow<typename Ops::T>> rows, int cols) {
  const int nrows = static_cast<int>(rows.size());
  std::vector<std::vector<int>> col_rows(cols);
  for (int r = 0; r < nrows; ++r)
    for (const auto& [c, v] : rows[r]) col_rows[c].push_back(r);
  std::vector<char> active(nrows, 1), col_done(cols, 0);
  SparsePhase out;

  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<int> order;
    for (int c = 0; c < cols; ++c)
      if (!col_done[c]) order.push_back(c);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return col_rows[a].size() < col_rows[b].size(); });
    int batch = 0;
    for (int c : order) {
      // Column counts drift as fill-in accumulates; re-rank now and then.
      if (batch == kBatch) break;
      auto& list = col_rows[c];
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
      list.erase(std::remove_if(list.begin(), list.end(),
                                [&](int r) { return !active[r] || find_entry(rows[r], c) == nullptr; }),
                 list.end());
      int pivot = -1;
      for (int r : list)
        if (Ops::unit(*find_entry(rows[r], c)) && (pivot < 0 || rows[r].size() < rows[pivot].size())) pivot = r;
      if (pivot < 0) continue;
      const auto pv = *find_entry(rows[pivot], c);
      for (int r : list) {
        if (r == pivot) continue;
        const auto factor = Ops::mul(*find_entry(rows[r], c), pv);
        rows[r] = subtract_scaled<Ops>(rows[r], rows[pivot], factor);
        // Only the pivot row's columns can have gained an entry.
        for (const auto& [cc, v] : rows[pivot])
          if (cc != c) col_rows[cc].push_back(r);
      }
      active[pivot] = 0;
      col_done[c] = 1;
      list.clear();
      list.shrink_to_fit();
      ++out.unit_pivots;
      ++batch;
      progress = true;
    }
  }
  for (int r = 0; r < nrows; ++r) {
    if (!active[r] || rows[r].empty()) continue;
    IntegerMatrix::Row row;
    for (const auto& [c, v] : rows[r]) row.emplace_back(c, Ops::big(v));
    out.rest.push_back(std::move(row));
  }
  return out;
}

std::optional<std::vector<SparseRow<std::int64_t>>> to_words(const IntegerMatrix& m) {
  std::vector<SparseRow<std::int64_t>> rows(m.rows);
  for (int r = 0; r < m.rows; ++r)
    for (const auto& [c, v] : m.entries[r]) {
      if (!v.fits_slong_p()) return std::nullopt;
      rows[r].emplace_back(c, v.get_si());
    }
  return rows;
}

}  // namespace

SmithForm smith_normal_form_dense(std::vector<std::vector<Integer>> a) {
  const size_t m = a.size();
  const size_t n = m ? a[0].size() : 0;
  std::vector<Integer> diag;
  size_t t = 0;
  while (t < std::min(m, n)) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    size_t pi = m, pj = n;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (pi == m || cmpabs(a[i][j], a[pi][pj]) < 0)) pi = i, pj = j;
    if (pi == m) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);

    while (true) {
      bool clean = true;
      for (size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        Integer q = a[i][t] / a[t][t];
        for (size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = a[t][j] / a[t][t];
        for (size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
      // A remainder smaller than the pivot is left in row or column t.
      size_t bi = t, bj = t;
      for (size_t i = t + 1; i < m; ++i)
        if (a[i][t] != 0 && cmpabs(a[i][t], a[bi][bj]) < 0) bi = i, bj = t;
      for (size_t j = t + 1; j < n; ++j)
        if (a[t][j] != 0 && cmpabs(a[t][j], a[bi][bj]) < 0) bi = t, bj = j;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
    }
    diag.push_back(a[t][t]);
    ++t;
  }
  normalize_chain(diag);
  SmithForm s;
  s.rank = static_cast<int>(diag.size());
  s.factors = std::move(diag);
  return s;
}

SmithForm smith_normal_form(const IntegerMatrix& m) {
  std::optional<SparsePhase> phase;
  if (auto words = to_words(m)) {
    try {
      phase = eliminate_units<WordOps>(std::move(*words), m.cols);
    } catch (const Overflow&) {
    }
  }
  if (!phase) phase = eliminate_units<BigOps>(m.entries, m.cols);
  const int unit_pivots = phase->unit_pivots;

  // Whatever survives has no unit entries; finish densely.
  std::vector<int> col_map(m.cols, -1);
  int width = 0;
  for (const auto& row : phase->rest)
    for (const auto& [c, v] : row)
      if (col_map[c] < 0) col_map[c] = width++;
  std::vector<std::vector<Integer>> rest(phase->rest.size(), std::vector<Integer>(width, 0));
  for (size_t i = 0; i < rest.size(); ++i)
    for (const auto& [c, v] : phase->rest[i]) rest[i][col_map[c]] = v;
  SmithForm tail = smith_normal_form_dense(std::move(rest));

  SmithForm s;
  s.factors.assign(unit_pivots, Integer(1));
  s.factors.insert(s.factors.end(), tail.factors.begin(), tail.factors.end());
  s.rank = unit_pivots + tail.rank;
  return s;
}

}  // namespace hassett
