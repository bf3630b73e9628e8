/**
 * @file linalg.hpp
 * @brief Sparse exact linear algebra over Q(q).
 *
 * Matrices store sparse rows of LaurentRat entries.  Rank / kernel / solve /
 * inverse all run over an incremental fraction-free echelon: inserted rows are
 * cleared of denominators, eliminated against existing pivots by
 * cross-multiplication, and stripped of integer content and common q-powers so
 * intermediate coefficients stay small.
 */

#pragma once

#include "qq.hpp"

#include <map>
#include <optional>

namespace qflag {

/// Sparse vector: (column, value) pairs, strictly ascending columns, no zeros.
using SparseVec = std::vector<std::pair<int, LaurentRat>>;

inline SparseVec sv_unit(int col) { return SparseVec{{col, LaurentRat::one()}}; }

inline LaurentRat sv_get(const SparseVec& v, int col) {
  auto it = std::lower_bound(v.begin(), v.end(), col,
                             [](const auto& p, int c) { return p.first < c; });
  return (it != v.end() && it->first == col) ? it->second : LaurentRat::zero();
}

/// dst = a*x + b*y (either scalar may be 1); merge of sorted supports.
inline SparseVec sv_combine(const LaurentRat& a, const SparseVec& x, const LaurentRat& b,
                            const SparseVec& y) {
  SparseVec r;
  r.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  const bool a1 = a.is_one(), b1 = b.is_one();
  while (i < x.size() || j < y.size()) {
    if (j >= y.size() || (i < x.size() && x[i].first < y[j].first)) {
      LaurentRat v = a1 ? x[i].second : a * x[i].second;
      if (!v.is_zero()) r.emplace_back(x[i].first, std::move(v));
      ++i;
    } else if (i >= x.size() || y[j].first < x[i].first) {
      LaurentRat v = b1 ? y[j].second : b * y[j].second;
      if (!v.is_zero()) r.emplace_back(y[j].first, std::move(v));
      ++j;
    } else {
      LaurentRat v = (a1 ? x[i].second : a * x[i].second) + (b1 ? y[j].second : b * y[j].second);
      if (!v.is_zero()) r.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return r;
}

inline void sv_scale(SparseVec& v, const LaurentRat& c) {
  if (c.is_zero()) {
    v.clear();
    return;
  }
  if (c.is_one()) return;
  for (auto& e : v) e.second *= c;
}

inline LaurentRat sv_dot(const SparseVec& a, const SparseVec& b) {
  LaurentRat r = LaurentRat::zero();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) ++i;
    else if (b[j].first < a[i].first) ++j;
    else r += a[i].second * b[j].second, ++i, ++j;
  }
  return r;
}

namespace detail {

/// Multiply a vector through by its denominators until every entry is a
/// Laurent polynomial, then strip the common integer content and q-power.
/// When the exponent spread becomes large, also divide out the full
/// polynomial gcd of the entries.
inline void sv_clear_and_strip(SparseVec& v) {
  if (v.empty()) return;
  for (bool again = true; again;) {
    again = false;
    for (const auto& e : v) {
      if (!e.second.is_denominator_one()) {
        LaurentRat d;  // the offending denominator, as a polynomial
        {
          LaurentRat tmp = LaurentRat::zero();
          const auto& dc = e.second.den_coeffs();
          for (std::size_t k = 0; k < dc.size(); ++k)
            if (dc[k] != 0) tmp += LaurentRat::monomial(dc[k], static_cast<int>(k));
          d = tmp;
        }
        for (auto& x : v) x.second *= d;
        again = true;
        break;
      }
    }
  }
  // common q-power and integer content
  int mn = v[0].second.min_exp(), mx = v[0].second.max_exp();
  Int g = 0;
  for (const auto& e : v) {
    mn = std::min(mn, e.second.min_exp());
    mx = std::max(mx, e.second.max_exp());
    if (g != 1)
      for (const Int& c : e.second.num_coeffs()) {
        g = boost::multiprecision::gcd(g, c);
        if (g == 1) break;
      }
  }
  if (g != 1 || mn != 0) {
    const LaurentRat s = LaurentRat::monomial(g, mn).inv();
    for (auto& e : v) e.second *= s;
    mx -= mn;
    mn = 0;
  }
  if (mx > 80 && v.size() > 1) {  // adaptive: keep entry degrees in check
    Poly acc;
    for (const auto& e : v) {
      Poly p = e.second.num_coeffs();
      if (e.second.min_exp() > 0) p.insert(p.begin(), static_cast<std::size_t>(e.second.min_exp()), Int(0));
      acc = acc.empty() ? p : poly_gcd(acc, p);
      if (poly_deg(acc) == 0) return;
    }
    if (poly_deg(acc) > 0) {
      LaurentRat d = LaurentRat::zero();
      for (std::size_t k = 0; k < acc.size(); ++k)
        if (acc[k] != 0) d += LaurentRat::monomial(acc[k], static_cast<int>(k));
      d = d.inv();
      for (auto& e : v) e.second *= d;
    }
  }
}

}  // namespace detail

/// Rectangular matrix over Q(q) with sparse rows.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_(static_cast<std::size_t>(rows)) {}

  static ExactMatrix identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.row_[static_cast<std::size_t>(i)] = sv_unit(i);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const SparseVec& row(int i) const { return row_[static_cast<std::size_t>(i)]; }
  void set_row(int i, SparseVec v) { row_[static_cast<std::size_t>(i)] = std::move(v); }

  LaurentRat entry(int i, int j) const { return sv_get(row(i), j); }

  void set(int i, int j, const LaurentRat& v) {
    auto& r = row_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& p, int c) { return p.first < c; });
    if (it != r.end() && it->first == j) {
      if (v.is_zero()) r.erase(it);
      else it->second = v;
    } else if (!v.is_zero()) {
      r.insert(it, {j, v});
    }
  }

  void add_to(int i, int j, const LaurentRat& v) {
    if (v.is_zero()) return;
    auto& r = row_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& p, int c) { return p.first < c; });
    if (it != r.end() && it->first == j) {
      it->second += v;
      if (it->second.is_zero()) r.erase(it);
    } else {
      r.insert(it, {j, v});
    }
  }

  bool is_zero() const {
    for (const auto& r : row_)
      if (!r.empty()) return false;
    return true;
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : row_) n += r.size();
    return n;
  }

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_ == b.row_;
  }
  friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
    check_same_shape(a, b);
    ExactMatrix r(a.rows_, a.cols_);
    const LaurentRat one = LaurentRat::one();
    for (int i = 0; i < a.rows_; ++i) r.row_[static_cast<std::size_t>(i)] = sv_combine(one, a.row(i), one, b.row(i));
    return r;
  }
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    check_same_shape(a, b);
    ExactMatrix r(a.rows_, a.cols_);
    const LaurentRat one = LaurentRat::one(), mone = LaurentRat(-1);
    for (int i = 0; i < a.rows_; ++i) r.row_[static_cast<std::size_t>(i)] = sv_combine(one, a.row(i), mone, b.row(i));
    return r;
  }
  friend ExactMatrix operator*(const LaurentRat& c, const ExactMatrix& a) {
    ExactMatrix r = a;
    for (auto& row : r.row_) sv_scale(row, c);
    return r;
  }

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product shape mismatch");
    ExactMatrix r(a.rows_, b.cols_);
    std::vector<LaurentRat> acc(static_cast<std::size_t>(b.cols_));
    std::vector<int> touched;
    for (int i = 0; i < a.rows_; ++i) {
      touched.clear();
      for (const auto& [t, av] : a.row(i)) {
        for (const auto& [j, bv] : b.row(t)) {
          auto& slot = acc[static_cast<std::size_t>(j)];
          if (slot.is_zero()) touched.push_back(j);
          slot += av * bv;
        }
      }
      std::sort(touched.begin(), touched.end());
      SparseVec out;
      out.reserve(touched.size());
      for (int j : touched) {
        auto& slot = acc[static_cast<std::size_t>(j)];
        if (!slot.is_zero()) out.emplace_back(j, std::move(slot));
        slot = LaurentRat::zero();
      }
      r.row_[static_cast<std::size_t>(i)] = std::move(out);
    }
    return r;
  }

  ExactMatrix transpose() const {
    ExactMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (const auto& [j, v] : row(i)) r.row_[static_cast<std::size_t>(j)].emplace_back(i, v);
    return r;  // column order of insertion is ascending in i: rows stay sorted
  }

  /// y = M x for a dense column vector x.
  std::vector<LaurentRat> apply(const std::vector<LaurentRat>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw InvalidArgument("apply shape mismatch");
    std::vector<LaurentRat> y(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
      for (const auto& [j, v] : row(i)) y[static_cast<std::size_t>(i)] += v * x[static_cast<std::size_t>(j)];
    return y;
  }

  SparseVec apply_sparse(const SparseVec& x) const {
    SparseVec y;
    for (int i = 0; i < rows_; ++i) {
      LaurentRat d = sv_dot(row(i), x);
      if (!d.is_zero()) y.emplace_back(i, std::move(d));
    }
    return y;
  }

  /// Kronecker product: entry ((i*rB+k), (j*cB+l)) = A[i,j] * B[k,l].
  static ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      if (a.row(i).empty()) continue;
      for (int k = 0; k < b.rows_; ++k) {
        if (b.row(k).empty()) continue;
        SparseVec out;
        out.reserve(a.row(i).size() * b.row(k).size());
        for (const auto& [j, av] : a.row(i))
          for (const auto& [l, bv] : b.row(k)) {
            LaurentRat v = av * bv;
            if (!v.is_zero()) out.emplace_back(j * b.cols_ + l, std::move(v));
          }
        r.row_[static_cast<std::size_t>(i * b.rows_ + k)] = std::move(out);
      }
    }
    return r;
  }

 private:
  static void check_same_shape(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix shape mismatch");
  }

  int rows_ = 0, cols_ = 0;
  std::vector<SparseVec> row_;
};

/**
 * Incremental fraction-free row echelon.  Stored rows are Laurent-polynomial
 * vectors (denominator-free, content-stripped) with pairwise distinct pivot
 * columns.  After make_rref() every row has pivot value 1, support only on its
 * pivot column and on free columns, and entries may be general field elements.
 */
class Echelon {
 public:
  explicit Echelon(int cols) : cols_(cols) {}

  int cols() const { return cols_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<SparseVec>& rows() const { return rows_; }
  const std::map<int, int>& pivot_map() const { return pivot_map_; }
  bool rref_done() const { return rref_; }

  /// Insert a vector; returns true if it was independent of the span so far.
  bool insert(SparseVec v) {
    if (rref_) throw InvalidArgument("cannot insert after make_rref");
    eliminate(v, /*stop_at_new_pivot=*/true);
    if (v.empty()) return false;
    detail::sv_clear_and_strip(v);
    pivot_map_[v.front().first] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    return true;
  }

  bool in_span(SparseVec v) const {
    eliminate(v, /*stop_at_new_pivot=*/false);
    return v.empty();
  }

  void make_rref() {
    if (rref_) return;
    // clear each pivot column from all other rows, rightmost pivot first
    for (auto it = pivot_map_.rbegin(); it != pivot_map_.rend(); ++it) {
      const int pc = it->first, pr = it->second;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (static_cast<int>(r) == pr) continue;
        const LaurentRat c = sv_get(rows_[r], pc);
        if (c.is_zero()) continue;
        const LaurentRat a = sv_get(rows_[static_cast<std::size_t>(pr)], pc);
        rows_[r] = sv_combine(a, rows_[r], -c, rows_[static_cast<std::size_t>(pr)]);
        detail::sv_clear_and_strip(rows_[r]);
      }
    }
    for (auto& [pc, pr] : pivot_map_) {
      auto& row = rows_[static_cast<std::size_t>(pr)];
      const LaurentRat inv = sv_get(row, pc).inv();
      sv_scale(row, inv);
    }
    rref_ = true;
  }

  /// Residual of v modulo the row span; requires make_rref().
  SparseVec reduce(SparseVec v) const {
    if (!rref_) throw InvalidArgument("reduce requires rref");
    for (std::size_t idx = 0; idx < v.size();) {
      auto it = pivot_map_.find(v[idx].first);
      if (it == pivot_map_.end()) {
        ++idx;
        continue;
      }
      const LaurentRat c = v[idx].second;
      v = sv_combine(LaurentRat::one(), v, -c, rows_[static_cast<std::size_t>(it->second)]);
      // the pivot entry cancelled exactly; entries before idx are free columns
    }
    return v;
  }

  std::vector<int> free_cols() const {
    std::vector<int> f;
    f.reserve(static_cast<std::size_t>(cols_) - pivot_map_.size());
    auto it = pivot_map_.begin();
    for (int c = 0; c < cols_; ++c) {
      if (it != pivot_map_.end() && it->first == c) ++it;
      else f.push_back(c);
    }
    return f;
  }

 private:
  void eliminate(SparseVec& v, bool stop_at_new_pivot) const {
    if (v.empty()) return;
    detail::sv_clear_and_strip(v);
    std::size_t idx = 0;
    while (idx < v.size()) {
      auto it = pivot_map_.find(v[idx].first);
      if (it == pivot_map_.end()) {
        if (stop_at_new_pivot) return;
        ++idx;
        continue;
      }
      const SparseVec& piv = rows_[static_cast<std::size_t>(it->second)];
      const LaurentRat a = piv.front().second;  // pivot value (polynomial)
      const LaurentRat b = v[idx].second;
      v = sv_combine(a, v, -b, piv);
      if (v.empty()) return;
      detail::sv_clear_and_strip(v);
      // cancelled entries only at or right of idx; re-scan from idx
    }
  }

  int cols_;
  bool rref_ = false;
  std::vector<SparseVec> rows_;
  std::map<int, int> pivot_map_;  // pivot column -> row index
};

inline int rank(const ExactMatrix& m) {
  Echelon e(m.cols());
  for (int i = 0; i < m.rows(); ++i) e.insert(m.row(i));
  return e.rank();
}

/// Basis of { x : m x = 0 }, one vector per free column, ascending.
inline std::vector<SparseVec> kernel_basis(const ExactMatrix& m) {
  Echelon e(m.cols());
  for (int i = 0; i < m.rows(); ++i) e.insert(m.row(i));
  e.make_rref();
  std::vector<SparseVec> out;
  for (int f : e.free_cols()) {
    SparseVec x{{f, LaurentRat::one()}};
    for (const auto& [pc, pr] : e.pivot_map()) {
      LaurentRat c = sv_get(e.rows()[static_cast<std::size_t>(pr)], f);
      if (!c.is_zero()) x.emplace_back(pc, -c);
    }
    std::sort(x.begin(), x.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(std::move(x));
  }
  return out;
}

/// Solve m x = rhs; free variables set to zero.  nullopt if inconsistent.
inline std::optional<std::vector<LaurentRat>> solve(const ExactMatrix& m,
                                                    const std::vector<LaurentRat>& rhs) {
  if (static_cast<int>(rhs.size()) != m.rows()) throw InvalidArgument("solve shape mismatch");
  Echelon e(m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    SparseVec row = m.row(i);
    if (!rhs[static_cast<std::size_t>(i)].is_zero())
      row.emplace_back(m.cols(), rhs[static_cast<std::size_t>(i)]);
    e.insert(std::move(row));
  }
  if (e.pivot_map().count(m.cols())) return std::nullopt;
  e.make_rref();
  std::vector<LaurentRat> x(static_cast<std::size_t>(m.cols()));
  for (const auto& [pc, pr] : e.pivot_map()) {
    // rref row reads  x_pc + sum(free terms) = aug entry;  free variables are 0
    x[static_cast<std::size_t>(pc)] = sv_get(e.rows()[static_cast<std::size_t>(pr)], m.cols());
  }
  return x;
}

/// Inverse of a square matrix, or nullopt if singular.
inline std::optional<ExactMatrix> inverse(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("inverse requires a square matrix");
  const int n = m.rows();
  Echelon e(2 * n);
  for (int i = 0; i < n; ++i) {
    SparseVec row = m.row(i);
    row.emplace_back(n + i, LaurentRat::one());
    e.insert(std::move(row));
  }
  for (const auto& [pc, pr] : e.pivot_map())
    if (pc >= n) return std::nullopt;
  if (e.rank() < n) return std::nullopt;
  e.make_rref();
  ExactMatrix inv(n, n);
  for (const auto& [pc, pr] : e.pivot_map()) {
    for (const auto& [c, v] : e.rows()[static_cast<std::size_t>(pr)])
      if (c >= n) inv.set(pc, c - n, v);
  }
  return inv;
}

/// Id^(⊗pos) ⊗ op ⊗ Id^(⊗(nlegs-pos-2)) where op acts on two adjacent legs of
/// dimension n each; multi-indices flatten big-endian (leg 0 most significant).
inline ExactMatrix embed_pair(const ExactMatrix& op, int pos, int nlegs, int n) {
  if (op.rows() != n * n || op.cols() != n * n) throw InvalidArgument("embed_pair needs an n^2 operator");
  if (pos < 0 || pos + 2 > nlegs) throw InvalidArgument("embed_pair position out of range");
  long long pre = 1, post = 1;
  for (int i = 0; i < pos; ++i) pre *= n;
  for (int i = pos + 2; i < nlegs; ++i) post *= n;
  const long long dim = pre * n * n * post;
  ExactMatrix r(static_cast<int>(dim), static_cast<int>(dim));
  for (long long a = 0; a < pre; ++a)
    for (int kl = 0; kl < n * n; ++kl) {
      const SparseVec& src = op.row(kl);
      if (src.empty()) continue;
      for (long long b = 0; b < post; ++b) {
        const long long rr = (a * n * n + kl) * post + b;
        SparseVec out;
        out.reserve(src.size());
        for (const auto& [ij, v] : src) out.emplace_back(static_cast<int>((a * n * n + ij) * post + b), v);
        r.set_row(static_cast<int>(rr), std::move(out));
      }
    }
  return r;
}

/// Contract legs (pos, pos+1) with a covector c of length n^2:
/// result maps n^nlegs -> n^(nlegs-2).
inline ExactMatrix contract_pair(const SparseVec& c, int pos, int nlegs, int n) {
  long long pre = 1, post = 1;
  for (int i = 0; i < pos; ++i) pre *= n;
  for (int i = pos + 2; i < nlegs; ++i) post *= n;
  ExactMatrix r(static_cast<int>(pre * post), static_cast<int>(pre * n * n * post));
  for (long long a = 0; a < pre; ++a)
    for (long long b = 0; b < post; ++b) {
      SparseVec out;
      out.reserve(c.size());
      for (const auto& [ij, v] : c) out.emplace_back(static_cast<int>((a * n * n + ij) * post + b), v);
      r.set_row(static_cast<int>(a * post + b), std::move(out));
    }
  return r;
}

}  // namespace qflag
