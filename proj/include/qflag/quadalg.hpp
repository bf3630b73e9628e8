/**
 * @file quadalg.hpp
 * @brief Graded engine for quadratic algebras over the Laurent field.
 *
 * A quadratic algebra is presented by n generators and a set of degree-two
 * relations (vectors over the n^2 pair coordinates, (a,b) -> a*n + b).  Graded
 * components are built inductively: A_k = (A_{k-1} (x) V) / U_k where U_k is
 * spanned by the relations multiplied into the last two tensor legs,
 *   U_k = span{ sum_{u,v} c_{uv} (mul_{k-1}[u] a) (x) e_v : a in A_{k-2} }.
 * The basis of A_k consists of the free (non-pivot) columns of U_k in
 * leftmost-pivot reduced echelon form, so bases and dimensions are canonical
 * and reruns are deterministic.
 */

#pragma once

#include "linalg.hpp"

#include <array>
#include <limits>

namespace qflag {

struct DegreeMismatch : std::domain_error {
  explicit DegreeMismatch(const std::string& m) : std::domain_error(m) {}
};
struct FiltrationUnset : std::logic_error {
  FiltrationUnset() : std::logic_error("generator filtration has not been set") {}
};

class QuadraticAlgebra {
 public:
  QuadraticAlgebra(int n, std::vector<SparseVec> rels) : n_(n), rels_(std::move(rels)) {
    if (n <= 0) throw InvalidArgument("quadratic algebra needs at least one generator");
    for (const auto& r : rels_)
      for (const auto& [i, v] : r) {
        (void)v;
        if (i < 0 || i >= n * n) throw DegreeMismatch("relation coordinate out of range");
      }
    Level l0;
    l0.dim = 1;
    levels_.push_back(std::move(l0));
  }

  int gens() const { return n_; }
  const std::vector<SparseVec>& relations() const { return rels_; }

  int dim(int k) {
    ensure(k);
    return levels_[static_cast<std::size_t>(k)].dim;
  }

  /// Right multiplication by generator g: A_{k-1} -> A_k.
  const ExactMatrix& mul(int k, int g) {
    if (k < 1 || g < 0 || g >= n_) throw InvalidArgument("mul needs k >= 1 and a valid generator");
    ensure(k);
    return levels_[static_cast<std::size_t>(k)].mul[static_cast<std::size_t>(g)];
  }

  /// Quotient map A_{k-1} (x) V -> A_k (columns flattened a*n + v).
  const ExactMatrix& qmap(int k) {
    if (k < 1) throw InvalidArgument("qmap needs k >= 1");
    ensure(k);
    return levels_[static_cast<std::size_t>(k)].qmap;
  }

  /// Section columns: basis element m of A_k lifts to e_{section(k)[m]}.
  const std::vector<int>& section(int k) {
    if (k < 1) throw InvalidArgument("section needs k >= 1");
    ensure(k);
    return levels_[static_cast<std::size_t>(k)].free;
  }

  /// Image of a degree-k tensor (coordinates over n^k, big-endian legs) in A_k.
  std::vector<LaurentRat> pi(int k, const SparseVec& tensor) {
    if (k < 0) throw InvalidArgument("negative degree");
    ensure(k);
    long long total = 1;
    for (int i = 0; i < k; ++i) {
      total *= n_;
      if (total > (1LL << 30)) throw DegreeMismatch("tensor degree too large to address");
    }
    std::vector<LaurentRat> out(static_cast<std::size_t>(dim(k)));
    std::vector<int> digits(static_cast<std::size_t>(k));
    for (const auto& [idx, c] : tensor) {
      if (idx < 0 || idx >= total) throw DegreeMismatch("tensor coordinate out of range");
      long long rest = idx;
      for (int d = k - 1; d >= 0; --d) {
        digits[static_cast<std::size_t>(d)] = static_cast<int>(rest % n_);
        rest /= n_;
      }
      std::vector<LaurentRat> cur{LaurentRat::one()};
      for (int d = 0; d < k; ++d) {
        const ExactMatrix& m = mul(d + 1, digits[static_cast<std::size_t>(d)]);
        std::vector<LaurentRat> nxt(static_cast<std::size_t>(m.rows()));
        for (int r = 0; r < m.rows(); ++r)
          for (const auto& [cc, v] : m.row(r)) {
            const LaurentRat& x = cur[static_cast<std::size_t>(cc)];
            if (!x.is_zero()) nxt[static_cast<std::size_t>(r)] += v * x;
          }
        cur = std::move(nxt);
      }
      for (std::size_t r = 0; r < cur.size(); ++r)
        if (!cur[r].is_zero()) out[r] += c * cur[r];
    }
    return out;
  }

  bool pi_zero(int k, const SparseVec& tensor) {
    for (const auto& v : pi(k, tensor))
      if (!v.is_zero()) return false;
    return true;
  }

  /// Membership of a degree-2 tensor in the linear span of the relations.
  bool in_relation_span(const SparseVec& t) {
    if (!rel_span_) {
      rel_span_.emplace(n_ * n_);
      for (const auto& r : rels_) rel_span_->insert(r);
    }
    return rel_span_->in_span(t);
  }

  /// Attach a per-generator filtration value (e.g. minus a height).
  void set_filtration(std::vector<int> vals) {
    if (static_cast<int>(vals.size()) != n_) throw InvalidArgument("filtration size mismatch");
    filt_ = std::move(vals);
  }

  /**
   * Check that t lies in span(relations) + span{ e_a (x) e_b of strictly lower
   * filtration }, where the filtration value of a pair is the ascending-sorted
   * pair of generator values compared lexicographically, and the target value
   * is the maximum over the support of t.  Throws FiltrationUnset if no
   * filtration was attached.
   */
  bool filtered_relation_check(const SparseVec& t) {
    if (!filt_) throw FiltrationUnset();
    if (t.empty()) return true;
    auto value = [&](int a, int b) {
      std::array<int, 2> v{(*filt_)[static_cast<std::size_t>(a)], (*filt_)[static_cast<std::size_t>(b)]};
      if (v[0] > v[1]) std::swap(v[0], v[1]);
      return v;
    };
    std::array<int, 2> target{std::numeric_limits<int>::min(), std::numeric_limits<int>::min()};
    for (const auto& [idx, c] : t) {
      (void)c;
      target = std::max(target, value(idx / n_, idx % n_));
    }
    Echelon e(n_ * n_);
    for (const auto& r : rels_) e.insert(r);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (value(a, b) < target) e.insert(sv_unit(a * n_ + b));
    return e.in_span(t);
  }

  /// Does the degree-2 element c commute with generator g in degree 3?
  bool central_degree3_check(const SparseVec& c, int g) {
    if (g < 0 || g >= n_) throw InvalidArgument("generator out of range");
    SparseVec t;
    for (const auto& [ab, v] : c) t.emplace_back(ab * n_ + g, v);
    SparseVec s;
    for (const auto& [ab, v] : c) s.emplace_back(g * n_ * n_ + ab, v);
    std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return pi_zero(3, sv_combine(LaurentRat::one(), t, -LaurentRat::one(), s));
  }

 private:
  struct Level {
    int dim = 0;
    std::vector<int> free;
    ExactMatrix qmap;
    std::vector<ExactMatrix> mul;
  };

  void ensure(int k) {
    while (static_cast<int>(levels_.size()) <= k) grow();
  }

  void grow() {
    const int k = static_cast<int>(levels_.size());
    const Level& prev = levels_[static_cast<std::size_t>(k - 1)];
    const int pn = prev.dim * n_;
    Echelon ech(pn);
    if (k >= 2) {
      const Level& pprev = levels_[static_cast<std::size_t>(k - 2)];
      std::vector<std::vector<SparseVec>> mulcols;
      mulcols.reserve(static_cast<std::size_t>(n_));
      for (int u = 0; u < n_; ++u) {
        std::vector<SparseVec> cols(static_cast<std::size_t>(pprev.dim));
        const ExactMatrix& m = prev.mul[static_cast<std::size_t>(u)];
        for (int r = 0; r < m.rows(); ++r)
          for (const auto& [c, v] : m.row(r)) cols[static_cast<std::size_t>(c)].emplace_back(r, v);
        mulcols.push_back(std::move(cols));
      }
      std::vector<LaurentRat> buf(static_cast<std::size_t>(pn));
      std::vector<int> touched;
      for (int a = 0; a < pprev.dim; ++a)
        for (const auto& r : rels_) {
          touched.clear();
          for (const auto& [uv, c] : r) {
            const int u = uv / n_, v = uv % n_;
            for (const auto& [row, mv] : mulcols[static_cast<std::size_t>(u)][static_cast<std::size_t>(a)]) {
              const int pos = row * n_ + v;
              if (buf[static_cast<std::size_t>(pos)].is_zero()) touched.push_back(pos);
              buf[static_cast<std::size_t>(pos)] += c * mv;
            }
          }
          std::sort(touched.begin(), touched.end());
          SparseVec sv;
          for (int pos : touched) {
            auto& slot = buf[static_cast<std::size_t>(pos)];
            if (!slot.is_zero()) sv.emplace_back(pos, std::move(slot));
            slot = LaurentRat::zero();
          }
          if (!sv.empty()) ech.insert(std::move(sv));
        }
    }
    ech.make_rref();
    Level L;
    L.free = ech.free_cols();
    L.dim = static_cast<int>(L.free.size());
    L.qmap = ExactMatrix(L.dim, pn);
    std::vector<int> qidx(static_cast<std::size_t>(pn), -1);
    for (int m = 0; m < L.dim; ++m) {
      qidx[static_cast<std::size_t>(L.free[static_cast<std::size_t>(m)])] = m;
      L.qmap.set(m, L.free[static_cast<std::size_t>(m)], LaurentRat::one());
    }
    for (const auto& [pc, pr] : ech.pivot_map())
      for (const auto& [c, v] : ech.rows()[static_cast<std::size_t>(pr)])
        if (c != pc) L.qmap.set(qidx[static_cast<std::size_t>(c)], pc, -v);
    L.mul.assign(static_cast<std::size_t>(n_), ExactMatrix(L.dim, prev.dim));
    for (int r = 0; r < L.dim; ++r)
      for (const auto& [c, v] : L.qmap.row(r)) L.mul[static_cast<std::size_t>(c % n_)].set(r, c / n_, v);
    levels_.push_back(std::move(L));
  }

  int n_;
  std::vector<SparseVec> rels_;
  std::vector<Level> levels_;
  std::optional<Echelon> rel_span_;
  std::optional<std::vector<int>> filt_;
};

namespace detail {

inline ExactMatrix section_matrix(const std::vector<int>& free, int pn) {
  ExactMatrix s(pn, static_cast<int>(free.size()));
  for (int m = 0; m < static_cast<int>(free.size()); ++m)
    s.set(free[static_cast<std::size_t>(m)], m, LaurentRat::one());
  return s;
}

}  // namespace detail

/**
 * Induced action of a grouplike operator: act_k(class(a (x) v)) =
 * class(act_{k-1} a (x) K v).  Verifies at each degree that the lifted action
 * descends through the quotient; throws InvalidArgument otherwise.  Returns
 * act[0..kmax].
 */
inline std::vector<ExactMatrix> induced_grouplike(QuadraticAlgebra& alg, const ExactMatrix& K,
                                                  int kmax) {
  const int n = alg.gens();
  if (K.rows() != n || K.cols() != n) throw InvalidArgument("generator action has wrong shape");
  std::vector<ExactMatrix> act;
  act.push_back(ExactMatrix::identity(1));
  for (int k = 1; k <= kmax; ++k) {
    const ExactMatrix L = ExactMatrix::kron(act.back(), K);
    const ExactMatrix& Q = alg.qmap(k);
    const ExactMatrix S = detail::section_matrix(alg.section(k), alg.dim(k - 1) * n);
    ExactMatrix a = Q * L * S;
    if (!(a * Q == Q * L)) throw InvalidArgument("grouplike action does not descend to the quotient");
    act.push_back(std::move(a));
  }
  return act;
}

/**
 * Induced action of a twisted derivation: act_k(class(a (x) v)) =
 * class(act_{k-1} a (x) KR v) + class(KL_{k-1} a (x) X v), where KL_{k-1} is
 * the induced grouplike action of KL.  Covers both coproduct shapes
 * (X (x) KR + 1 (x) X with KL = id, and X (x) 1 + KL (x) X with KR = id).
 * Verifies descent at each degree.
 */
inline std::vector<ExactMatrix> induced_derivation(QuadraticAlgebra& alg, const ExactMatrix& X,
                                                   const ExactMatrix& KL, const ExactMatrix& KR,
                                                   int kmax) {
  const int n = alg.gens();
  if (X.rows() != n || X.cols() != n || KL.rows() != n || KR.rows() != n)
    throw InvalidArgument("generator action has wrong shape");
  const auto kl = induced_grouplike(alg, KL, kmax > 0 ? kmax - 1 : 0);
  std::vector<ExactMatrix> act;
  act.push_back(ExactMatrix(1, 1));
  for (int k = 1; k <= kmax; ++k) {
    const ExactMatrix L = ExactMatrix::kron(act.back(), KR) +
                          ExactMatrix::kron(kl[static_cast<std::size_t>(k - 1)], X);
    const ExactMatrix& Q = alg.qmap(k);
    const ExactMatrix S = detail::section_matrix(alg.section(k), alg.dim(k - 1) * n);
    ExactMatrix a = Q * L * S;
    if (!(a * Q == Q * L)) throw InvalidArgument("derivation does not descend to the quotient");
    act.push_back(std::move(a));
  }
  return act;
}

struct DimensionReport {
  std::vector<long long> dims;  // dims[k] = dim of the degree-k component

  std::string render() const {
    std::string s;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      s += std::to_string(k);
      s += '\t';
      s += std::to_string(dims[k]);
      s += '\n';
    }
    return s;
  }
};

inline DimensionReport dimension_report(QuadraticAlgebra& alg, int kmax) {
  DimensionReport r;
  for (int k = 0; k <= kmax; ++k) r.dims.push_back(alg.dim(k));
  return r;
}

}  // namespace qflag
