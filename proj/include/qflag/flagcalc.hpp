#pragma once
/**
 * @file flagcalc.hpp
 * @brief Quantized flag-manifold contexts and their covariant calculi.
 *
 * A FlagContext bundles everything attached to a marked Dynkin node s whose
 * simple root enters the highest root with coefficient one: the fundamental
 * module V = V(omega_s) with its basis rotated so the highest weight vector
 * sits last, the dual module, the braiding family on V and V*, and the
 * "first layer" of coordinates matched bijectively with the roots of the
 * parabolic radical.
 *
 * On top of a context this header builds
 *   - the quadratic coordinate rings of the module and dual generators,
 *   - the mixed algebra on both families with straightening rows that put
 *     every product v_i f_j into dual-first normal order, together with its
 *     canonical central degree-two element,
 *   - the four-leg relation tensors of the function algebra on the products
 *     z_ij = v_i f_j and of the first-order calculi,
 *   - the cotangent fiber presentations of the holomorphic, antiholomorphic
 *     and full calculi, whose graded dimensions are binomial, and
 *   - structural checks: braiding spectrum versus Weyl dimensions, graded
 *     q-commutation of the fiber generators, uniqueness and invariance of
 *     the volume form, and consistency of the global relation tensors with
 *     the fiber presentations.
 */

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "braiding.hpp"
#include "quadalg.hpp"

namespace qflag {

/// A mechanically verified dimension count came out wrong.
struct RankMismatch : std::domain_error {
  using std::domain_error::domain_error;
};

/// Which covariant calculus a fiber presentation describes.
enum class Calculus { del, delbar, d };

struct FlagContext {
  char type = 'A';
  int rank = 1;
  int s = 1;           // marked node, 1-based
  int multiplier = 1;  // deformation-lattice stretch factor

  std::shared_ptr<const RootSystem> rs;
  Parabolic par;
  Weight lam;  // omega_s

  std::shared_ptr<const WeightModule> V;   // basis rotated: highest weight last
  std::shared_ptr<const WeightModule> Vd;  // dual basis, index-aligned with V
  BraidDatum datum;
  RFamily fam;

  int N = 0;                  // dim V
  int M = 0;                  // first-layer size == number of radical roots
  std::vector<int> I1;        // ascending indices of the first-layer coordinates
  std::vector<PosRoot> beta;  // radical root attached to each first-layer index
};

namespace detail {

/// Reindex a module so that the distinguished highest weight vector is last;
/// the remaining vectors keep their relative order.
inline WeightModule rotate_highest_last(const WeightModule& W) {
  if (!W.hw) throw InvalidArgument("module has no distinguished highest weight vector");
  const int n = W.dim;
  std::vector<int> old_of;  // old index at each new position
  old_of.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if (i != *W.hw) old_of.push_back(i);
  old_of.push_back(*W.hw);
  std::vector<int> new_of(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) new_of[static_cast<std::size_t>(old_of[static_cast<std::size_t>(i)])] = i;

  WeightModule out;
  out.rs = W.rs;
  out.dim = n;
  out.hw = n - 1;
  out.labels.resize(static_cast<std::size_t>(n));
  out.wts.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.labels[static_cast<std::size_t>(i)] = "v" + std::to_string(i + 1);
    out.wts[static_cast<std::size_t>(i)] = W.wts[static_cast<std::size_t>(old_of[static_cast<std::size_t>(i)])];
  }
  if (!W.words.empty()) {
    out.words.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      out.words[static_cast<std::size_t>(i)] = W.words[static_cast<std::size_t>(old_of[static_cast<std::size_t>(i)])];
  }
  const auto conj = [&](const ExactMatrix& m) {
    ExactMatrix r(n, n);
    for (int a = 0; a < n; ++a) {
      SparseVec row;
      for (const auto& [c, v] : m.row(old_of[static_cast<std::size_t>(a)]))
        row.emplace_back(new_of[static_cast<std::size_t>(c)], v);
      std::sort(row.begin(), row.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      r.set_row(a, std::move(row));
    }
    return r;
  };
  for (std::size_t i = 0; i < W.E.size(); ++i) {
    out.E.push_back(conj(W.E[i]));
    out.F.push_back(conj(W.F[i]));
    out.K.push_back(conj(W.K[i]));
    out.Kinv.push_back(conj(W.Kinv[i]));
  }
  return out;
}

inline std::vector<SparseVec> nonzero_rows(const ExactMatrix& m) {
  std::vector<SparseVec> out;
  for (int r = 0; r < m.rows(); ++r)
    if (!m.row(r).empty()) out.push_back(m.row(r));
  return out;
}

/// Restrict a covector on pairs over n to the pairs drawn from `keep`,
/// reindexed over keep.size().
inline SparseVec restrict_pair_covector(const SparseVec& row, const std::vector<int>& keep, int n) {
  std::map<int, int> pos;
  for (std::size_t p = 0; p < keep.size(); ++p) pos[keep[p]] = static_cast<int>(p);
  const int m = static_cast<int>(keep.size());
  SparseVec out;
  for (const auto& [idx, val] : row) {
    const auto a = pos.find(idx / n), b = pos.find(idx % n);
    if (a != pos.end() && b != pos.end()) out.emplace_back(a->second * m + b->second, val);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

inline std::vector<SparseVec> restrict_pairs(const ExactMatrix& m, const std::vector<int>& keep, int n) {
  std::vector<SparseVec> out;
  for (int r = 0; r < m.rows(); ++r) {
    SparseVec s = restrict_pair_covector(m.row(r), keep, n);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

/// Reindex a relation row on pairs over n into a larger generator set of size
/// m, sending the pair (a, b) to (offA + a, offB + b).
inline SparseVec reindex_pairs(const SparseVec& r, int n, int offA, int offB, int m) {
  SparseVec out;
  for (const auto& [idx, val] : r) out.emplace_back((offA + idx / n) * m + (offB + idx % n), val);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

/// Keep the rows and columns listed in `keep`.  Sets *invariant to false if a
/// kept column feeds a dropped row, i.e. if the span of `keep` is not stable.
inline ExactMatrix restrict_square(const ExactMatrix& mat, const std::vector<int>& keep,
                                   bool* invariant) {
  std::map<int, int> pos;
  for (std::size_t p = 0; p < keep.size(); ++p) pos[keep[p]] = static_cast<int>(p);
  const int m = static_cast<int>(keep.size());
  ExactMatrix out(m, m);
  for (int r = 0; r < mat.rows(); ++r) {
    const auto pr = pos.find(r);
    if (pr == pos.end()) {
      for (const auto& [c, v] : mat.row(r))
        if (pos.count(c) && !v.is_zero()) *invariant = false;
      continue;
    }
    SparseVec row;
    for (const auto& [c, v] : mat.row(r)) {
      const auto pc = pos.find(c);
      if (pc != pos.end()) row.emplace_back(pc->second, v);
    }
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    out.set_row(pr->second, std::move(row));
  }
  return out;
}

inline ExactMatrix block_diag2(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r) out.set_row(r, a.row(r));
  for (int r = 0; r < b.rows(); ++r) {
    SparseVec row;
    for (const auto& [c, v] : b.row(r)) row.emplace_back(a.cols() + c, v);
    out.set_row(a.rows() + r, std::move(row));
  }
  return out;
}

}  // namespace detail

/**
 * Assemble the context of a marked Dynkin node.  Throws NotIrreducibleFlag
 * when the node's simple root has coefficient != 1 in the highest root, and
 * RankMismatch when the first layer of coordinate weights fails to match the
 * parabolic radical bijectively.
 */
inline FlagContext build_context(char type, int rank, int s, int multiplier = 1) {
  FlagContext ctx;
  ctx.type = type;
  ctx.rank = rank;
  ctx.s = s;
  ctx.multiplier = multiplier;
  ctx.rs = std::make_shared<const RootSystem>(RootSystem::build(type, rank, multiplier));
  ctx.par = parabolic(*ctx.rs, s);
  ctx.lam = ctx.rs->fundamental(s - 1);
  const auto raw = irrep_cached(ctx.rs, ctx.lam);
  ctx.V = std::make_shared<const WeightModule>(detail::rotate_highest_last(*raw));
  ctx.Vd = dual_module(*ctx.V);
  ctx.datum = full_datum(ctx.rs);
  const Weight as = ctx.rs->alpha(s - 1);
  ctx.fam = rmatrix_family(*ctx.V, *ctx.Vd, ctx.datum, ctx.rs->pairing(ctx.lam, ctx.lam),
                           ctx.rs->pairing(as, as));
  ctx.N = ctx.V->dim;

  // First layer: coordinates whose weight mu satisfies (lam, lam - alpha_s - mu) = 0.
  const Weight shifted = weight_sub(ctx.lam, as);
  for (int i = 0; i < ctx.N; ++i)
    if (ctx.rs->pairing(ctx.lam, weight_sub(shifted, ctx.V->wts[static_cast<std::size_t>(i)])) == 0)
      ctx.I1.push_back(i);
  ctx.M = static_cast<int>(ctx.I1.size());
  if (ctx.M != static_cast<int>(ctx.par.radical.size()))
    throw RankMismatch("first layer does not match the parabolic radical");
  for (int i : ctx.I1) {
    const Weight b = weight_sub(ctx.lam, ctx.V->wts[static_cast<std::size_t>(i)]);
    const PosRoot* hit = nullptr;
    for (const auto& r : ctx.par.radical)
      if (r.fw == b) {
        hit = &r;
        break;
      }
    if (hit == nullptr) throw RankMismatch("first-layer weight is not a radical root");
    ctx.beta.push_back(*hit);
  }
  return ctx;
}

/// Quadratic relation rows of the module generators v_i (covectors over N^2).
inline std::vector<SparseVec> coordinate_relations(const FlagContext& ctx) {
  return detail::nonzero_rows(ctx.fam.Phat);
}

/// Quadratic relation rows of the dual generators f_i.
inline std::vector<SparseVec> coordinate_relations_dual(const FlagContext& ctx) {
  return detail::nonzero_rows(ctx.fam.Pch);
}

inline QuadraticAlgebra coordinate_ring(const FlagContext& ctx) {
  return QuadraticAlgebra(ctx.N, coordinate_relations(ctx));
}

inline QuadraticAlgebra coordinate_ring_dual(const FlagContext& ctx) {
  return QuadraticAlgebra(ctx.N, coordinate_relations_dual(ctx));
}

/**
 * Mixed quadratic algebra on 2N generators: the dual family f_1..f_N in the
 * first block, the module family v_1..v_N in the second.  Relations are the
 * two coordinate-ring families plus one straightening row per product
 * v_i f_j, rewriting it into dual-first normal order through the inverse
 * braiding V* (x) V -> V (x) V*:
 *
 *   v_i f_j = q^{-(lam,lam)} sum_{k,l} rg[(i,j),(k,l)] f_k v_l.
 */
inline QuadraticAlgebra mixed_algebra(const FlagContext& ctx) {
  const int n = ctx.N, m = 2 * n;
  std::vector<SparseVec> rels;
  for (const auto& r : detail::nonzero_rows(ctx.fam.Pch)) rels.push_back(detail::reindex_pairs(r, n, 0, 0, m));
  for (const auto& r : detail::nonzero_rows(ctx.fam.Phat)) rels.push_back(detail::reindex_pairs(r, n, n, n, m));
  const LaurentRat neg_scale = LaurentRat::monomial(Int(-1), -static_cast<int>(ctx.fam.lamlam));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      SparseVec row;
      for (const auto& [src, val] : ctx.fam.rg.row(i * n + j))
        row.emplace_back((src / n) * m + (n + src % n), neg_scale * val);
      row.emplace_back((n + i) * m + j, LaurentRat::one());
      std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      rels.push_back(std::move(row));
    }
  return QuadraticAlgebra(m, std::move(rels));
}

/**
 * The canonical degree-two element q^{(lam,lam)} sum C_{kl} v_k f_l of the
 * mixed algebra; its counit value is 1 and it commutes with every generator.
 */
inline SparseVec mixed_central_element(const FlagContext& ctx) {
  const int n = ctx.N, m = 2 * n;
  const LaurentRat scale = LaurentRat::q_pow(static_cast<int>(ctx.fam.lamlam));
  SparseVec c;
  for (const auto& [idx, val] : ctx.fam.C) c.emplace_back((n + idx / n) * m + idx % n, scale * val);
  std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return c;
}

/**
 * Four-leg relation tensors of the function algebra on the products
 * z_ij = v_i f_j.  Rows are covectors over N^4 (legs V, V*, V, V*, big-endian
 * flattening) that annihilate every monomial z_np z_tl of the function
 * algebra.  Both families compose the inverse braiding on the inner legs
 * with an eigenvalue projector on an outer pair.
 */
inline ExactMatrix z_relation_family_one(const FlagContext& ctx) {
  return embed_pair(ctx.fam.Phat, 0, 4, ctx.N) * embed_pair(ctx.fam.rg, 1, 4, ctx.N);
}

inline ExactMatrix z_relation_family_two(const FlagContext& ctx) {
  return embed_pair(ctx.fam.Pch, 2, 4, ctx.N) * embed_pair(ctx.fam.rg, 1, 4, ctx.N);
}

/**
 * Relation tensors of the first-order calculi.  The wedge families encode the
 * degree-two relations among holomorphic (respectively antiholomorphic)
 * differential pairs; cdz is the differential of the canonical unit element,
 * a covector on a single differential pair.
 */
struct FodcTensors {
  ExactMatrix wedge_del_1, wedge_del_2;
  ExactMatrix wedge_delbar_1, wedge_delbar_2;
  SparseVec cdz;
};

inline FodcTensors fodc_relation_tensors(const FlagContext& ctx) {
  FodcTensors t;
  const int n = ctx.N;
  const ExactMatrix mix = embed_pair(ctx.fam.rg, 1, 4, n);
  t.wedge_del_1 = embed_pair(ctx.fam.Qhat, 0, 4, n) * mix;
  t.wedge_del_2 = embed_pair(ctx.fam.Pch, 2, 4, n) * mix;
  t.wedge_delbar_1 = embed_pair(ctx.fam.Phat, 0, 4, n) * mix;
  t.wedge_delbar_2 = embed_pair(ctx.fam.Qch, 2, 4, n) * mix;
  const LaurentRat scale = LaurentRat::q_pow(static_cast<int>(ctx.fam.lamlam));
  for (const auto& [idx, val] : ctx.fam.C) t.cdz.emplace_back(idx, scale * val);
  return t;
}

/**
 * Cotangent-fiber image of a covector on one coordinate pair: the class of
 * z_kl in the holomorphic cotangent space is x_k when l = N and k lies in the
 * first layer (zero otherwise); the antiholomorphic class is y_l when k = N
 * and l lies in the first layer.
 */
inline SparseVec fiber_image_single(const FlagContext& ctx, const SparseVec& cov, bool holomorphic) {
  const int n = ctx.N, last = n - 1;
  std::map<int, int> pos;
  for (std::size_t p = 0; p < ctx.I1.size(); ++p) pos[ctx.I1[p]] = static_cast<int>(p);
  SparseVec out;
  for (const auto& [idx, val] : cov) {
    const int k = idx / n, l = idx % n;
    if (holomorphic) {
      if (l == last && pos.count(k)) out.emplace_back(pos[k], val);
    } else {
      if (k == last && pos.count(l)) out.emplace_back(pos[l], val);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

/// Fiber image of a four-leg covector with both pairs taken as differentials.
inline SparseVec fiber_image(const FlagContext& ctx, const SparseVec& row, bool holomorphic) {
  const int n = ctx.N, m = ctx.M, last = n - 1;
  std::map<int, int> pos;
  for (std::size_t p = 0; p < ctx.I1.size(); ++p) pos[ctx.I1[p]] = static_cast<int>(p);
  SparseVec out;
  for (const auto& [idx, val] : row) {
    const int d = idx % n, c = (idx / n) % n, b = (idx / (n * n)) % n, a = idx / (n * n * n);
    if (holomorphic) {
      if (b == last && d == last && pos.count(a) && pos.count(c))
        out.emplace_back(pos[a] * m + pos[c], val);
    } else {
      if (a == last && c == last && pos.count(b) && pos.count(d))
        out.emplace_back(pos[b] * m + pos[d], val);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

/**
 * Relation families of the cotangent fiber.  sdel and sdelbar are the
 * second-eigenvalue projector rows restricted to first-layer pairs (each of
 * rank M(M+1)/2, enforced); cross holds one straightening row per pair
 * (y_i, x_j) over the 2M mixed generators x_1..x_M, y_1..y_M:
 *
 *   y_i x_j + q^{(lam,lam)-(alpha_s,alpha_s)} sum_{k,l} rgm[(i,j),(k,l)] x_k y_l,
 *
 * the sum running over first-layer pairs.
 */
struct FiberData {
  std::vector<SparseVec> sdel;
  std::vector<SparseVec> sdelbar;
  std::vector<SparseVec> cross;
};

inline FiberData fiber_relations(const FlagContext& ctx) {
  FiberData fd;
  fd.sdel = detail::restrict_pairs(ctx.fam.Qhat, ctx.I1, ctx.N);
  fd.sdelbar = detail::restrict_pairs(ctx.fam.Qch, ctx.I1, ctx.N);
  const int m = ctx.M;
  const int want = m * (m + 1) / 2;
  {
    Echelon e(m * m);
    for (const auto& r : fd.sdel) e.insert(r);
    if (e.rank() != want) throw RankMismatch("holomorphic fiber relations have unexpected rank");
  }
  {
    Echelon e(m * m);
    for (const auto& r : fd.sdelbar) e.insert(r);
    if (e.rank() != want) throw RankMismatch("antiholomorphic fiber relations have unexpected rank");
  }
  std::map<int, int> pos;
  for (std::size_t p = 0; p < ctx.I1.size(); ++p) pos[ctx.I1[p]] = static_cast<int>(p);
  const int g = 2 * m;
  const LaurentRat scale = LaurentRat::q_pow(static_cast<int>(ctx.fam.qexp));
  for (int pi = 0; pi < m; ++pi)
    for (int pj = 0; pj < m; ++pj) {
      SparseVec row;
      const SparseVec& src = ctx.fam.rgm.row(ctx.I1[static_cast<std::size_t>(pi)] * ctx.N +
                                             ctx.I1[static_cast<std::size_t>(pj)]);
      for (const auto& [sidx, val] : src) {
        const auto pk = pos.find(sidx / ctx.N), pl = pos.find(sidx % ctx.N);
        if (pk != pos.end() && pl != pos.end())
          row.emplace_back(pk->second * g + (m + pl->second), scale * val);
      }
      row.emplace_back((m + pi) * g + pj, LaurentRat::one());
      std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      fd.cross.push_back(std::move(row));
    }
  return fd;
}

/**
 * Quadratic presentation of a cotangent fiber.  The holomorphic and
 * antiholomorphic fibers have M generators each; the full calculus has the
 * 2M generators x_1..x_M, y_1..y_M.  Every presentation carries the height
 * filtration (generator value = -height of its radical root) used by the
 * graded commutation checks.
 */
inline QuadraticAlgebra fiber_presentation(const FlagContext& ctx, Calculus c) {
  FiberData fd = fiber_relations(ctx);
  const int m = ctx.M;
  std::vector<int> ht(static_cast<std::size_t>(m));
  for (int p = 0; p < m; ++p) ht[static_cast<std::size_t>(p)] = -ctx.beta[static_cast<std::size_t>(p)].height;
  if (c == Calculus::del || c == Calculus::delbar) {
    QuadraticAlgebra alg(m, c == Calculus::del ? std::move(fd.sdel) : std::move(fd.sdelbar));
    alg.set_filtration(ht);
    return alg;
  }
  const int g = 2 * m;
  std::vector<SparseVec> rels;
  for (const auto& r : fd.sdel) rels.push_back(detail::reindex_pairs(r, m, 0, 0, g));
  for (const auto& r : fd.sdelbar) rels.push_back(detail::reindex_pairs(r, m, m, m, g));
  for (auto& r : fd.cross) rels.push_back(std::move(r));
  QuadraticAlgebra alg(g, std::move(rels));
  std::vector<int> ht2 = ht;
  ht2.insert(ht2.end(), ht.begin(), ht.end());
  alg.set_filtration(ht2);
  return alg;
}

/// Graded dimensions of a fiber calculus; defaults to one degree past the top.
inline DimensionReport derham_dims(const FlagContext& ctx, Calculus c, int kmax = -1) {
  QuadraticAlgebra alg = fiber_presentation(ctx, c);
  if (kmax < 0) kmax = (c == Calculus::d) ? 2 * ctx.M + 1 : ctx.M + 1;
  return dimension_report(alg, kmax);
}

/**
 * Kernel dimensions of the two eigenvalue projectors on V (x) V match the
 * Weyl dimensions of V(2 lam) and V(2 lam - alpha_s), and the same numbers
 * appear as isotypic multiplicities of the tensor square.
 */
inline CheckReport spectrum_check(const FlagContext& ctx) {
  CheckReport rep;
  const auto fail = [&rep](std::string w) {
    rep.pass = false;
    if (rep.witness.empty()) rep.witness = std::move(w);
  };
  const Weight two_lam = weight_add(ctx.lam, ctx.lam);
  const Weight sub = weight_sub(two_lam, ctx.rs->alpha(ctx.s - 1));
  const Int d1 = weyl_dim(*ctx.rs, two_lam);
  const Int d2 = weyl_dim(*ctx.rs, sub);
  if (Int(static_cast<long long>(kernel_basis(ctx.fam.Phat).size())) != d1)
    fail("top eigenspace dimension disagrees with the Weyl formula");
  if (Int(static_cast<long long>(kernel_basis(ctx.fam.Qhat).size())) != d2)
    fail("second eigenspace dimension disagrees with the Weyl formula");
  const auto T = tensor(*ctx.V, *ctx.V);
  Int seen1 = 0, seen2 = 0;
  for (const auto& comp : isotypic_decomposition(*T)) {
    if (comp.mu == two_lam) seen1 += comp.irrep->dim;
    if (comp.mu == sub) seen2 += comp.irrep->dim;
  }
  if (seen1 != d1) fail("tensor square lacks the expected top component");
  if (seen2 != d2) fail("tensor square lacks the expected second component");
  return rep;
}

/**
 * Graded q-commutation of the fiber generators: with beta, gamma the radical
 * roots of x_p, x_r (and of the mirror generators y_p, y_r),
 *
 *   x_beta x_gamma + q^{-(beta,gamma)} x_gamma x_beta   (ht gamma <= ht beta)
 *   y_beta y_gamma + q^{+(beta,gamma)} y_gamma y_beta   (ht gamma <= ht beta)
 *   y_beta x_gamma + q^{-(beta,gamma)} x_gamma y_beta   (all pairs)
 *
 * lie in the relation span modulo products of strictly lower height pairs.
 */
inline CheckReport graded_commutation_check(const FlagContext& ctx) {
  CheckReport rep;
  const auto fail = [&rep](std::string w) {
    rep.pass = false;
    if (rep.witness.empty()) rep.witness = std::move(w);
  };
  QuadraticAlgebra alg = fiber_presentation(ctx, Calculus::d);
  const int m = ctx.M, g = 2 * m;
  for (int p = 0; p < m; ++p)
    for (int r = 0; r < m; ++r) {
      const long long br = ctx.rs->pairing(ctx.beta[static_cast<std::size_t>(p)].fw,
                                           ctx.beta[static_cast<std::size_t>(r)].fw);
      const std::string tag = "(" + std::to_string(p + 1) + "," + std::to_string(r + 1) + ")";
      if (ctx.beta[static_cast<std::size_t>(r)].height <= ctx.beta[static_cast<std::size_t>(p)].height) {
        SparseVec xx{{p * g + r, LaurentRat::one()}, {r * g + p, LaurentRat::q_pow(static_cast<int>(-br))}};
        std::sort(xx.begin(), xx.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        if (!alg.filtered_relation_check(xx)) fail("x-x commutation fails at " + tag);
        SparseVec yy{{(m + p) * g + (m + r), LaurentRat::one()},
                     {(m + r) * g + (m + p), LaurentRat::q_pow(static_cast<int>(br))}};
        std::sort(yy.begin(), yy.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        if (!alg.filtered_relation_check(yy)) fail("y-y commutation fails at " + tag);
      }
      SparseVec yx{{(m + p) * g + r, LaurentRat::one()},
                   {r * g + (m + p), LaurentRat::q_pow(static_cast<int>(-br))}};
      std::sort(yx.begin(), yx.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      if (!alg.filtered_relation_check(yx)) fail("y-x commutation fails at " + tag);
    }
  return rep;
}

/**
 * The top of the full fiber calculus is a line in degree 2M (and nothing
 * above), of weight zero, annihilated by every Levi raising and lowering
 * operator; the top of the holomorphic fiber is a line of nonzero weight.
 */
inline CheckReport volume_form_check(const FlagContext& ctx) {
  CheckReport rep;
  const auto fail = [&rep](std::string w) {
    rep.pass = false;
    if (rep.witness.empty()) rep.witness = std::move(w);
  };
  QuadraticAlgebra alg = fiber_presentation(ctx, Calculus::d);
  const int m = ctx.M, g = 2 * m, top = 2 * m;
  if (alg.dim(top) != 1) {
    fail("full fiber top degree is not a line");
    return rep;
  }
  if (alg.dim(top + 1) != 0) fail("full fiber does not vanish above the top degree");

  // fiber weights are taken at the classical point: the generator for the
  // first-layer vector of weight lam - beta carries the isotropy weight -beta
  const auto kdiag = [&](int node, bool both) {
    const int size = both ? g : m;
    ExactMatrix kg(size, size);
    for (int p = 0; p < m; ++p) {
      const Weight rel = weight_sub(ctx.V->wts[static_cast<std::size_t>(ctx.I1[static_cast<std::size_t>(p)])],
                                    ctx.lam);
      const long long e = ctx.rs->pairing(rel, ctx.rs->alpha(node));
      kg.set_row(p, {{p, LaurentRat::q_pow(static_cast<int>(-e))}});
      if (both) kg.set_row(m + p, {{m + p, LaurentRat::q_pow(static_cast<int>(e))}});
    }
    return kg;
  };

  for (int node = 0; node < ctx.rank; ++node) {
    const auto act = induced_grouplike(alg, kdiag(node, true), top);
    if (!(act[static_cast<std::size_t>(top)] == ExactMatrix::identity(1))) {
      fail("top form carries a nonzero weight");
      break;
    }
  }

  // The relation span of the full fiber is a row space of intertwiners, so it
  // is stable under the dual action with the opposite coproduct: the
  // holomorphic generators transform in the restricted dual of the first
  // layer and the antiholomorphic ones in its double dual.
  const auto vdd = dual_module(*ctx.Vd);
  const ExactMatrix id_g = ExactMatrix::identity(g);
  for (const int node : ctx.par.levi) {
    bool inv = true;
    const ExactMatrix ex = detail::restrict_square(ctx.Vd->E[static_cast<std::size_t>(node)], ctx.I1, &inv);
    const ExactMatrix exd = detail::restrict_square(vdd->E[static_cast<std::size_t>(node)], ctx.I1, &inv);
    const ExactMatrix fx = detail::restrict_square(ctx.Vd->F[static_cast<std::size_t>(node)], ctx.I1, &inv);
    const ExactMatrix fxd = detail::restrict_square(vdd->F[static_cast<std::size_t>(node)], ctx.I1, &inv);
    const ExactMatrix kx = detail::restrict_square(ctx.Vd->K[static_cast<std::size_t>(node)], ctx.I1, &inv);
    const ExactMatrix kxd = detail::restrict_square(vdd->K[static_cast<std::size_t>(node)], ctx.I1, &inv);
    const ExactMatrix kix = detail::restrict_square(ctx.Vd->Kinv[static_cast<std::size_t>(node)], ctx.I1, &inv);
    const ExactMatrix kixd = detail::restrict_square(vdd->Kinv[static_cast<std::size_t>(node)], ctx.I1, &inv);
    if (!inv) {
      fail("first layer is not preserved by the Levi action");
      continue;
    }
    const auto acte = induced_derivation(alg, detail::block_diag2(ex, exd),
                                         detail::block_diag2(kx, kxd), id_g, top);
    if (!acte[static_cast<std::size_t>(top)].is_zero())
      fail("a Levi raising operator does not annihilate the top form");
    const auto actf = induced_derivation(alg, detail::block_diag2(fx, fxd), id_g,
                                         detail::block_diag2(kix, kixd), top);
    if (!actf[static_cast<std::size_t>(top)].is_zero())
      fail("a Levi lowering operator does not annihilate the top form");
  }

  QuadraticAlgebra hol = fiber_presentation(ctx, Calculus::del);
  if (hol.dim(m) != 1) {
    fail("holomorphic fiber top degree is not a line");
    return rep;
  }
  if (hol.dim(m + 1) != 0) fail("holomorphic fiber does not vanish above the top degree");
  bool nonzero = false;
  for (int node = 0; node < ctx.rank && !nonzero; ++node) {
    const auto act = induced_grouplike(hol, kdiag(node, false), m);
    if (!(act[static_cast<std::size_t>(m)] == ExactMatrix::identity(1))) nonzero = true;
  }
  if (!nonzero) fail("holomorphic top form carries weight zero");
  return rep;
}

/**
 * The global wedge families restrict on the cotangent fiber to exactly the
 * fiber relation spans, and the differential of the canonical unit element
 * vanishes there.
 */
inline CheckReport fodc_fiber_check(const FlagContext& ctx) {
  CheckReport rep;
  const auto fail = [&rep](std::string w) {
    rep.pass = false;
    if (rep.witness.empty()) rep.witness = std::move(w);
  };
  const FodcTensors t = fodc_relation_tensors(ctx);
  const FiberData fd = fiber_relations(ctx);
  const int mm = ctx.M * ctx.M;

  const auto span_match = [&](const std::vector<SparseVec>& target_rows,
                              const ExactMatrix& fam1, const ExactMatrix& fam2, bool holomorphic,
                              const std::string& side) {
    Echelon target(mm);
    for (const auto& r : target_rows) target.insert(r);
    Echelon image(mm);
    for (const ExactMatrix* famp : {&fam1, &fam2})
      for (int r = 0; r < famp->rows(); ++r) {
        SparseVec im = fiber_image(ctx, famp->row(r), holomorphic);
        if (im.empty()) continue;
        if (!target.in_span(im)) {
          fail("a " + side + " wedge relation leaves the fiber relation span");
          return;
        }
        image.insert(std::move(im));
      }
    if (image.rank() != target.rank())
      fail("the " + side + " wedge relations do not span the fiber relations");
  };
  span_match(fd.sdel, t.wedge_del_1, t.wedge_del_2, true, "holomorphic");
  span_match(fd.sdelbar, t.wedge_delbar_1, t.wedge_delbar_2, false, "antiholomorphic");

  if (!fiber_image_single(ctx, t.cdz, true).empty() ||
      !fiber_image_single(ctx, t.cdz, false).empty())
    fail("the differential of the unit element survives on the fiber");
  return rep;
}

/// The canonical element commutes with every mixed generator in degree three.
inline CheckReport mixed_centrality_check(const FlagContext& ctx) {
  CheckReport rep;
  QuadraticAlgebra alg = mixed_algebra(ctx);
  const SparseVec c = mixed_central_element(ctx);
  for (int gen = 0; gen < 2 * ctx.N; ++gen)
    if (!alg.central_degree3_check(c, gen)) {
      rep.pass = false;
      rep.witness = "generator " + std::to_string(gen + 1) +
                    " does not commute with the canonical element";
      break;
    }
  return rep;
}

}  // namespace qflag
