/**
 * @file coeffmodel.hpp
 * @brief Exact model of the algebra spanned by matrix coefficients.
 *
 * A matrix coefficient is a functional u -> f(u x) on the quantized enveloping
 * algebra, stored as the triple (module, covector f, vector x).  Finite sums
 * of such triples form an algebra: the product of two coefficients is the
 * coefficient of the tensor product module with tensored data.  Equality of
 * two sums is decided through a canonical form, obtained by splitting every
 * summand module into canonical irreducibles and accumulating the pushed
 * (f, x) pairs per dominant weight; two functionals agree on the whole
 * enveloping algebra exactly when their canonical forms coincide.
 *
 * On top of the model sit the product generators z_ij of the quantized flag
 * manifold and the verification that their quadratic relations, the
 * straightening identity and the inhomogeneous normalization hold as honest
 * identities of functionals.
 */

#pragma once

#include "flagcalc.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace qflag {

/// One matrix coefficient u -> f(u x) on a fixed module.
struct MCSummand {
  std::shared_ptr<const WeightModule> W;
  SparseVec f;  // covector on W, coordinates in the basis dual to W's
  SparseVec x;  // vector in W
};

/// Canonical-form block: the component of the functional supported on the
/// canonical irreducible of highest weight mu.  mat(a, b) is the coefficient
/// of the coefficient-functional pair (dual basis a, basis b).
struct CanonBlock {
  std::shared_ptr<const WeightModule> irrep;
  ExactMatrix mat;
};

using CanonForm = std::map<Weight, CanonBlock>;

namespace detail {

/// Tensor product modules, memoized per operand pair.  The operands are kept
/// alive inside the cache so pointer keys can never be reused.
inline std::shared_ptr<const WeightModule> tensor_cached(const std::shared_ptr<const WeightModule>& a,
                                                         const std::shared_ptr<const WeightModule>& b) {
  struct Entry {
    std::shared_ptr<const WeightModule> a, b, prod;
  };
  static std::mutex mtx;
  static std::map<std::pair<const WeightModule*, const WeightModule*>, Entry> cache;
  const auto key = std::make_pair(a.get(), b.get());
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, Entry{a, b, tensor(*a, *b)}).first;
  return it->second.prod;
}

struct CanonComponent {
  Weight mu;
  std::shared_ptr<const WeightModule> irrep;
  ExactMatrix embt;  // transposed embedding: pushes covectors forward
  ExactMatrix proj;  // projection onto the canonical copy
};

/// Isotypic decompositions memoized per module.  Map nodes are stable, so the
/// returned reference survives later insertions.
inline const std::vector<CanonComponent>& decomposition_cached(const std::shared_ptr<const WeightModule>& w) {
  struct Entry {
    std::shared_ptr<const WeightModule> owner;
    std::vector<CanonComponent> comps;
  };
  static std::mutex mtx;
  static std::map<const WeightModule*, Entry> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(w.get());
  if (it == cache.end()) {
    Entry e{w, {}};
    for (auto& ic : isotypic_decomposition(*w))
      e.comps.push_back(CanonComponent{ic.mu, ic.irrep, ic.emb.transpose(), std::move(ic.proj)});
    it = cache.emplace(w.get(), std::move(e)).first;
  }
  return it->second.comps;
}

}  // namespace detail

/// Finite sum of matrix coefficients; the canonical form is computed once on
/// demand, after which concurrent reads are safe.
class MCElement {
 public:
  MCElement() = default;  // the zero functional

  explicit MCElement(std::vector<MCSummand> sums) : sums_(std::move(sums)) {}

  const std::vector<MCSummand>& summands() const { return sums_; }

  const CanonForm& canonical() const {
    if (!canon_) {
      auto out = std::make_shared<CanonForm>();
      for (const auto& s : sums_) {
        for (const auto& comp : detail::decomposition_cached(s.W)) {
          const SparseVec fa = comp.embt.apply_sparse(s.f);
          if (fa.empty()) continue;
          const SparseVec xb = comp.proj.apply_sparse(s.x);
          if (xb.empty()) continue;
          auto it = out->find(comp.mu);
          if (it == out->end())
            it = out->emplace(comp.mu, CanonBlock{comp.irrep, ExactMatrix(comp.irrep->dim, comp.irrep->dim)}).first;
          ExactMatrix& m = it->second.mat;
          for (const auto& [a, fv] : fa)
            for (const auto& [b, xv] : xb) m.set(a, b, m.entry(a, b) + fv * xv);
        }
      }
      for (auto it = out->begin(); it != out->end();)
        it = it->second.mat.is_zero() ? out->erase(it) : std::next(it);
      canon_ = std::move(out);
    }
    return *canon_;
  }

  bool is_zero() const { return canonical().empty(); }

  friend MCElement operator+(const MCElement& a, const MCElement& b) {
    std::vector<MCSummand> sums = a.sums_;
    sums.insert(sums.end(), b.sums_.begin(), b.sums_.end());
    return MCElement(std::move(sums));
  }

  friend MCElement operator*(const LaurentRat& c, const MCElement& a) {
    if (c.is_zero()) return MCElement();
    std::vector<MCSummand> sums = a.sums_;
    for (auto& s : sums)
      for (auto& [i, v] : s.f) {
        (void)i;
        v = c * v;
      }
    return MCElement(std::move(sums));
  }

 private:
  std::vector<MCSummand> sums_;
  mutable std::shared_ptr<const CanonForm> canon_;
};

/// The matrix coefficient u -> f(u x).
inline MCElement mc(std::shared_ptr<const WeightModule> W, SparseVec f, SparseVec x) {
  const auto tidy = [&](SparseVec& v) {
    std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    v.erase(std::remove_if(v.begin(), v.end(),
                           [&](const auto& p) { return p.second.is_zero() || p.first < 0 || p.first >= W->dim; }),
            v.end());
  };
  tidy(f);
  tidy(x);
  if (f.empty() || x.empty()) return MCElement();
  return MCElement({MCSummand{std::move(W), std::move(f), std::move(x)}});
}

/// Product of functionals: coefficients multiply by tensoring their data.
inline MCElement product(const MCElement& a, const MCElement& b) {
  std::vector<MCSummand> sums;
  sums.reserve(a.summands().size() * b.summands().size());
  for (const auto& s : a.summands())
    for (const auto& t : b.summands()) {
      MCSummand st;
      st.W = detail::tensor_cached(s.W, t.W);
      const int dt = t.W->dim;
      for (const auto& [i, u] : s.f)
        for (const auto& [j, v] : t.f) st.f.emplace_back(i * dt + j, u * v);
      for (const auto& [i, u] : s.x)
        for (const auto& [j, v] : t.x) st.x.emplace_back(i * dt + j, u * v);
      sums.push_back(std::move(st));
    }
  return MCElement(std::move(sums));
}

/// Equality as functionals on the whole enveloping algebra.
inline bool equal(const MCElement& a, const MCElement& b) {
  const CanonForm& ca = a.canonical();
  const CanonForm& cb = b.canonical();
  if (ca.size() != cb.size()) return false;
  auto ia = ca.begin();
  auto ib = cb.begin();
  for (; ia != ca.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!(ia->second.mat == ib->second.mat)) return false;
  }
  return true;
}

/// The unit functional, the coefficient of the trivial module.
inline MCElement unit_element(std::shared_ptr<const RootSystem> rs) {
  const Weight zero(static_cast<std::size_t>(rs->rank), 0);
  return mc(irrep_cached(std::move(rs), zero), {{0, LaurentRat::one()}}, {{0, LaurentRat::one()}});
}

enum class GenKind { E, F, K, Kinv };
using Word = std::vector<std::pair<GenKind, int>>;

namespace detail {

inline const ExactMatrix& generator_matrix(const WeightModule& w, const std::pair<GenKind, int>& g) {
  const auto node = static_cast<std::size_t>(g.second);
  switch (g.first) {
    case GenKind::E:
      return w.E[node];
    case GenKind::F:
      return w.F[node];
    case GenKind::K:
      return w.K[node];
    default:
      return w.Kinv[node];
  }
}

}  // namespace detail

/// Evaluate at a product of generators, summand by summand: f((g1 ... gk) x).
inline LaurentRat evaluate_direct(const MCElement& el, const Word& word) {
  LaurentRat acc = LaurentRat::zero();
  for (const auto& s : el.summands()) {
    SparseVec v = s.x;
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      v = detail::generator_matrix(*s.W, *it).apply_sparse(v);
    acc = acc + sv_dot(s.f, v);
  }
  return acc;
}

/// Evaluate the canonical form at the same product of generators.
inline LaurentRat evaluate(const MCElement& el, const Word& word) {
  LaurentRat acc = LaurentRat::zero();
  for (const auto& [mu, block] : el.canonical()) {
    (void)mu;
    ExactMatrix act = ExactMatrix::identity(block.irrep->dim);
    for (const auto& g : word) act = act * detail::generator_matrix(*block.irrep, g);
    for (int a = 0; a < block.mat.rows(); ++a)
      for (const auto& [b, v] : block.mat.row(a)) acc = acc + v * act.entry(a, b);
  }
  return acc;
}

/**
 * The product generator z_ij: the coefficient pairing the i-th dual basis
 * vector with the highest weight vector, times the coefficient on the dual
 * module pairing the j-th evaluation functional with its lowest covector.
 */
inline MCElement z_generator(const FlagContext& ctx, int i, int j) {
  if (i < 0 || i >= ctx.N || j < 0 || j >= ctx.N) throw InvalidArgument("z generator index out of range");
  const int hw = ctx.N - 1;
  return product(mc(ctx.V, {{i, LaurentRat::one()}}, {{hw, LaurentRat::one()}}),
                 mc(ctx.Vd, {{j, LaurentRat::one()}}, {{hw, LaurentRat::one()}}));
}

/**
 * Verify, as identities of functionals, everything the z-generators must
 * satisfy: the counit table, the straightening identity in both directions,
 * the inhomogeneous normalization, and both quadratic relation families.
 * With mutate set, one entry of the inverse braiding is perturbed first and
 * the report must come back failing.
 */
inline CheckReport verify_z_relations(const FlagContext& ctx, bool mutate = false) {
  CheckReport rep;
  const auto fail = [&rep](std::string w) {
    rep.pass = false;
    if (rep.witness.empty()) rep.witness = std::move(w);
  };
  const int n = ctx.N, hw = n - 1;
  ExactMatrix rg = ctx.fam.rg;
  if (mutate) rg.set(hw * n + hw, hw * n + hw, rg.entry(hw * n + hw, hw * n + hw) + LaurentRat::one());
  const LaurentRat qm = LaurentRat::q_pow(static_cast<int>(-ctx.fam.lamlam));
  const LaurentRat qp = LaurentRat::q_pow(static_cast<int>(ctx.fam.lamlam));
  const auto agen = [&](int i) { return mc(ctx.V, {{i, LaurentRat::one()}}, {{hw, LaurentRat::one()}}); };
  const auto bgen = [&](int j) { return mc(ctx.Vd, {{j, LaurentRat::one()}}, {{hw, LaurentRat::one()}}); };
  const auto tag = [](int i, int j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const LaurentRat eps = evaluate_direct(z_generator(ctx, i, j), {});
      const LaurentRat want = (i == hw && j == hw) ? LaurentRat::one() : LaurentRat::zero();
      if (!(eps == want)) fail("counit value is wrong at " + tag(i, j));
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MCElement rhs;
      for (const auto& [col, v] : rg.row(i * n + j))
        rhs = rhs + (qm * v) * product(bgen(col / n), agen(col % n));
      if (!equal(product(agen(i), bgen(j)), rhs)) fail("straightening fails at " + tag(i, j));
    }

  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      MCElement rhs;
      for (const auto& [col, v] : ctx.fam.rgm.row(k * n + l))
        rhs = rhs + (qp * v) * product(agen(col / n), bgen(col % n));
      if (!equal(product(bgen(k), agen(l)), rhs)) fail("reverse straightening fails at " + tag(k, l));
    }

  MCElement norm;
  for (const auto& [idx, v] : ctx.fam.C) norm = norm + (qp * v) * product(agen(idx / n), bgen(idx % n));
  if (!equal(norm, unit_element(ctx.rs))) fail("normalization does not give the unit");

  const auto w4 = detail::tensor_cached(detail::tensor_cached(detail::tensor_cached(ctx.V, ctx.Vd), ctx.V), ctx.Vd);
  const int x0 = ((hw * n + hw) * n + hw) * n + hw;
  const ExactMatrix inner = embed_pair(rg, 1, 4, n);
  const ExactMatrix fams[2] = {embed_pair(ctx.fam.Phat, 0, 4, n) * inner,
                               embed_pair(ctx.fam.Pch, 2, 4, n) * inner};
  for (int f = 0; f < 2; ++f)
    for (int r = 0; r < fams[f].rows(); ++r) {
      if (fams[f].row(r).empty()) continue;
      if (!mc(w4, fams[f].row(r), {{x0, LaurentRat::one()}}).is_zero())
        fail("relation family " + std::to_string(f + 1) + " fails at row " + std::to_string(r));
    }
  return rep;
}

}  // namespace qflag
