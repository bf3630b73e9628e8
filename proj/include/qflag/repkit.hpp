/**
 * @file repkit.hpp
 * @brief Finite-dimensional weight modules for the quantized enveloping algebra:
 *        irreducible highest-weight modules, duals, tensor products, highest
 *        weight vectors, isotypic decompositions and Levi restrictions.
 *
 * A module is a dim-dimensional space with sparse action matrices E_i, F_i,
 * K_i, K_i^{-1} per node, acting on columns.  Irreducibles are built by
 * quotienting the span of descending F-monomials by the radical of the
 * contravariant form, level by level in height: at each weight space the form
 * of the candidate monomials is computed from the previous level via
 * <F_j m, c> = <m, E_j c>, a maximal set of candidates with invertible Gram
 * matrix is kept as basis, and the remaining candidates are expanded through
 * that Gram matrix (valid because the form is nondegenerate on the quotient).
 * Every constructed irreducible is cross-checked against the Weyl dimension
 * formula and against the full defining relations of the algebra.
 */

#pragma once

#include "linalg.hpp"
#include "rootdata.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace qflag {

struct NonDominantWeight : std::domain_error {
  NonDominantWeight() : std::domain_error("highest weight must be dominant integral") {}
};
struct DecompositionIncomplete : std::domain_error {
  explicit DecompositionIncomplete(const std::string& m) : std::domain_error(m) {}
};

struct WeightModule {
  std::shared_ptr<const RootSystem> rs;
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<Weight> wts;
  std::vector<ExactMatrix> E, F, K, Kinv;  // one per node, acting on column vectors
  std::optional<int> hw;                   // index of the canonical highest weight vector
  std::vector<std::vector<int>> words;     // irreps only: defining F-word per basis vector
};

namespace detail {

inline ExactMatrix k_diagonal(const RootSystem& rs, const std::vector<Weight>& wts, int node, int sign) {
  ExactMatrix m(static_cast<int>(wts.size()), static_cast<int>(wts.size()));
  for (int b = 0; b < static_cast<int>(wts.size()); ++b) {
    const long long e = rs.pairing(wts[static_cast<std::size_t>(b)], rs.alpha(node));
    m.set(b, b, LaurentRat::q_pow(static_cast<int>(sign * e)));
  }
  return m;
}

}  // namespace detail

/// Check the defining relations of the quantized enveloping algebra on the
/// action matrices of W (weight compatibilities, commutators, Serre relations).
inline bool check_module_relations(const WeightModule& W) {
  const RootSystem& rs = *W.rs;
  const int n = rs.rank;
  const ExactMatrix id = ExactMatrix::identity(W.dim);
  for (int i = 0; i < n; ++i) {
    if (!(W.K[static_cast<std::size_t>(i)] * W.Kinv[static_cast<std::size_t>(i)] == id)) return false;
    for (int j = 0; j < n; ++j) {
      const long long aa = rs.pairing(rs.alpha(i), rs.alpha(j));
      const auto &Ki = W.K[static_cast<std::size_t>(i)], &Kii = W.Kinv[static_cast<std::size_t>(i)];
      if (!(Ki * W.E[static_cast<std::size_t>(j)] * Kii ==
            LaurentRat::q_pow(static_cast<int>(aa)) * W.E[static_cast<std::size_t>(j)]))
        return false;
      if (!(Ki * W.F[static_cast<std::size_t>(j)] * Kii ==
            LaurentRat::q_pow(static_cast<int>(-aa)) * W.F[static_cast<std::size_t>(j)]))
        return false;
      ExactMatrix lhs = W.E[static_cast<std::size_t>(i)] * W.F[static_cast<std::size_t>(j)] -
                        W.F[static_cast<std::size_t>(j)] * W.E[static_cast<std::size_t>(i)];
      if (i == j) {
        const int di = static_cast<int>(rs.dprime(i));
        const LaurentRat den = LaurentRat::q_pow(di) - LaurentRat::q_pow(-di);
        lhs = lhs - den.inv() * (Ki - Kii);
      }
      if (!lhs.is_zero()) return false;
      if (i != j) {  // quantum Serre relations in the variable q_i
        const int m = 1 - rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        ExactMatrix se(W.dim, W.dim), sf(W.dim, W.dim);
        for (int t = 0; t <= m; ++t) {
          LaurentRat c = qbinom_base(m, t, static_cast<int>(rs.dprime(i)));
          if (t % 2) c = -c;
          ExactMatrix pe = id, pf = id;
          for (int u = 0; u < m - t; ++u) pe = pe * W.E[static_cast<std::size_t>(i)], pf = pf * W.F[static_cast<std::size_t>(i)];
          pe = pe * W.E[static_cast<std::size_t>(j)], pf = pf * W.F[static_cast<std::size_t>(j)];
          for (int u = 0; u < t; ++u) pe = pe * W.E[static_cast<std::size_t>(i)], pf = pf * W.F[static_cast<std::size_t>(i)];
          se = se + c * pe;
          sf = sf + c * pf;
        }
        if (!se.is_zero() || !sf.is_zero()) return false;
      }
    }
    // weight compatibility: E_i raises by alpha_i, F_i lowers by alpha_i
    for (int r = 0; r < W.dim; ++r) {
      for (const auto& [b, v] : W.E[static_cast<std::size_t>(i)].row(r)) {
        (void)v;
        if (W.wts[static_cast<std::size_t>(r)] !=
            weight_add(W.wts[static_cast<std::size_t>(b)], rs.alpha(i)))
          return false;
      }
      for (const auto& [b, v] : W.F[static_cast<std::size_t>(i)].row(r)) {
        (void)v;
        if (W.wts[static_cast<std::size_t>(r)] !=
            weight_sub(W.wts[static_cast<std::size_t>(b)], rs.alpha(i)))
          return false;
      }
    }
  }
  return true;
}

/**
 * Irreducible module with dominant integral highest weight mu.  Basis vectors
 * are classes of F-monomials applied to the highest weight vector, generated
 * by height and sorted lexicographically by generator word within each level;
 * index 0 is the highest weight vector.
 */
inline std::shared_ptr<const WeightModule> build_irrep(std::shared_ptr<const RootSystem> rsp,
                                                       const Weight& mu) {
  const RootSystem& rs = *rsp;
  const int n = rs.rank;
  for (int c : mu)
    if (c < 0) throw NonDominantWeight{};

  struct Basis {
    std::vector<int> word;
    Weight wt;
    int height;
  };
  std::vector<Basis> basis{{{}, mu, 0}};
  // evec[a][b] = coordinates of E_a * (basis b); fvec[a][b] = coordinates of F_a * (basis b)
  std::vector<std::vector<SparseVec>> evec(static_cast<std::size_t>(n)), fvec(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) evec[static_cast<std::size_t>(a)].push_back({});
  std::map<Weight, std::pair<std::vector<int>, ExactMatrix>> gram;  // weight -> (indices, Gram)
  {
    ExactMatrix g(1, 1);
    g.set(0, 0, LaurentRat::one());
    gram.emplace(mu, std::make_pair(std::vector<int>{0}, g));
  }

  std::size_t level_begin = 0;  // first basis index of the previous height level
  for (int h = 1;; ++h) {
    const std::size_t level_end = basis.size();
    struct Cand {
      std::vector<int> word;
      int j, parent;
      Weight wt;
      std::vector<SparseVec> e;  // E_a * candidate, over existing basis
    };
    std::vector<Cand> cands;
    for (std::size_t b = level_begin; b < level_end; ++b)
      for (int j = 0; j < n; ++j) {
        Cand c;
        c.word.reserve(basis[b].word.size() + 1);
        c.word.push_back(j);
        c.word.insert(c.word.end(), basis[b].word.begin(), basis[b].word.end());
        c.j = j;
        c.parent = static_cast<int>(b);
        c.wt = weight_sub(basis[b].wt, rs.alpha(j));
        cands.push_back(std::move(c));
      }
    if (cands.empty()) break;
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.word < b.word; });

    // E-action on candidates: E_a F_j m = F_j (E_a m) + delta_aj [ (wt m, alpha_a) ] m
    for (auto& c : cands) {
      const Weight& nu = basis[static_cast<std::size_t>(c.parent)].wt;
      c.e.resize(static_cast<std::size_t>(n));
      for (int a = 0; a < n; ++a) {
        SparseVec acc;
        for (const auto& [u, val] : evec[static_cast<std::size_t>(a)][static_cast<std::size_t>(c.parent)]) {
          const SparseVec& fj = fvec[static_cast<std::size_t>(c.j)][static_cast<std::size_t>(u)];
          if (!fj.empty()) acc = sv_combine(LaurentRat::one(), acc, val, fj);
        }
        if (a == c.j) {
          const long long pa = rs.pairing(nu, rs.alpha(a));
          const long long da = rs.dprime(a);
          const LaurentRat s = qint_base(pa / da, static_cast<int>(da));
          if (!s.is_zero()) {
            SparseVec d{{c.parent, s}};
            acc = sv_combine(LaurentRat::one(), acc, LaurentRat::one(), d);
          }
        }
        c.e[static_cast<std::size_t>(a)] = std::move(acc);
      }
    }

    // group by weight, keep candidate order inside each group
    std::map<Weight, std::vector<int>> groups;
    for (int t = 0; t < static_cast<int>(cands.size()); ++t) groups[cands[static_cast<std::size_t>(t)].wt].push_back(t);

    std::vector<int> kept_of(cands.size(), -1);          // candidate -> new basis index
    std::vector<SparseVec> expansion(cands.size());      // dependent candidate -> combo of kept
    std::map<Weight, std::pair<std::vector<int>, ExactMatrix>> new_gram;
    std::vector<int> kept_order;

    for (auto& [wt, members] : groups) {
      const int m = static_cast<int>(members.size());
      // pairing of candidate c=(j, parent) with candidate c': <parent, E_j c'>
      ExactMatrix G(m, m);
      for (int r = 0; r < m; ++r) {
        const Cand& cr = cands[static_cast<std::size_t>(members[static_cast<std::size_t>(r)])];
        const auto& gp = gram.at(basis[static_cast<std::size_t>(cr.parent)].wt);
        // dense row of the previous Gram for cr.parent
        const auto& idxs = gp.first;
        const auto it = std::find(idxs.begin(), idxs.end(), cr.parent);
        const int prow = static_cast<int>(it - idxs.begin());
        for (int cc = 0; cc < m; ++cc) {
          const Cand& cq = cands[static_cast<std::size_t>(members[static_cast<std::size_t>(cc)])];
          LaurentRat val = LaurentRat::zero();
          for (const auto& [u, x] : cq.e[static_cast<std::size_t>(cr.j)]) {
            // <parent, u>: both live in the parent's weight space
            const auto jt = std::find(idxs.begin(), idxs.end(), u);
            if (jt == idxs.end()) continue;
            val += x * gp.second.entry(prow, static_cast<int>(jt - idxs.begin()));
          }
          if (!val.is_zero()) G.set(r, cc, val);
        }
      }
      // leftmost maximal independent column set: for a symmetric Gram matrix the
      // principal submatrix on such columns is invertible
      Echelon ech(m);
      std::vector<int> J;
      const ExactMatrix Gt = G.transpose();  // columns as rows
      for (int cc = 0; cc < m; ++cc)
        if (ech.insert(Gt.row(cc))) J.push_back(cc);
      ExactMatrix A(static_cast<int>(J.size()), static_cast<int>(J.size()));
      for (int r = 0; r < static_cast<int>(J.size()); ++r)
        for (int cc = 0; cc < static_cast<int>(J.size()); ++cc)
          A.set(r, cc, G.entry(J[static_cast<std::size_t>(r)], J[static_cast<std::size_t>(cc)]));
      for (int r : J) kept_of[static_cast<std::size_t>(members[static_cast<std::size_t>(r)])] = 0;  // mark as kept
      // expansions of dependent candidates over the kept ones
      for (int cc = 0; cc < m; ++cc) {
        if (std::find(J.begin(), J.end(), cc) != J.end()) continue;
        std::vector<LaurentRat> rhs(J.size());
        for (int r = 0; r < static_cast<int>(J.size()); ++r)
          rhs[static_cast<std::size_t>(r)] = G.entry(J[static_cast<std::size_t>(r)], cc);
        auto x = solve(A, rhs);
        if (!x) throw DecompositionIncomplete("candidate Gram expansion failed");
        SparseVec ex;
        for (int r = 0; r < static_cast<int>(J.size()); ++r)
          if (!(*x)[static_cast<std::size_t>(r)].is_zero())
            ex.emplace_back(members[static_cast<std::size_t>(J[static_cast<std::size_t>(r)])],
                            (*x)[static_cast<std::size_t>(r)]);
        // entries reference candidate ids; remapped to basis indices after commit
        expansion[static_cast<std::size_t>(members[static_cast<std::size_t>(cc)])] = std::move(ex);
      }
      // restricted Gram for the new level
      std::vector<int> keep_ids;
      for (int r : J) keep_ids.push_back(members[static_cast<std::size_t>(r)]);
      new_gram.emplace(wt, std::make_pair(std::move(keep_ids), std::move(A)));
    }

    // commit kept candidates in global candidate order
    int new_count = 0;
    for (int t = 0; t < static_cast<int>(cands.size()); ++t) {
      if (kept_of[static_cast<std::size_t>(t)] != 0) continue;
      Cand& c = cands[static_cast<std::size_t>(t)];
      kept_of[static_cast<std::size_t>(t)] = static_cast<int>(basis.size());
      basis.push_back({std::move(c.word), c.wt, h});
      for (int a = 0; a < n; ++a) evec[static_cast<std::size_t>(a)].push_back(std::move(c.e[static_cast<std::size_t>(a)]));
      ++new_count;
    }

    // F-action entries from parents at the previous level into this level
    for (int a = 0; a < n; ++a) fvec[static_cast<std::size_t>(a)].resize(basis.size());
    for (int t = 0; t < static_cast<int>(cands.size()); ++t) {
      const Cand& c = cands[static_cast<std::size_t>(t)];
      SparseVec img;
      if (kept_of[static_cast<std::size_t>(t)] > 0) {
        img = sv_unit(kept_of[static_cast<std::size_t>(t)]);
      } else {
        for (const auto& [cid, val] : expansion[static_cast<std::size_t>(t)])
          img.emplace_back(kept_of[static_cast<std::size_t>(cid)], val);
        std::sort(img.begin(), img.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      }
      fvec[static_cast<std::size_t>(c.j)][static_cast<std::size_t>(c.parent)] = std::move(img);
    }

    // remap Gram index lists from candidate ids to basis indices
    for (auto& [wt, pr] : new_gram) {
      for (int& id : pr.first) id = kept_of[static_cast<std::size_t>(id)];
      gram.emplace(wt, std::move(pr));
    }

    if (new_count == 0) break;
    level_begin = level_end;
  }

  auto W = std::make_shared<WeightModule>();
  W->rs = rsp;
  W->dim = static_cast<int>(basis.size());
  W->hw = 0;
  for (auto& b : basis) {
    W->wts.push_back(b.wt);
    W->words.push_back(b.word);
  }
  for (int i = 0; i < W->dim; ++i) W->labels.push_back("v" + std::to_string(i + 1));
  for (int a = 0; a < n; ++a) {
    ExactMatrix Em(W->dim, W->dim), Fm(W->dim, W->dim);
    for (int b = 0; b < W->dim; ++b) {
      for (const auto& [u, val] : evec[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) Em.set(u, b, val);
      if (static_cast<std::size_t>(b) < fvec[static_cast<std::size_t>(a)].size())
        for (const auto& [u, val] : fvec[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) Fm.set(u, b, val);
    }
    W->E.push_back(std::move(Em));
    W->F.push_back(std::move(Fm));
    W->K.push_back(detail::k_diagonal(rs, W->wts, a, +1));
    W->Kinv.push_back(detail::k_diagonal(rs, W->wts, a, -1));
  }

  if (Int(W->dim) != weyl_dim(rs, mu))
    throw DecompositionIncomplete("irreducible module dimension disagrees with the Weyl formula");
  if (!check_module_relations(*W))
    throw DecompositionIncomplete("constructed module violates the defining relations");
  return W;
}

/// Cached canonical irreducibles, keyed by root-system content and weight.
inline std::shared_ptr<const WeightModule> irrep_cached(std::shared_ptr<const RootSystem> rsp,
                                                        const Weight& mu) {
  static std::mutex mtx;
  static std::map<std::tuple<char, int, int, Weight>, std::shared_ptr<const WeightModule>> cache;
  const auto key = std::make_tuple(rsp->type, rsp->rank, rsp->multiplier, mu);
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto W = build_irrep(rsp, mu);
  std::lock_guard<std::mutex> lock(mtx);
  return cache.emplace(key, std::move(W)).first->second;
}

/// Dual module via the antipode: (u f)(x) = f(kappa(u) x).
inline std::shared_ptr<const WeightModule> dual_module(const WeightModule& V) {
  auto D = std::make_shared<WeightModule>();
  D->rs = V.rs;
  D->dim = V.dim;
  const int n = V.rs->rank;
  for (const auto& w : V.wts) {
    Weight neg(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];
    D->wts.push_back(std::move(neg));
  }
  for (int i = 0; i < V.dim; ++i) D->labels.push_back("f" + std::to_string(i + 1));
  for (int a = 0; a < n; ++a) {
    // kappa(E) = -E K^{-1}, kappa(F) = -K F, kappa(K) = K^{-1}; dual action = transpose
    D->E.push_back(LaurentRat(-1) * (V.E[static_cast<std::size_t>(a)] * V.Kinv[static_cast<std::size_t>(a)]).transpose());
    D->F.push_back(LaurentRat(-1) * (V.K[static_cast<std::size_t>(a)] * V.F[static_cast<std::size_t>(a)]).transpose());
    D->K.push_back(V.Kinv[static_cast<std::size_t>(a)].transpose());
    D->Kinv.push_back(V.K[static_cast<std::size_t>(a)].transpose());
  }
  // distinguished highest weight vector, when unique
  std::vector<int> hw_cols;
  for (int b = 0; b < D->dim; ++b) {
    bool killed = true;
    for (int a = 0; a < n && killed; ++a)
      for (int r = 0; r < D->dim && killed; ++r)
        if (!D->E[static_cast<std::size_t>(a)].entry(r, b).is_zero()) killed = false;
    if (killed) hw_cols.push_back(b);
  }
  if (hw_cols.size() == 1) D->hw = hw_cols[0];
  return D;
}

/// Tensor product with the coproduct Delta(E) = E (x) K + 1 (x) E,
/// Delta(F) = F (x) 1 + K^{-1} (x) F, Delta(K) = K (x) K.
inline std::shared_ptr<const WeightModule> tensor(const WeightModule& V, const WeightModule& W) {
  auto T = std::make_shared<WeightModule>();
  T->rs = V.rs;
  T->dim = V.dim * W.dim;
  const int n = V.rs->rank;
  const ExactMatrix iv = ExactMatrix::identity(V.dim), iw = ExactMatrix::identity(W.dim);
  for (int i = 0; i < V.dim; ++i)
    for (int j = 0; j < W.dim; ++j) {
      T->wts.push_back(weight_add(V.wts[static_cast<std::size_t>(i)], W.wts[static_cast<std::size_t>(j)]));
      T->labels.push_back(V.labels[static_cast<std::size_t>(i)] + "." + W.labels[static_cast<std::size_t>(j)]);
    }
  for (int a = 0; a < n; ++a) {
    T->E.push_back(ExactMatrix::kron(V.E[static_cast<std::size_t>(a)], W.K[static_cast<std::size_t>(a)]) +
                   ExactMatrix::kron(iv, W.E[static_cast<std::size_t>(a)]));
    T->F.push_back(ExactMatrix::kron(V.F[static_cast<std::size_t>(a)], iw) +
                   ExactMatrix::kron(V.Kinv[static_cast<std::size_t>(a)], W.F[static_cast<std::size_t>(a)]));
    T->K.push_back(ExactMatrix::kron(V.K[static_cast<std::size_t>(a)], W.K[static_cast<std::size_t>(a)]));
    T->Kinv.push_back(ExactMatrix::kron(V.Kinv[static_cast<std::size_t>(a)], W.Kinv[static_cast<std::size_t>(a)]));
  }
  return T;
}

struct HWSpace {
  Weight wt;
  std::vector<SparseVec> vecs;  // joint kernel of the raising operators, in module coordinates
};

/// Highest weight vectors with respect to the raising operators of exactly the
/// given nodes (an empty set imposes no condition); weight spaces in
/// descending lex order.
inline std::vector<HWSpace> highest_weight_vectors(const WeightModule& V, const std::vector<int>& gens) {
  std::map<Weight, std::vector<int>> spaces;
  for (int b = 0; b < V.dim; ++b) spaces[V.wts[static_cast<std::size_t>(b)]].push_back(b);
  std::vector<HWSpace> out;
  for (auto it = spaces.rbegin(); it != spaces.rend(); ++it) {
    const auto& cols = it->second;
    const int k = static_cast<int>(cols.size());
    ExactMatrix m(static_cast<int>(gens.size()) * V.dim, k);
    for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
      const ExactMatrix& Ea = V.E[static_cast<std::size_t>(gens[static_cast<std::size_t>(g)])];
      for (int t = 0; t < k; ++t)
        for (int r = 0; r < V.dim; ++r) {
          const LaurentRat v = Ea.entry(r, cols[static_cast<std::size_t>(t)]);
          if (!v.is_zero()) m.set(g * V.dim + r, t, v);
        }
    }
    auto ker = kernel_basis(m);
    if (ker.empty()) continue;
    HWSpace hs;
    hs.wt = it->first;
    for (auto& kv : ker) {
      SparseVec v;
      for (auto& [t, val] : kv) v.emplace_back(cols[static_cast<std::size_t>(t)], val);
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      hs.vecs.push_back(std::move(v));
    }
    out.push_back(std::move(hs));
  }
  return out;
}

/// Highest weight vectors for the full set of raising operators.
inline std::vector<HWSpace> highest_weight_vectors(const WeightModule& V) {
  std::vector<int> gens;
  for (int a = 0; a < V.rs->rank; ++a) gens.push_back(a);
  return highest_weight_vectors(V, gens);
}

struct IsoComponent {
  Weight mu;
  int copy = 0;
  std::shared_ptr<const WeightModule> irrep;  // the canonical model
  ExactMatrix emb;   // V.dim x irrep.dim, intertwiner
  ExactMatrix proj;  // irrep.dim x V.dim, coordinates in the canonical model
};

/**
 * Decomposition into canonical irreducibles: each highest weight vector is
 * propagated along the defining F-words of the canonical model, giving an
 * embedding; stacking all embeddings must be invertible, and the inverse
 * provides the projections (DecompositionIncomplete otherwise).
 */
inline std::vector<IsoComponent> isotypic_decomposition(const WeightModule& V) {
  auto hws = highest_weight_vectors(V);
  std::vector<IsoComponent> comps;
  int total = 0;
  for (const auto& hs : hws) {
    for (int c : hs.wt)
      if (c < 0) throw DecompositionIncomplete("highest weight vector with non-dominant weight");
    for (std::size_t t = 0; t < hs.vecs.size(); ++t) {
      IsoComponent ic;
      ic.mu = hs.wt;
      ic.copy = static_cast<int>(t);
      ic.irrep = irrep_cached(V.rs, hs.wt);
      ic.emb = ExactMatrix(V.dim, ic.irrep->dim);
      for (int m = 0; m < ic.irrep->dim; ++m) {
        SparseVec u = hs.vecs[t];
        const auto& word = ic.irrep->words[static_cast<std::size_t>(m)];
        for (auto wit = word.rbegin(); wit != word.rend(); ++wit)
          u = V.F[static_cast<std::size_t>(*wit)].apply_sparse(u);
        for (const auto& [r, val] : u) ic.emb.set(r, m, val);
      }
      total += ic.irrep->dim;
      comps.push_back(std::move(ic));
    }
  }
  if (total != V.dim) throw DecompositionIncomplete("isotypic dimensions do not sum to dim V");
  ExactMatrix all(V.dim, V.dim);
  int col = 0;
  for (const auto& ic : comps)
    for (int m = 0; m < ic.irrep->dim; ++m, ++col)
      for (int r = 0; r < V.dim; ++r) {
        const LaurentRat v = ic.emb.entry(r, m);
        if (!v.is_zero()) all.set(r, col, v);
      }
  auto inv = inverse(all);
  if (!inv) throw DecompositionIncomplete("stacked embeddings are not invertible");
  col = 0;
  for (auto& ic : comps) {
    ic.proj = ExactMatrix(ic.irrep->dim, V.dim);
    for (int m = 0; m < ic.irrep->dim; ++m, ++col)
      for (int r = 0; r < V.dim; ++r) {
        const LaurentRat v = inv->entry(col, r);
        if (!v.is_zero()) ic.proj.set(m, r, v);
      }
  }
  return comps;
}

/// A module together with a distinguished subset of nodes (a Levi subalgebra).
struct LeviRestriction {
  std::shared_ptr<const WeightModule> mod;
  std::vector<int> gens;  // 0-based nodes of the Levi part
};

inline LeviRestriction levi_restriction(std::shared_ptr<const WeightModule> mod, std::vector<int> gens) {
  return LeviRestriction{std::move(mod), std::move(gens)};
}

struct SubComponent {
  Weight top_wt;     // weight of the generating highest weight vector
  ExactMatrix emb;   // V.dim x subdim
  ExactMatrix proj;  // subdim x V.dim; emb*proj projects onto the component
};

/**
 * Decomposition of V as a module for the Levi subalgebra generated by the
 * given nodes: closures of the Levi-highest weight vectors under F_j, j in
 * gens.  Components are not matched to canonical models; the projections are
 * module maps because each complement is the sum of the other components.
 */
inline std::vector<SubComponent> levi_components(const WeightModule& V, const std::vector<int>& gens) {
  auto hws = highest_weight_vectors(V, gens);
  std::vector<SubComponent> comps;
  int total = 0;
  for (const auto& hs : hws)
    for (const auto& seed : hs.vecs) {
      SubComponent sc;
      sc.top_wt = hs.wt;
      std::vector<SparseVec> vecs{seed};
      Echelon span(V.dim);
      span.insert(seed);
      for (std::size_t head = 0; head < vecs.size(); ++head)
        for (int j : gens) {
          SparseVec w = V.F[static_cast<std::size_t>(j)].apply_sparse(vecs[head]);
          if (!w.empty() && span.insert(w)) vecs.push_back(std::move(w));
        }
      sc.emb = ExactMatrix(V.dim, static_cast<int>(vecs.size()));
      for (int m = 0; m < static_cast<int>(vecs.size()); ++m)
        for (const auto& [r, val] : vecs[static_cast<std::size_t>(m)]) sc.emb.set(r, m, val);
      total += static_cast<int>(vecs.size());
      comps.push_back(std::move(sc));
    }
  if (total != V.dim) throw DecompositionIncomplete("Levi components do not fill the module");
  ExactMatrix all(V.dim, V.dim);
  int col = 0;
  for (const auto& sc : comps)
    for (int m = 0; m < sc.emb.cols(); ++m, ++col)
      for (int r = 0; r < V.dim; ++r) {
        const LaurentRat v = sc.emb.entry(r, m);
        if (!v.is_zero()) all.set(r, col, v);
      }
  auto inv = inverse(all);
  if (!inv) throw DecompositionIncomplete("stacked Levi embeddings are not invertible");
  col = 0;
  for (auto& sc : comps) {
    sc.proj = ExactMatrix(sc.emb.cols(), V.dim);
    for (int m = 0; m < sc.emb.cols(); ++m, ++col)
      for (int r = 0; r < V.dim; ++r) {
        const LaurentRat v = inv->entry(col, r);
        if (!v.is_zero()) sc.proj.set(m, r, v);
      }
  }
  return comps;
}

}  // namespace qflag
