/**
 * @file braiding.hpp
 * @brief Braidings of weight modules and the derived R-matrix family.
 *
 * The braiding rho_{V,W}: V (x) W -> W (x) V is determined by
 *   rho(v (x) w) = q^{(wt v, wt w)} w (x) v + (correction terms)
 * where corrections move the W-leg strictly down and the V-leg strictly up in
 * the dominance order.  On the highest weight vector the formula is exact, and
 * lower rows follow by writing each vector as a combination of F_j u with u of
 * higher weight and using that rho intertwines Delta(F_j):
 *   rho(F_j u (x) w) = Delta(F_j) rho(u (x) w) - rho(K_j^{-1} u (x) F_j w).
 * The recursion is generic over a "datum" (generator subset + pairing + cone
 * decomposition), so the same code computes braidings for the full algebra and
 * for Levi subalgebras.  Every computed braiding is verified to intertwine the
 * generator actions and to have the exact triangular shape; the shape implies
 * invertibility.
 */

#pragma once

#include "repkit.hpp"

#include <functional>

namespace qflag {

struct PropagationFailure : std::domain_error {
  explicit PropagationFailure(const std::string& m) : std::domain_error(m) {}
};
struct NotASubmodule : std::domain_error {
  explicit NotASubmodule(const std::string& m) : std::domain_error(m) {}
};

struct CheckReport {
  bool pass = true;
  std::string witness;  // empty when pass; otherwise a description of the first failure
};

/// Pairing and cone data driving the braiding recursion.
struct BraidDatum {
  std::vector<int> gens;  // participating nodes
  std::function<long long(const Weight&, const Weight&)> pair;
  // coordinates of a weight as a nonnegative integer sum of the gens' simple
  // roots, or nullopt
  std::function<std::optional<std::vector<int>>(const Weight&)> cone_coords;
};

inline BraidDatum full_datum(std::shared_ptr<const RootSystem> rs) {
  BraidDatum d;
  for (int i = 0; i < rs->rank; ++i) d.gens.push_back(i);
  d.pair = [rs](const Weight& a, const Weight& b) { return rs->pairing(a, b); };
  d.cone_coords = [rs](const Weight& mu) -> std::optional<std::vector<int>> {
    auto c = rs->root_coords(mu);
    if (!c) return std::nullopt;
    for (int v : *c)
      if (v < 0) return std::nullopt;
    return c;
  };
  return d;
}

/// Datum for the Levi subalgebra on the nodes S; pairings use the Levi form
/// (the form dual to the restricted simple roots).  Throws InvalidArgument if
/// that form is not integral in the present rescaling.
inline BraidDatum levi_datum(std::shared_ptr<const RootSystem> rs, std::vector<int> S) {
  BraidDatum d;
  d.gens = S;
  const int m = static_cast<int>(S.size());
  // B_S = pairings of the S-simple roots; Gk = D' B_S^{-1} D'
  std::vector<std::vector<Rat>> gk(static_cast<std::size_t>(m), std::vector<Rat>(static_cast<std::size_t>(m), Rat(0)));
  if (m > 0) {
    for (int c = 0; c < m; ++c) {
      std::vector<std::vector<Rat>> B(static_cast<std::size_t>(m), std::vector<Rat>(static_cast<std::size_t>(m)));
      std::vector<Rat> e(static_cast<std::size_t>(m), Rat(0));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              rs->pairing(rs->alpha(S[static_cast<std::size_t>(i)]), rs->alpha(S[static_cast<std::size_t>(j)]));
      e[static_cast<std::size_t>(c)] = 1;
      auto col = detail::solve_rational(std::move(B), std::move(e));
      for (int r = 0; r < m; ++r)
        gk[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
            Rat(rs->dprime(S[static_cast<std::size_t>(r)])) * Rat(rs->dprime(S[static_cast<std::size_t>(c)])) *
            col[static_cast<std::size_t>(r)];
    }
  }
  auto kcoords = [rs, S](const Weight& w) {
    std::vector<Rat> mc(S.size());
    for (std::size_t t = 0; t < S.size(); ++t)
      mc[t] = Rat(rs->pairing(w, rs->alpha(S[t]))) / Rat(rs->dprime(S[t]));
    return mc;  // coordinates in the restricted fundamental weights
  };
  d.pair = [rs, S, gk, kcoords](const Weight& a, const Weight& b) -> long long {
    const auto ma = kcoords(a), mb = kcoords(b);
    Rat s = 0;
    for (std::size_t i = 0; i < S.size(); ++i)
      for (std::size_t j = 0; j < S.size(); ++j) s += ma[i] * gk[i][j] * mb[j];
    if (boost::multiprecision::denominator(s) != 1)
      throw InvalidArgument("Levi pairing is not integral; rebuild the root system with a larger multiplier");
    return static_cast<long long>(boost::multiprecision::numerator(s));
  };
  d.cone_coords = [rs, S](const Weight& mu) -> std::optional<std::vector<int>> {
    // solve mu = sum n_j alpha_j over j in S via the Gram matrix of the
    // S-simple roots, then verify exactly
    const int k = static_cast<int>(S.size());
    if (k == 0) {
      for (int c : mu)
        if (c) return std::nullopt;
      return std::vector<int>{};
    }
    std::vector<std::vector<Rat>> B(static_cast<std::size_t>(k), std::vector<Rat>(static_cast<std::size_t>(k)));
    std::vector<Rat> rhs(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      rhs[static_cast<std::size_t>(i)] = rs->pairing(mu, rs->alpha(S[static_cast<std::size_t>(i)]));
      for (int j = 0; j < k; ++j)
        B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            rs->pairing(rs->alpha(S[static_cast<std::size_t>(i)]), rs->alpha(S[static_cast<std::size_t>(j)]));
    }
    auto x = detail::solve_rational(std::move(B), std::move(rhs));
    std::vector<int> n(static_cast<std::size_t>(k));
    Weight acc(mu.size(), 0);
    for (int j = 0; j < k; ++j) {
      if (boost::multiprecision::denominator(x[static_cast<std::size_t>(j)]) != 1) return std::nullopt;
      const auto v = static_cast<long long>(boost::multiprecision::numerator(x[static_cast<std::size_t>(j)]));
      if (v < 0) return std::nullopt;
      n[static_cast<std::size_t>(j)] = static_cast<int>(v);
      const Weight aj = rs->alpha(S[static_cast<std::size_t>(j)]);
      for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += static_cast<int>(v) * aj[t];
    }
    if (acc != mu) return std::nullopt;
    return n;
  };
  return d;
}

namespace detail {

// sparse columns of a matrix, for fast column access
inline std::vector<SparseVec> columns_of(const ExactMatrix& m) {
  std::vector<SparseVec> cols(static_cast<std::size_t>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) cols[static_cast<std::size_t>(j)].emplace_back(i, v);
  return cols;
}

}  // namespace detail

/**
 * Triangularity verification.  M maps A (x) B -> B (x) A; for every source
 * pair (i, j) the entry at (j, i) must be exactly q^{sign * (wt_i, wt_j)}, and
 * every other entry (k, l) must satisfy
 *   forward:  wtB(k) strictly below wtB(j)  and  wtA(l) strictly above wtA(i)
 *   inverse:  wtB(k) strictly above wtB(j)  and  wtA(l) strictly below wtA(i)
 * where "above/below" is dominance along the datum's cone.
 */
inline CheckReport check_triangular(const ExactMatrix& M, const std::vector<Weight>& wtsA,
                                    const std::vector<Weight>& wtsB, const BraidDatum& dat,
                                    int sign) {
  const int na = static_cast<int>(wtsA.size()), nb = static_cast<int>(wtsB.size());
  auto above = [&](const Weight& x, const Weight& y) {  // x strictly dominates y in the cone
    if (x == y) return false;
    const auto c = dat.cone_coords(weight_sub(x, y));
    return c.has_value();
  };
  const auto cols = detail::columns_of(M);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      const int src = i * nb + j;
      const int diag = j * na + i;
      bool saw_diag = false;
      for (const auto& [row, val] : cols[static_cast<std::size_t>(src)]) {
        if (row == diag) {
          const long long e = sign * dat.pair(wtsA[static_cast<std::size_t>(i)], wtsB[static_cast<std::size_t>(j)]);
          if (val != LaurentRat::q_pow(static_cast<int>(e)))
            return {false, "diagonal entry at source (" + std::to_string(i) + "," + std::to_string(j) +
                               ") is " + val.to_string()};
          saw_diag = true;
          continue;
        }
        const int k = row / na, l = row % na;
        const bool ok =
            sign > 0 ? (above(wtsB[static_cast<std::size_t>(j)], wtsB[static_cast<std::size_t>(k)]) &&
                        above(wtsA[static_cast<std::size_t>(l)], wtsA[static_cast<std::size_t>(i)]))
                     : (above(wtsB[static_cast<std::size_t>(k)], wtsB[static_cast<std::size_t>(j)]) &&
                        above(wtsA[static_cast<std::size_t>(i)], wtsA[static_cast<std::size_t>(l)]));
        if (!ok)
          return {false, "off-diagonal entry (" + std::to_string(k) + "," + std::to_string(l) +
                             ") <- (" + std::to_string(i) + "," + std::to_string(j) +
                             ") violates the dominance pattern"};
      }
      if (!saw_diag)
        return {false, "missing diagonal entry for source (" + std::to_string(i) + "," +
                           std::to_string(j) + ")"};
    }
  return {};
}

/**
 * The braiding rho_{V,W}: V (x) W -> W (x) V over the given datum.  Rows are
 * target pairs (k, l) flattened k*dimV + l, columns are source pairs (i, j)
 * flattened i*dimW + j.  V must carry its distinguished highest weight vector
 * and be cyclic over the datum's lowering operators.  Throws
 * PropagationFailure if a vector cannot be reached or the result fails
 * verification.
 */
inline ExactMatrix braid(const WeightModule& V, const WeightModule& W, const BraidDatum& dat) {
  if (!V.hw) throw PropagationFailure("braiding needs a distinguished highest weight vector");
  const int nv = V.dim, nw = W.dim;
  const Weight top = V.wts[static_cast<std::size_t>(*V.hw)];

  // processing order: increasing height of top - wt
  struct Ord {
    int h;
    std::vector<int> coords;
    int idx;
  };
  std::vector<Ord> order;
  for (int b = 0; b < nv; ++b) {
    const auto c = dat.cone_coords(weight_sub(top, V.wts[static_cast<std::size_t>(b)]));
    if (!c)
      throw PropagationFailure("module weight " + weight_str(V.wts[static_cast<std::size_t>(b)]) +
                               " is not below the highest weight in the datum cone");
    int h = 0;
    for (int v : *c) h += v;
    order.push_back({h, *c, b});
  }
  std::sort(order.begin(), order.end(), [](const Ord& a, const Ord& b) {
    if (a.h != b.h) return a.h < b.h;
    if (a.coords != b.coords) return a.coords < b.coords;
    return a.idx < b.idx;
  });
  if (order[0].idx != *V.hw || (order.size() > 1 && order[1].h == 0))
    throw PropagationFailure("highest weight vector is not the unique top of the cone order");

  std::vector<std::vector<SparseVec>> fcolV, fcolW;  // F columns per gen position
  for (int j : dat.gens) {
    fcolV.push_back(detail::columns_of(V.F[static_cast<std::size_t>(j)]));
    fcolW.push_back(detail::columns_of(W.F[static_cast<std::size_t>(j)]));
  }

  std::vector<SparseVec> col(static_cast<std::size_t>(nv) * static_cast<std::size_t>(nw));
  std::vector<LaurentRat> acc(static_cast<std::size_t>(nw) * static_cast<std::size_t>(nv));
  std::vector<int> touched;

  for (const Ord& o : order) {
    const int vi = o.idx;
    if (vi == *V.hw) {
      for (int j = 0; j < nw; ++j) {
        const long long e = dat.pair(top, W.wts[static_cast<std::size_t>(j)]);
        col[static_cast<std::size_t>(vi * nw + j)] =
            SparseVec{{j * nv + vi, LaurentRat::q_pow(static_cast<int>(e))}};
      }
      continue;
    }
    // express e_vi as a combination of F_j u with u strictly higher
    struct CandRef {
      int gpos, u;
    };
    std::vector<CandRef> cands;
    for (int g = 0; g < static_cast<int>(dat.gens.size()); ++g) {
      const Weight up = weight_add(V.wts[static_cast<std::size_t>(vi)], V.rs->alpha(dat.gens[static_cast<std::size_t>(g)]));
      for (int u = 0; u < nv; ++u)
        if (V.wts[static_cast<std::size_t>(u)] == up && !fcolV[static_cast<std::size_t>(g)][static_cast<std::size_t>(u)].empty())
          cands.push_back({g, u});
    }
    if (cands.empty()) throw PropagationFailure("no lowering expression for vector " + std::to_string(vi));
    ExactMatrix A(nv, static_cast<int>(cands.size()));
    for (int t = 0; t < static_cast<int>(cands.size()); ++t)
      for (const auto& [r, val] : fcolV[static_cast<std::size_t>(cands[static_cast<std::size_t>(t)].gpos)]
                                       [static_cast<std::size_t>(cands[static_cast<std::size_t>(t)].u)])
        A.set(r, t, val);
    std::vector<LaurentRat> rhs(static_cast<std::size_t>(nv));
    rhs[static_cast<std::size_t>(vi)] = LaurentRat::one();
    const auto sol = solve(A, rhs);
    if (!sol) throw PropagationFailure("inconsistent lowering expression for vector " + std::to_string(vi));

    for (int j = 0; j < nw; ++j) {
      touched.clear();
      auto add = [&](int pos, const LaurentRat& v) {
        if (v.is_zero()) return;
        auto& slot = acc[static_cast<std::size_t>(pos)];
        if (slot.is_zero()) touched.push_back(pos);
        slot += v;
      };
      for (int t = 0; t < static_cast<int>(cands.size()); ++t) {
        const LaurentRat& ct = (*sol)[static_cast<std::size_t>(t)];
        if (ct.is_zero()) continue;
        const int g = cands[static_cast<std::size_t>(t)].gpos;
        const int u = cands[static_cast<std::size_t>(t)].u;
        const int node = dat.gens[static_cast<std::size_t>(g)];
        // Delta(F) rho(u (x) w_j): F acts on the W-leg, K^{-1} (x) F on (W,V)
        for (const auto& [kl, val] : col[static_cast<std::size_t>(u * nw + j)]) {
          const int k = kl / nv, l = kl % nv;
          const LaurentRat cv = ct * val;
          for (const auto& [k2, fv] : fcolW[static_cast<std::size_t>(g)][static_cast<std::size_t>(k)])
            add(k2 * nv + l, cv * fv);
          const LaurentRat kw = W.Kinv[static_cast<std::size_t>(node)].entry(k, k);
          for (const auto& [l2, fv] : fcolV[static_cast<std::size_t>(g)][static_cast<std::size_t>(l)])
            add(k * nv + l2, cv * kw * fv);
        }
        // - rho(K^{-1} u (x) F w_j)
        const LaurentRat ku = V.Kinv[static_cast<std::size_t>(node)].entry(u, u);
        for (const auto& [b, fv] : fcolW[static_cast<std::size_t>(g)][static_cast<std::size_t>(j)]) {
          const LaurentRat cf = ct * ku * fv;
          for (const auto& [kl, val] : col[static_cast<std::size_t>(u * nw + b)]) add(kl, -(cf * val));
        }
      }
      std::sort(touched.begin(), touched.end());
      SparseVec out;
      out.reserve(touched.size());
      for (int pos : touched) {
        auto& slot = acc[static_cast<std::size_t>(pos)];
        if (!slot.is_zero()) out.emplace_back(pos, std::move(slot));
        slot = LaurentRat::zero();
      }
      col[static_cast<std::size_t>(vi * nw + j)] = std::move(out);
    }
  }

  ExactMatrix R(nw * nv, nv * nw);
  for (int c = 0; c < nv * nw; ++c)
    for (const auto& [r, v] : col[static_cast<std::size_t>(c)]) R.set(r, c, v);

  // verification: triangular shape (implies invertibility) and intertwining
  {
    auto tri = check_triangular(R, V.wts, W.wts, dat, +1);
    if (!tri.pass) throw PropagationFailure("triangularity failed: " + tri.witness);
    const ExactMatrix iv = ExactMatrix::identity(nv), iw = ExactMatrix::identity(nw);
    for (int node : dat.gens) {
      const auto a = static_cast<std::size_t>(node);
      const ExactMatrix Evw = ExactMatrix::kron(V.E[a], W.K[a]) + ExactMatrix::kron(iv, W.E[a]);
      const ExactMatrix Ewv = ExactMatrix::kron(W.E[a], V.K[a]) + ExactMatrix::kron(iw, V.E[a]);
      if (!(R * Evw == Ewv * R)) throw PropagationFailure("braiding does not intertwine a raising action");
      const ExactMatrix Fvw = ExactMatrix::kron(V.F[a], iw) + ExactMatrix::kron(V.Kinv[a], W.F[a]);
      const ExactMatrix Fwv = ExactMatrix::kron(W.F[a], iv) + ExactMatrix::kron(W.Kinv[a], V.F[a]);
      if (!(R * Fvw == Fwv * R)) throw PropagationFailure("braiding does not intertwine a lowering action");
      if (!(R * ExactMatrix::kron(V.K[a], W.K[a]) == ExactMatrix::kron(W.K[a], V.K[a]) * R))
        throw PropagationFailure("braiding does not intertwine a group-like action");
    }
  }
  return R;
}

/**
 * The eight-matrix family attached to a module and its dual, plus the derived
 * projector combinations and the contraction covector.
 *   rh = rho_{V,V}, rc = rho_{V*,V*}, ram = rho_{V*,V}, rgm = rho_{V,V*};
 *   ra, rg are the inverses of ram, rgm;
 *   Phat/Qhat shift rh by the eigenvalues q^{(lam,lam)} and
 *   -q^{(lam,lam)-(alpha_s,alpha_s)}; Pch/Qch do the same for rc;
 *   C[(k,l)] = sum_i rgm[(i,i),(k,l)], a covector on V (x) V*.
 */
struct RFamily {
  int N = 0;
  long long lamlam = 0;  // (lam, lam)
  long long qexp = 0;    // (lam, lam) - (alpha_s, alpha_s)
  ExactMatrix rh, rc, ram, rgm;
  ExactMatrix rhinv, rcinv, ra, rg;
  ExactMatrix Phat, Qhat, Pch, Qch;
  SparseVec C;
};

inline RFamily rmatrix_family(const WeightModule& V, const WeightModule& Vd, const BraidDatum& dat,
                              long long lamlam, long long asas) {
  RFamily f;
  f.N = V.dim;
  f.lamlam = lamlam;
  f.qexp = lamlam - asas;
  f.rh = braid(V, V, dat);
  f.rc = braid(Vd, Vd, dat);
  f.ram = braid(Vd, V, dat);
  f.rgm = braid(V, Vd, dat);
  auto inv_of = [](const ExactMatrix& m, const char* name) {
    auto i = inverse(m);
    if (!i) throw PropagationFailure(std::string("braiding ") + name + " is not invertible");
    return *i;
  };
  f.rhinv = inv_of(f.rh, "rh");
  f.rcinv = inv_of(f.rc, "rc");
  f.ra = inv_of(f.ram, "ram");
  f.rg = inv_of(f.rgm, "rgm");
  // inverse triangularity patterns
  for (auto [m, wa, wb] :
       std::initializer_list<std::tuple<const ExactMatrix*, const std::vector<Weight>*, const std::vector<Weight>*>>{
           {&f.rhinv, &V.wts, &V.wts}, {&f.rcinv, &Vd.wts, &Vd.wts}, {&f.ra, &V.wts, &Vd.wts}, {&f.rg, &Vd.wts, &V.wts}}) {
    auto rep = check_triangular(*m, *wa, *wb, dat, -1);
    if (!rep.pass) throw PropagationFailure("inverse triangularity failed: " + rep.witness);
  }
  const ExactMatrix id = ExactMatrix::identity(f.N * f.N);
  f.Phat = f.rh - LaurentRat::q_pow(static_cast<int>(lamlam)) * id;
  f.Qhat = f.rh + LaurentRat::q_pow(static_cast<int>(f.qexp)) * id;
  f.Pch = f.rc - LaurentRat::q_pow(static_cast<int>(lamlam)) * id;
  f.Qch = f.rc + LaurentRat::q_pow(static_cast<int>(f.qexp)) * id;
  for (int k = 0; k < f.N; ++k)
    for (int l = 0; l < f.N; ++l) {
      LaurentRat s = LaurentRat::zero();
      for (int i = 0; i < f.N; ++i) s += f.rgm.entry(i * f.N + i, k * f.N + l);
      if (!s.is_zero()) f.C.emplace_back(k * f.N + l, s);
    }
  return f;
}

/**
 * Hexagon/Yang-Baxter verification: for every triple (A,B,C) of tensor factors
 * drawn from {V, V*}, the two routes A(x)B(x)C -> C(x)B(x)A agree:
 *   (s_BC @ legs12)(s_AC @ legs23)(s_AB @ legs12)
 *     = (s_AB @ legs23)(s_AC @ legs12)(s_BC @ legs23).
 */
inline CheckReport verify_ybe(const RFamily& f) {
  const int n = f.N;
  auto sig = [&](bool adual, bool bdual) -> const ExactMatrix& {
    if (!adual && !bdual) return f.rh;
    if (adual && bdual) return f.rc;
    if (adual) return f.ram;  // V* (x) V -> V (x) V*
    return f.rgm;             // V (x) V* -> V* (x) V
  };
  for (int mask = 0; mask < 8; ++mask) {
    const bool A = mask & 4, B = mask & 2, C = mask & 1;
    const ExactMatrix lhs = embed_pair(sig(B, C), 0, 3, n) * embed_pair(sig(A, C), 1, 3, n) *
                            embed_pair(sig(A, B), 0, 3, n);
    const ExactMatrix rhs = embed_pair(sig(A, B), 1, 3, n) * embed_pair(sig(A, C), 0, 3, n) *
                            embed_pair(sig(B, C), 1, 3, n);
    if (!(lhs == rhs)) {
      std::string w = "triple (";
      w += (A ? "V*" : "V");
      w += ",";
      w += (B ? "V*" : "V");
      w += ",";
      w += (C ? "V*" : "V");
      w += ") fails the hexagon";
      return {false, w};
    }
  }
  return {};
}

/**
 * Contraction compatibilities of the covector C:
 *   C_23 (rg^- @ legs12) = C_12 (rc^- @ legs23)   on V (x) V* (x) V*
 *   C_23 (rh^- @ legs12) = C_12 (rg^- @ legs23)   on V (x) V  (x) V*
 */
inline CheckReport verify_crels(const RFamily& f) {
  const int n = f.N;
  const ExactMatrix a1 = contract_pair(f.C, 1, 3, n) * embed_pair(f.rgm, 0, 3, n);
  const ExactMatrix a2 = contract_pair(f.C, 0, 3, n) * embed_pair(f.rcinv, 1, 3, n);
  if (!(a1 == a2)) return {false, "first contraction identity fails"};
  const ExactMatrix b1 = contract_pair(f.C, 1, 3, n) * embed_pair(f.rhinv, 0, 3, n);
  const ExactMatrix b2 = contract_pair(f.C, 0, 3, n) * embed_pair(f.rgm, 1, 3, n);
  if (!(b1 == b2)) return {false, "second contraction identity fails"};
  return {};
}

/// Realize a Levi component as a standalone module (actions conjugated through
/// the embedding).  Verifies invariance; throws NotASubmodule otherwise.
inline std::shared_ptr<WeightModule> submodule(const WeightModule& V, const SubComponent& sc,
                                               const std::vector<int>& S) {
  const int sd = sc.emb.cols();
  auto M = std::make_shared<WeightModule>();
  M->rs = V.rs;
  M->dim = sd;
  const ExactMatrix P = sc.emb * sc.proj;
  auto conj = [&](const ExactMatrix& act, bool check) {
    if (check && !((ExactMatrix::identity(V.dim) - P) * (act * sc.emb)).is_zero())
      throw NotASubmodule("action does not preserve the subspace");
    return sc.proj * act * sc.emb;
  };
  for (int a = 0; a < V.rs->rank; ++a) {
    const bool levi = std::find(S.begin(), S.end(), a) != S.end();
    M->E.push_back(levi ? conj(V.E[static_cast<std::size_t>(a)], true) : ExactMatrix(sd, sd));
    M->F.push_back(levi ? conj(V.F[static_cast<std::size_t>(a)], true) : ExactMatrix(sd, sd));
    M->K.push_back(conj(V.K[static_cast<std::size_t>(a)], true));
    M->Kinv.push_back(conj(V.Kinv[static_cast<std::size_t>(a)], true));
  }
  for (int m = 0; m < sd; ++m) {
    // the column must be a weight vector of V
    const auto colw = [&]() -> Weight {
      for (int r = 0; r < V.dim; ++r)
        if (!sc.emb.entry(r, m).is_zero()) return V.wts[static_cast<std::size_t>(r)];
      throw NotASubmodule("zero embedding column");
    }();
    for (int r = 0; r < V.dim; ++r)
      if (!sc.emb.entry(r, m).is_zero() && V.wts[static_cast<std::size_t>(r)] != colw)
        throw NotASubmodule("embedding column mixes weights");
    M->wts.push_back(colw);
    M->labels.push_back("u" + std::to_string(m + 1));
  }
  M->hw = 0;
  return M;
}

struct RestrictedBraidReport {
  bool pass = false;
  long long exponent = 0;  // rho restricted = q^exponent * rho_Levi (this world's form)
  std::string witness;
};

/**
 * Restriction compatibility: projecting the full braiding of V (x) W to a pair
 * of Levi components agrees with the Levi braiding of the components up to the
 * factor q^{(nu1, nu2) - (nu1, nu2)_Levi} computed from the components'
 * highest weights.
 */
inline RestrictedBraidReport restricted_braid_check(const WeightModule& V, const WeightModule& W,
                                                    const SubComponent& vs, const SubComponent& ws,
                                                    const BraidDatum& full, const BraidDatum& levi,
                                                    const std::vector<int>& S) {
  RestrictedBraidReport rep;
  auto Vsub = submodule(V, vs, S);
  auto Wsub = submodule(W, ws, S);
  const ExactMatrix rho = braid(V, W, full);
  const ExactMatrix lhs = ExactMatrix::kron(ws.proj, vs.proj) * rho * ExactMatrix::kron(vs.emb, ws.emb);
  const ExactMatrix rhok = braid(*Vsub, *Wsub, levi);
  const Weight nu1 = Vsub->wts[0], nu2 = Wsub->wts[0];
  rep.exponent = full.pair(nu1, nu2) - levi.pair(nu1, nu2);
  const ExactMatrix expected = LaurentRat::q_pow(static_cast<int>(rep.exponent)) * rhok;
  if (lhs == expected) {
    rep.pass = true;
  } else {
    rep.witness = "restricted braiding does not match the scaled Levi braiding";
  }
  return rep;
}

}  // namespace qflag
