/**
 * @file rootdata.hpp
 * @brief Finite root systems: Cartan matrices, invariant form, positive roots,
 *        parabolic (cominuscule-type) data.
 *
 * Weights are integer vectors in fundamental-weight coordinates.  The
 * invariant symmetric form is rescaled by the minimal positive integer making
 * all pairings of fundamental weights integral (times an optional extra
 * multiplier, which callers use when they need half-integral Levi pairings to
 * become integral).  The exponents d'_i with q_i = q^{d'_i} are rescale * d_i.
 */

#pragma once

#include "qq.hpp"

#include <map>
#include <optional>
#include <tuple>

namespace qflag {

struct NotIrreducibleFlag : std::domain_error {
  explicit NotIrreducibleFlag(const std::string& m) : std::domain_error(m) {}
};
struct NotInPositiveCone : std::domain_error {
  NotInPositiveCone() : std::domain_error("weight is not a nonnegative integer sum of simple roots") {}
};

/// Fundamental-weight coordinates.
using Weight = std::vector<int>;

inline Weight weight_add(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Weight weight_sub(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline std::string weight_str(const Weight& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  s += ']';
  return s;
}

struct PosRoot {
  std::vector<int> coeff;  // simple-root coordinates
  Weight fw;               // the same root in fundamental-weight coordinates
  int height = 0;
};

namespace detail {

// Solve the integer square system A x = b exactly over Q.
inline std::vector<Rat> solve_rational(std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
  const std::size_t n = A.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) throw InvalidArgument("singular system");
    std::swap(A[p], A[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      const Rat f = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return x;
}

}  // namespace detail

class RootSystem {
 public:
  char type = 0;
  int rank = 0;
  int multiplier = 1;                      // extra form scaling requested by the caller
  long long rescale = 1;                   // total scaling of the invariant form
  std::vector<std::vector<int>> cartan;    // cartan[i][j] = <alpha_j, alpha_i^vee>
  std::vector<int> d;                      // minimal symmetrizer: d_i a_ij = d_j a_ji
  std::vector<std::vector<long long>> gram;  // (omega_i, omega_j), rescaled
  std::vector<PosRoot> positive;           // sorted by (height, lex simple-root coords)
  std::size_t theta = 0;                   // index of the highest root

  static RootSystem build(char type, int rank, int multiplier = 1);

  long long pairing(const Weight& a, const Weight& b) const {
    long long s = 0;
    for (int i = 0; i < rank; ++i) {
      if (!a[static_cast<std::size_t>(i)]) continue;
      for (int j = 0; j < rank; ++j)
        s += static_cast<long long>(a[static_cast<std::size_t>(i)]) *
             gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
             b[static_cast<std::size_t>(j)];
    }
    return s;
  }

  /// (alpha_i, alpha_i)/2 in the rescaled form; q_i = q^{dprime(i)}.
  long long dprime(int i) const { return rescale * d[static_cast<std::size_t>(i)]; }

  Weight alpha(int i) const {  // column i of the Cartan matrix
    Weight w(static_cast<std::size_t>(rank));
    for (int k = 0; k < rank; ++k)
      w[static_cast<std::size_t>(k)] = cartan[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    return w;
  }

  Weight fundamental(int i) const {
    Weight w(static_cast<std::size_t>(rank), 0);
    w[static_cast<std::size_t>(i)] = 1;
    return w;
  }

  Weight zero_weight() const { return Weight(static_cast<std::size_t>(rank), 0); }

  /// Integer simple-root coordinates of mu, if mu lies in the root lattice.
  std::optional<std::vector<int>> root_coords(const Weight& mu) const {
    std::vector<std::vector<Rat>> A(static_cast<std::size_t>(rank),
                                    std::vector<Rat>(static_cast<std::size_t>(rank)));
    std::vector<Rat> b(static_cast<std::size_t>(rank));
    for (int i = 0; i < rank; ++i) {
      b[static_cast<std::size_t>(i)] = mu[static_cast<std::size_t>(i)];
      for (int j = 0; j < rank; ++j)
        A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    const auto x = detail::solve_rational(std::move(A), std::move(b));
    std::vector<int> n(static_cast<std::size_t>(rank));
    for (int i = 0; i < rank; ++i) {
      const Rat& v = x[static_cast<std::size_t>(i)];
      if (boost::multiprecision::denominator(v) != 1) return std::nullopt;
      n[static_cast<std::size_t>(i)] = static_cast<int>(boost::multiprecision::numerator(v));
    }
    return n;
  }

  /// Height of mu as a nonnegative integer combination of simple roots.
  int height(const Weight& mu) const {
    const auto n = root_coords(mu);
    if (!n) throw NotInPositiveCone{};
    int h = 0;
    for (int c : *n) {
      if (c < 0) throw NotInPositiveCone{};
      h += c;
    }
    return h;
  }

  /// a dominates b: a - b is a nonnegative integer sum of simple roots.
  bool dominates(const Weight& a, const Weight& b) const {
    const auto n = root_coords(weight_sub(a, b));
    if (!n) return false;
    for (int c : *n)
      if (c < 0) return false;
    return true;
  }

  /// Strict version: dominates and a != b.
  bool dominates_strictly(const Weight& a, const Weight& b) const {
    return a != b && dominates(a, b);
  }
};

inline RootSystem RootSystem::build(char type, int rank, int multiplier) {
  const int n = rank;
  auto bad = [&](const std::string& m) { return InvalidArgument(m); };
  if (multiplier < 1) throw bad("multiplier must be positive");
  RootSystem rs;
  rs.type = type;
  rs.rank = n;
  rs.multiplier = multiplier;

  // Cartan matrix, Bourbaki numbering
  std::vector<std::pair<int, int>> edges;          // single bonds (symmetric -1)
  std::vector<std::tuple<int, int, int, int>> sp;  // (i, j, a_ij, a_ji)
  switch (type) {
    case 'A':
      if (n < 1) throw bad("type A needs rank >= 1");
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case 'B':
      if (n < 2) throw bad("type B needs rank >= 2");
      for (int i = 0; i + 2 < n; ++i) edges.emplace_back(i, i + 1);
      sp.emplace_back(n - 2, n - 1, -1, -2);
      break;
    case 'C':
      if (n < 2) throw bad("type C needs rank >= 2");
      for (int i = 0; i + 2 < n; ++i) edges.emplace_back(i, i + 1);
      sp.emplace_back(n - 2, n - 1, -2, -1);
      break;
    case 'D':
      if (n < 3) throw bad("type D needs rank >= 3");
      for (int i = 0; i + 4 < n + 1; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(n - 3, n - 2);
      edges.emplace_back(n - 3, n - 1);
      break;
    case 'E':
      if (n < 6 || n > 8) throw bad("type E needs rank 6..8");
      edges = {{0, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}};
      if (n >= 7) edges.emplace_back(5, 6);
      if (n == 8) edges.emplace_back(6, 7);
      break;
    case 'F':
      if (n != 4) throw bad("type F needs rank 4");
      edges = {{0, 1}, {2, 3}};
      sp.emplace_back(1, 2, -1, -2);
      break;
    case 'G':
      if (n != 2) throw bad("type G needs rank 2");
      sp.emplace_back(0, 1, -3, -1);
      break;
    default:
      throw bad("unknown type");
  }
  rs.cartan.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
  for (auto [i, j] : edges) {
    rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -1;
    rs.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -1;
  }
  for (auto [i, j, aij, aji] : sp) {
    rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = aij;
    rs.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = aji;
  }

  // symmetrizer: d_i a_ij = d_j a_ji, minimal positive integers (graph is connected)
  {
    std::vector<Rat> dr(static_cast<std::size_t>(n), Rat(0));
    dr[0] = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (i == j || rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == 0) continue;
        if (dr[static_cast<std::size_t>(j)] != 0) continue;
        // d_j = d_i * a_ij / a_ji
        dr[static_cast<std::size_t>(j)] =
            dr[static_cast<std::size_t>(i)] *
            Rat(rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) /
            Rat(rs.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
        stack.push_back(j);
      }
    }
    Int l = 1;
    for (const auto& v : dr) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(v));
    Int g = 0;
    std::vector<Int> di(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      di[static_cast<std::size_t>(i)] = boost::multiprecision::numerator(dr[static_cast<std::size_t>(i)]) * l /
                                        boost::multiprecision::denominator(dr[static_cast<std::size_t>(i)]);
      g = boost::multiprecision::gcd(g, di[static_cast<std::size_t>(i)]);
    }
    rs.d.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rs.d[static_cast<std::size_t>(i)] = static_cast<int>(di[static_cast<std::size_t>(i)] / g);
  }

  // Gram matrix of fundamental weights: G = diag(d) B^{-1} diag(d), B = diag(d) A
  {
    std::vector<std::vector<Rat>> ginv;  // columns of B^{-1} via solves
    std::vector<std::vector<Rat>> G(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n)));
    for (int c = 0; c < n; ++c) {
      std::vector<std::vector<Rat>> B(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n)));
      std::vector<Rat> e(static_cast<std::size_t>(n), Rat(0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              Rat(rs.d[static_cast<std::size_t>(i)]) * rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      e[static_cast<std::size_t>(c)] = 1;
      const auto col = detail::solve_rational(std::move(B), std::move(e));
      for (int r = 0; r < n; ++r)
        G[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
            Rat(rs.d[static_cast<std::size_t>(r)]) * rs.d[static_cast<std::size_t>(c)] * col[static_cast<std::size_t>(r)];
    }
    Int l = 1;
    for (const auto& row : G)
      for (const auto& v : row) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(v));
    rs.rescale = static_cast<long long>(l) * multiplier;
    rs.gram.assign(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Rat v = G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * rs.rescale;
        rs.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            static_cast<long long>(boost::multiprecision::numerator(v));
      }
  }

  // positive roots by closing root strings upward in height
  {
    std::vector<PosRoot> roots;
    std::map<std::vector<int>, int> seen;  // simple-root coords -> index
    for (int i = 0; i < n; ++i) {
      PosRoot r;
      r.coeff.assign(static_cast<std::size_t>(n), 0);
      r.coeff[static_cast<std::size_t>(i)] = 1;
      r.fw = rs.alpha(i);
      r.height = 1;
      seen[r.coeff] = static_cast<int>(roots.size());
      roots.push_back(std::move(r));
    }
    for (std::size_t idx = 0; idx < roots.size(); ++idx) {
      const PosRoot cur = roots[idx];
      for (int i = 0; i < n; ++i) {
        // p = largest k with beta - k alpha_i still a root
        int p = 0;
        std::vector<int> down = cur.coeff;
        for (;;) {
          down[static_cast<std::size_t>(i)] -= 1;
          bool nonneg = true;
          for (int c : down)
            if (c < 0) nonneg = false;
          if (!nonneg || !seen.count(down)) break;
          ++p;
        }
        long long pair_i = 0;  // <beta, alpha_i^vee>
        for (int j = 0; j < n; ++j)
          pair_i += static_cast<long long>(rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) *
                    cur.coeff[static_cast<std::size_t>(j)];
        if (p - pair_i > 0) {
          std::vector<int> up = cur.coeff;
          up[static_cast<std::size_t>(i)] += 1;
          if (!seen.count(up)) {
            PosRoot r;
            r.coeff = up;
            r.fw = weight_add(cur.fw, rs.alpha(i));
            r.height = cur.height + 1;
            seen[up] = static_cast<int>(roots.size());
            roots.push_back(std::move(r));
          }
        }
      }
    }
    std::sort(roots.begin(), roots.end(), [](const PosRoot& a, const PosRoot& b) {
      if (a.height != b.height) return a.height < b.height;
      return a.coeff < b.coeff;
    });
    rs.positive = std::move(roots);
    rs.theta = rs.positive.size() - 1;
    if (rs.positive.size() > 1 &&
        rs.positive[rs.positive.size() - 2].height == rs.positive.back().height)
      throw InvalidArgument("highest root is not unique");
  }
  return rs;
}

/// Data of the maximal parabolic at node s (1-based).
struct Parabolic {
  int s = 0;                     // distinguished node, 1-based
  std::vector<int> levi;         // remaining nodes, 0-based ascending
  std::vector<PosRoot> radical;  // positive roots containing alpha_s (coefficient 1)
  std::vector<PosRoot> levi_pos; // positive roots of the Levi part
};

/// NotIrreducibleFlag unless alpha_s occurs with coefficient exactly 1 in the
/// highest root (the flag manifold is then irreducible with abelian nilradical).
inline Parabolic parabolic(const RootSystem& rs, int s) {
  if (s < 1 || s > rs.rank) throw InvalidArgument("parabolic node out of range");
  const int c = rs.positive[rs.theta].coeff[static_cast<std::size_t>(s - 1)];
  if (c != 1)
    throw NotIrreducibleFlag("node " + std::to_string(s) + " has coefficient " + std::to_string(c) +
                             " in the highest root");
  Parabolic p;
  p.s = s;
  for (int i = 0; i < rs.rank; ++i)
    if (i != s - 1) p.levi.push_back(i);
  for (const auto& r : rs.positive) {
    if (r.coeff[static_cast<std::size_t>(s - 1)] >= 1) p.radical.push_back(r);
    else p.levi_pos.push_back(r);
  }
  return p;
}

/// Product formula for the dimension of the irreducible with highest weight lam.
inline Int weyl_dim(const RootSystem& rs, const Weight& lam) {
  Weight rho(static_cast<std::size_t>(rs.rank), 1);
  Int num = 1, den = 1;
  for (const auto& b : rs.positive) {
    num *= rs.pairing(weight_add(lam, rho), b.fw);
    den *= rs.pairing(rho, b.fw);
  }
  return num / den;
}

}  // namespace qflag
