#include <catch2/catch_amalgamated.hpp>

#include <qflag/rootdata.hpp>

using namespace qflag;

namespace {

// (dim g - rank)/2, an independent count of the positive roots
long long half_dim_minus_rank(char t, int n) {
  long long dim = 0;
  switch (t) {
    case 'A': dim = static_cast<long long>(n) * (n + 2); break;
    case 'B':
    case 'C': dim = static_cast<long long>(n) * (2 * n + 1); break;
    case 'D': dim = static_cast<long long>(n) * (2 * n - 1); break;
    case 'G': dim = 14; break;
    case 'F': dim = 52; break;
    case 'E': dim = n == 6 ? 78 : (n == 7 ? 133 : 248); break;
  }
  return (dim - n) / 2;
}

}  // namespace

TEST_CASE("invariant form, rank 1..3 snapshots") {
  auto a1 = RootSystem::build('A', 1);
  CHECK(a1.rescale == 2);
  CHECK(a1.gram == std::vector<std::vector<long long>>{{1}});
  CHECK(a1.pairing(a1.fundamental(0), a1.alpha(0)) == 2);
  CHECK(a1.pairing(a1.alpha(0), a1.alpha(0)) == 4);
  CHECK(a1.dprime(0) == 2);

  auto a2 = RootSystem::build('A', 2);
  CHECK(a2.rescale == 3);
  CHECK(a2.gram == std::vector<std::vector<long long>>{{2, 1}, {1, 2}});
  CHECK(a2.pairing(a2.alpha(0), a2.alpha(0)) == 6);
  CHECK(a2.dprime(0) == 3);

  auto b2 = RootSystem::build('B', 2);
  CHECK(b2.cartan == std::vector<std::vector<int>>{{2, -1}, {-2, 2}});
  CHECK(b2.d == std::vector<int>{2, 1});
  CHECK(b2.rescale == 1);
  CHECK(b2.gram == std::vector<std::vector<long long>>{{2, 1}, {1, 1}});
  CHECK(b2.pairing(b2.alpha(0), b2.alpha(0)) == 4);  // long
  CHECK(b2.pairing(b2.alpha(1), b2.alpha(1)) == 2);  // short

  auto a3 = RootSystem::build('A', 3);
  CHECK(a3.rescale == 4);
  CHECK(a3.gram == std::vector<std::vector<long long>>{{3, 2, 1}, {2, 4, 2}, {1, 2, 3}});
  CHECK(a3.pairing(a3.fundamental(1), a3.fundamental(1)) == 4);
  CHECK(a3.pairing(a3.alpha(1), a3.alpha(1)) == 8);

  // extra multiplier doubles every pairing
  auto a2x2 = RootSystem::build('A', 2, 2);
  CHECK(a2x2.rescale == 6);
  CHECK(a2x2.gram == std::vector<std::vector<long long>>{{4, 2}, {2, 4}});
}

TEST_CASE("symmetrizer is minimal and symmetrizes") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{
           {'A', 4}, {'B', 3}, {'C', 3}, {'D', 4}, {'G', 2}, {'F', 4}, {'E', 6}}) {
    auto rs = RootSystem::build(t, n);
    int g = 0;
    for (int i = 0; i < n; ++i) {
      CHECK(rs.d[static_cast<std::size_t>(i)] > 0);
      g = std::gcd(g, rs.d[static_cast<std::size_t>(i)]);
      for (int j = 0; j < n; ++j)
        CHECK(rs.d[static_cast<std::size_t>(i)] * rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
              rs.d[static_cast<std::size_t>(j)] * rs.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
    }
    CHECK(g == 1);
    // gram really is the matrix of pairings dual to the simple roots:
    // (omega_i, alpha_j) = delta_ij * dprime(j)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(rs.pairing(rs.fundamental(i), rs.alpha(j)) == (i == j ? rs.dprime(j) : 0));
  }
  CHECK(RootSystem::build('G', 2).d == std::vector<int>{1, 3});
  CHECK(RootSystem::build('F', 4).d == std::vector<int>{2, 2, 1, 1});
  CHECK(RootSystem::build('C', 3).d == std::vector<int>{1, 1, 2});
}

TEST_CASE("positive root closure") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4},
                                                       {'B', 2}, {'B', 3}, {'B', 4}, {'C', 3},
                                                       {'C', 4}, {'D', 4}, {'G', 2}, {'F', 4},
                                                       {'E', 6}}) {
    auto rs = RootSystem::build(t, n);
    CHECK(static_cast<long long>(rs.positive.size()) == half_dim_minus_rank(t, n));
    // sorted by (height, lex), heights consistent, all roots have equal-length strings
    for (std::size_t i = 0; i + 1 < rs.positive.size(); ++i) {
      const auto &a = rs.positive[i], &b = rs.positive[i + 1];
      CHECK((a.height < b.height || (a.height == b.height && a.coeff < b.coeff)));
    }
    for (const auto& r : rs.positive) {
      int h = 0;
      for (int c : r.coeff) h += c;
      CHECK(h == r.height);
      CHECK(rs.height(r.fw) == r.height);
      // (beta, beta) is one of the admissible root lengths
      const long long bb = rs.pairing(r.fw, r.fw);
      bool ok = false;
      for (int i = 0; i < n; ++i) ok |= (bb == 2 * rs.dprime(i));
      CHECK(ok);
    }
    CHECK(rs.positive[rs.theta].height == rs.positive.back().height);
  }
  auto a2 = RootSystem::build('A', 2);
  CHECK(a2.positive[a2.theta].fw == weight_add(a2.alpha(0), a2.alpha(1)));
}

TEST_CASE("height and dominance") {
  auto a2 = RootSystem::build('A', 2);
  CHECK(a2.height(a2.zero_weight()) == 0);
  CHECK(a2.height(weight_add(a2.alpha(0), a2.alpha(1))) == 2);
  CHECK_THROWS_AS(a2.height(a2.fundamental(0)), NotInPositiveCone);  // not in the root lattice
  CHECK_THROWS_AS(a2.height(weight_sub(a2.zero_weight(), a2.alpha(0))), NotInPositiveCone);
  CHECK(a2.dominates(a2.alpha(0), a2.zero_weight()));
  CHECK(a2.dominates(a2.alpha(0), a2.alpha(0)));
  CHECK_FALSE(a2.dominates_strictly(a2.alpha(0), a2.alpha(0)));
  CHECK_FALSE(a2.dominates(a2.alpha(0), a2.alpha(1)));
  CHECK_FALSE(a2.dominates(a2.fundamental(0), a2.zero_weight()));
}

TEST_CASE("parabolic data and the irreducible-flag condition") {
  // classical list for rank <= 4: (A_n, any s), (B_n, 1), (C_n, n), (D_n, 1 | n-1 | n)
  for (int n = 1; n <= 4; ++n)
    for (int s = 1; s <= n; ++s) CHECK_NOTHROW(parabolic(RootSystem::build('A', n), s));
  for (int n = 2; n <= 4; ++n) {
    auto rs = RootSystem::build('B', n);
    CHECK_NOTHROW(parabolic(rs, 1));
    for (int s = 2; s <= n; ++s) CHECK_THROWS_AS(parabolic(rs, s), NotIrreducibleFlag);
    auto rc = RootSystem::build('C', n);
    CHECK_NOTHROW(parabolic(rc, n));
    for (int s = 1; s < n; ++s) CHECK_THROWS_AS(parabolic(rc, s), NotIrreducibleFlag);
  }
  {
    auto rs = RootSystem::build('D', 4);
    for (int s : {1, 3, 4}) CHECK_NOTHROW(parabolic(rs, s));
    CHECK_THROWS_AS(parabolic(rs, 2), NotIrreducibleFlag);
  }
  for (int s : {1, 2}) CHECK_THROWS_AS(parabolic(RootSystem::build('G', 2), s), NotIrreducibleFlag);
  CHECK_THROWS_AS(parabolic(RootSystem::build('A', 2), 3), InvalidArgument);

  // radical sizes: M for the acceptance contexts
  CHECK(parabolic(RootSystem::build('A', 1), 1).radical.size() == 1);
  CHECK(parabolic(RootSystem::build('A', 2), 1).radical.size() == 2);
  CHECK(parabolic(RootSystem::build('A', 2), 2).radical.size() == 2);
  CHECK(parabolic(RootSystem::build('A', 3), 2).radical.size() == 4);
  CHECK(parabolic(RootSystem::build('B', 2), 1).radical.size() == 3);

  // radical + levi part = all positive roots; radical coefficients at s are exactly 1
  auto rs = RootSystem::build('A', 3);
  auto p = parabolic(rs, 2);
  CHECK(p.levi == std::vector<int>{0, 2});
  CHECK(p.radical.size() + p.levi_pos.size() == rs.positive.size());
  for (const auto& r : p.radical) CHECK(r.coeff[1] == 1);
  for (const auto& r : p.levi_pos) CHECK(r.coeff[1] == 0);
}

TEST_CASE("Weyl dimension formula") {
  auto dim = [](char t, int n, Weight lam) {
    auto rs = RootSystem::build(t, n);
    return weyl_dim(rs, lam);
  };
  CHECK(dim('A', 1, {1}) == 2);
  CHECK(dim('A', 1, {2}) == 3);
  CHECK(dim('A', 2, {1, 0}) == 3);
  CHECK(dim('A', 2, {2, 0}) == 6);
  CHECK(dim('A', 2, {1, 1}) == 8);
  CHECK(dim('A', 3, {0, 1, 0}) == 6);
  CHECK(dim('A', 3, {0, 2, 0}) == 20);
  CHECK(dim('A', 3, {1, 0, 1}) == 15);
  CHECK(dim('B', 2, {1, 0}) == 5);
  CHECK(dim('B', 2, {0, 1}) == 4);
  CHECK(dim('B', 2, {2, 0}) == 14);
  CHECK(dim('B', 3, {1, 0, 0}) == 7);
  CHECK(dim('C', 3, {0, 0, 1}) == 14);
  CHECK(dim('G', 2, {1, 0}) == 7);
  CHECK(dim('D', 4, {1, 0, 0, 0}) == 8);
  CHECK(dim('D', 4, {0, 0, 0, 1}) == 8);
  CHECK(dim('E', 6, {1, 0, 0, 0, 0, 0}) == 27);
  // rescaling the form does not change dimensions
  CHECK(weyl_dim(RootSystem::build('A', 2, 2), {1, 0}) == 3);
}
