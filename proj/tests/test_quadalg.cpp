#include <catch_amalgamated.hpp>

#include <qflag/quadalg.hpp>

using namespace qflag;

namespace {

// independent oracle: dim of degree k as the corank of all relation
// placements inside the full tensor power
long long oracle_dim(int n, const std::vector<SparseVec>& rels, int k) {
  if (k == 0) return 1;
  if (k == 1) return n;
  long long nk = 1;
  for (int i = 0; i < k; ++i) nk *= n;
  Echelon e(static_cast<int>(nk));
  for (int i = 0; i + 2 <= k; ++i) {
    long long pre = 1, post = 1;
    for (int t = 0; t < i; ++t) pre *= n;
    for (int t = i + 2; t < k; ++t) post *= n;
    for (const auto& r : rels)
      for (long long a = 0; a < pre; ++a)
        for (long long b = 0; b < post; ++b) {
          SparseVec row;
          for (const auto& [uv, c] : r)
            row.emplace_back(static_cast<int>((a * n * n + uv) * post + b), c);
          e.insert(std::move(row));
        }
  }
  return nk - e.rank();
}

struct Rng {
  std::uint64_t s;
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  int uniform(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

LaurentRat small_coeff(Rng& rng) {
  return LaurentRat::monomial(Int(rng.uniform(-2, 2)), rng.uniform(-1, 1));
}

}  // namespace

TEST_CASE("polynomial and exterior dimensions") {
  const int n = 3;
  std::vector<SparseVec> comm, ext;
  for (int i = 0; i < n; ++i) {
    ext.push_back(sv_unit(i * n + i));
    for (int j = i + 1; j < n; ++j) {
      comm.push_back(sv_combine(LaurentRat::one(), sv_unit(i * n + j), -LaurentRat::one(), sv_unit(j * n + i)));
      ext.push_back(sv_combine(LaurentRat::one(), sv_unit(i * n + j), LaurentRat::q_pow(1), sv_unit(j * n + i)));
    }
  }
  QuadraticAlgebra poly(n, comm);
  const long long expect_poly[] = {1, 3, 6, 10, 15};
  for (int k = 0; k <= 4; ++k) CHECK(poly.dim(k) == expect_poly[k]);

  QuadraticAlgebra grass(n, ext);
  const long long expect_ext[] = {1, 3, 3, 1, 0, 0};
  for (int k = 0; k <= 5; ++k) CHECK(grass.dim(k) == expect_ext[k]);

  QuadraticAlgebra free2(2, {});
  for (int k = 0; k <= 5; ++k) CHECK(free2.dim(k) == (1 << k));
}

TEST_CASE("dimensions agree with the placement oracle") {
  Rng rng{0x9e3779b97f4a7c15ull};
  for (int trial = 0; trial < 12; ++trial) {
    const int n = rng.uniform(2, 3);
    const int nrels = rng.uniform(1, 2);
    std::vector<SparseVec> rels;
    for (int r = 0; r < nrels; ++r) {
      std::vector<LaurentRat> dense(static_cast<std::size_t>(n * n));
      const int terms = rng.uniform(1, 3);
      for (int t = 0; t < terms; ++t)
        dense[static_cast<std::size_t>(rng.uniform(0, n * n - 1))] += small_coeff(rng);
      SparseVec sv;
      for (int i = 0; i < n * n; ++i)
        if (!dense[static_cast<std::size_t>(i)].is_zero()) sv.emplace_back(i, dense[static_cast<std::size_t>(i)]);
      if (!sv.empty()) rels.push_back(std::move(sv));
    }
    QuadraticAlgebra alg(n, rels);
    for (int k = 0; k <= 4; ++k) {
      INFO("trial " << trial << " n " << n << " degree " << k);
      CHECK(alg.dim(k) == oracle_dim(n, rels, k));
    }
  }
}

TEST_CASE("quantum plane actions descend and obey the commutator") {
  // generators x, y with x y = q^-2 y x, carrying the rank-one module action
  // E y = x, F x = y, K = diag(q^2, q^-2)
  std::vector<SparseVec> rels{
      sv_combine(LaurentRat::one(), sv_unit(0 * 2 + 1), -LaurentRat::q_pow(-2), sv_unit(1 * 2 + 0))};
  QuadraticAlgebra alg(2, rels);
  for (int k = 0; k <= 5; ++k) CHECK(alg.dim(k) == k + 1);

  ExactMatrix E(2, 2), F(2, 2), K(2, 2), Kinv(2, 2), I = ExactMatrix::identity(2);
  E.set(0, 1, LaurentRat::one());
  F.set(1, 0, LaurentRat::one());
  K.set(0, 0, LaurentRat::q_pow(2));
  K.set(1, 1, LaurentRat::q_pow(-2));
  Kinv.set(0, 0, LaurentRat::q_pow(-2));
  Kinv.set(1, 1, LaurentRat::q_pow(2));

  const int kmax = 4;
  const auto aK = induced_grouplike(alg, K, kmax);
  const auto aKi = induced_grouplike(alg, Kinv, kmax);
  const auto aE = induced_derivation(alg, E, I, K, kmax);
  const auto aF = induced_derivation(alg, F, Kinv, I, kmax);
  const LaurentRat denom = LaurentRat::q_pow(2) - LaurentRat::q_pow(-2);
  for (int k = 0; k <= kmax; ++k) {
    CHECK(aK[static_cast<std::size_t>(k)] * aKi[static_cast<std::size_t>(k)] ==
          ExactMatrix::identity(alg.dim(k)));
    const ExactMatrix lhs = aE[static_cast<std::size_t>(k)] * aF[static_cast<std::size_t>(k)] -
                            aF[static_cast<std::size_t>(k)] * aE[static_cast<std::size_t>(k)];
    const ExactMatrix rhs =
        denom.inv() * (aK[static_cast<std::size_t>(k)] - aKi[static_cast<std::size_t>(k)]);
    CHECK(lhs == rhs);
  }

  // the untwisted Leibniz rule does not preserve the relation
  CHECK_THROWS_AS(induced_derivation(alg, E, I, I, 2), InvalidArgument);
}

TEST_CASE("filtered membership") {
  std::vector<SparseVec> rels{
      sv_combine(LaurentRat::one(), sv_unit(1), -LaurentRat::q_pow(-2), sv_unit(2))};
  QuadraticAlgebra alg(2, rels);
  const SparseVec t = rels[0];
  CHECK_THROWS_AS(alg.filtered_relation_check(t), FiltrationUnset);

  alg.set_filtration({-1, -2});  // x sits higher than y
  CHECK(alg.filtered_relation_check(t));
  // adding a strictly lower pair (y,y) keeps membership
  CHECK(alg.filtered_relation_check(sv_combine(LaurentRat::one(), t, LaurentRat(7), sv_unit(3))));
  // adding the higher pair (x,x) breaks it
  CHECK_FALSE(alg.filtered_relation_check(sv_combine(LaurentRat::one(), t, LaurentRat(7), sv_unit(0))));
  // a wrong straightening coefficient is not a relation
  CHECK_FALSE(alg.filtered_relation_check(
      sv_combine(LaurentRat::one(), sv_unit(1), LaurentRat(17), sv_unit(2))));
}

TEST_CASE("degree three centrality") {
  std::vector<SparseVec> comm{
      sv_combine(LaurentRat::one(), sv_unit(1), -LaurentRat::one(), sv_unit(2))};
  QuadraticAlgebra poly(2, comm);
  const SparseVec c = sv_unit(1);  // the element x y
  CHECK(poly.central_degree3_check(c, 0));
  CHECK(poly.central_degree3_check(c, 1));

  std::vector<SparseVec> qp{
      sv_combine(LaurentRat::one(), sv_unit(1), -LaurentRat::q_pow(-2), sv_unit(2))};
  QuadraticAlgebra plane(2, qp);
  CHECK_FALSE(plane.central_degree3_check(c, 0));
}

TEST_CASE("errors and report rendering") {
  QuadraticAlgebra alg(2, {});
  CHECK_THROWS_AS(alg.pi(2, SparseVec{{4, LaurentRat::one()}}), DegreeMismatch);
  CHECK_THROWS_AS(alg.mul(0, 0), InvalidArgument);
  CHECK_THROWS_AS(alg.mul(1, 5), InvalidArgument);
  CHECK_THROWS_AS(QuadraticAlgebra(2, {sv_unit(9)}), DegreeMismatch);

  std::vector<SparseVec> qp{
      sv_combine(LaurentRat::one(), sv_unit(1), -LaurentRat::q_pow(-2), sv_unit(2))};
  QuadraticAlgebra plane(2, qp);
  CHECK(dimension_report(plane, 3).render() == "0\t1\n1\t2\n2\t3\n3\t4\n");
}
