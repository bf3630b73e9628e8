#include <catch2/catch_amalgamated.hpp>

#include <qflag/repkit.hpp>

using namespace qflag;

namespace {

std::shared_ptr<const RootSystem> RS(char t, int n, int m = 1) {
  return std::make_shared<RootSystem>(RootSystem::build(t, n, m));
}

}  // namespace

TEST_CASE("rank-1 irreducibles by hand") {
  auto rs = RS('A', 1);
  auto V = build_irrep(rs, {1});
  REQUIRE(V->dim == 2);
  CHECK(V->hw == 0);
  CHECK(V->wts[0] == Weight{1});
  CHECK(V->wts[1] == Weight{-1});
  CHECK(V->words[0].empty());
  CHECK(V->words[1] == std::vector<int>{0});
  // F v1 = v2, E v2 = v1, K = diag(q^2, q^-2) in the rescaled form
  CHECK(V->F[0].entry(1, 0).is_one());
  CHECK(V->F[0].entry(0, 1).is_zero());
  CHECK(V->E[0].entry(0, 1).is_one());
  CHECK(V->K[0].entry(0, 0) == LaurentRat::q_pow(2));
  CHECK(V->K[0].entry(1, 1) == LaurentRat::q_pow(-2));

  auto W = build_irrep(rs, {2});
  REQUIRE(W->dim == 3);
  // E F^2 v = [2]_{q^2} F v
  CHECK(W->E[0].entry(1, 2) == qint_base(2, 2));
  CHECK(build_irrep(rs, {0})->dim == 1);
  CHECK_THROWS_AS(build_irrep(rs, {-1}), NonDominantWeight);
}

TEST_CASE("irreducible dimensions across the acceptance contexts") {
  // frozen classical values
  CHECK(build_irrep(RS('A', 2), {1, 0})->dim == 3);
  CHECK(build_irrep(RS('A', 2), {0, 1})->dim == 3);
  CHECK(build_irrep(RS('A', 2), {1, 1})->dim == 8);
  CHECK(build_irrep(RS('A', 2), {2, 0})->dim == 6);
  CHECK(build_irrep(RS('A', 3), {0, 1, 0})->dim == 6);
  CHECK(build_irrep(RS('B', 2), {1, 0})->dim == 5);
  CHECK(build_irrep(RS('B', 2), {0, 1})->dim == 4);
  CHECK(build_irrep(RS('B', 2), {2, 0})->dim == 14);
  CHECK(build_irrep(RS('A', 3), {0, 2, 0})->dim == 20);
  CHECK(build_irrep(RS('A', 3), {1, 0, 1})->dim == 15);
  // doubled-form world gives the same modules, rescaled exponents
  auto v2 = build_irrep(RS('A', 2, 2), {1, 0});
  CHECK(v2->dim == 3);
  CHECK(v2->K[0].entry(0, 0) == LaurentRat::q_pow(6));
}

TEST_CASE("defining relations hold on irreducibles, duals, tensors") {
  for (auto [t, n, lam] : std::vector<std::tuple<char, int, Weight>>{
           {'A', 1, {1}}, {'A', 1, {3}}, {'A', 2, {1, 0}}, {'A', 2, {1, 1}},
           {'B', 2, {1, 0}}, {'B', 2, {0, 1}}, {'A', 3, {0, 1, 0}}}) {
    auto rs = RS(t, n);
    auto V = build_irrep(rs, lam);
    CHECK(check_module_relations(*V));
    auto D = dual_module(*V);
    CHECK(check_module_relations(*D));
    auto T = tensor(*V, *D);
    CHECK(check_module_relations(*T));
  }
}

TEST_CASE("dual module pairs correctly") {
  auto rs = RS('A', 2);
  auto V = build_irrep(rs, {1, 0});
  auto D = dual_module(*V);
  REQUIRE(D->hw.has_value());
  // f_a has weight -wt(v_a); the distinguished vector is dual to the lowest one
  CHECK(D->wts[static_cast<std::size_t>(*D->hw)] == Weight{0, 1});
  // evaluation V* (x) V -> k is a module map: the covector c[(a,b)] = delta_ab
  // satisfies c . act(E) = 0, c . act(F) = 0, c . act(K) = c
  auto T = tensor(*D, *V);
  ExactMatrix c(1, T->dim);
  for (int a = 0; a < V->dim; ++a) c.set(0, a * V->dim + a, LaurentRat::one());
  for (int i = 0; i < rs->rank; ++i) {
    CHECK((c * T->E[static_cast<std::size_t>(i)]).is_zero());
    CHECK((c * T->F[static_cast<std::size_t>(i)]).is_zero());
    CHECK(c * T->K[static_cast<std::size_t>(i)] == c);
  }
}

TEST_CASE("highest weight vectors and isotypic decomposition") {
  auto rs = RS('A', 2);
  auto V = build_irrep(rs, {1, 0});
  auto T = tensor(*V, *V);
  auto hws = highest_weight_vectors(*T);
  REQUIRE(hws.size() == 2);
  CHECK(hws[0].wt == Weight{2, 0});
  CHECK(hws[1].wt == Weight{0, 1});
  CHECK(hws[0].vecs.size() == 1);
  CHECK(hws[1].vecs.size() == 1);

  auto comps = isotypic_decomposition(*T);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].mu == Weight{2, 0});
  CHECK(comps[0].irrep->dim == 6);
  CHECK(comps[1].mu == Weight{0, 1});
  CHECK(comps[1].irrep->dim == 3);
  ExactMatrix sum(T->dim, T->dim);
  for (const auto& ic : comps) {
    // proj . emb = id on the canonical model
    CHECK(ic.proj * ic.emb == ExactMatrix::identity(ic.irrep->dim));
    // emb intertwines the actions
    for (int a = 0; a < rs->rank; ++a) {
      CHECK(T->E[static_cast<std::size_t>(a)] * ic.emb == ic.emb * ic.irrep->E[static_cast<std::size_t>(a)]);
      CHECK(T->F[static_cast<std::size_t>(a)] * ic.emb == ic.emb * ic.irrep->F[static_cast<std::size_t>(a)]);
      CHECK(T->K[static_cast<std::size_t>(a)] * ic.emb == ic.emb * ic.irrep->K[static_cast<std::size_t>(a)]);
    }
    sum = sum + ic.emb * ic.proj;
  }
  // the components are a partition of unity
  CHECK(sum == ExactMatrix::identity(T->dim));

  // rank 1: V (x) V = V(2w) + V(0)
  auto rs1 = RS('A', 1);
  auto V1 = build_irrep(rs1, {1});
  auto comps1 = isotypic_decomposition(*tensor(*V1, *V1));
  REQUIRE(comps1.size() == 2);
  CHECK(comps1[0].mu == Weight{2});
  CHECK(comps1[1].mu == Weight{0});
}

TEST_CASE("cache returns the identical module object") {
  auto rs = RS('A', 2);
  auto a = irrep_cached(rs, {1, 0});
  auto b = irrep_cached(rs, {1, 0});
  CHECK(a.get() == b.get());
  CHECK(a->dim == 3);
}

TEST_CASE("Levi components") {
  auto rs = RS('A', 2);
  auto V = build_irrep(rs, {1, 0});
  // Levi part {node 1}: V splits as a line plus a 2-dimensional piece
  auto comps = levi_components(*V, {1});
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].top_wt == Weight{1, 0});
  CHECK(comps[0].emb.cols() == 1);
  CHECK(comps[1].top_wt == Weight{-1, 1});
  CHECK(comps[1].emb.cols() == 2);
  ExactMatrix sum(V->dim, V->dim);
  for (const auto& sc : comps) {
    CHECK(sc.proj * sc.emb == ExactMatrix::identity(sc.emb.cols()));
    // the projector commutes with the Levi generators and all K
    const ExactMatrix P = sc.emb * sc.proj;
    CHECK(P * V->E[1] == V->E[1] * P);
    CHECK(P * V->F[1] == V->F[1] * P);
    CHECK(P * V->K[0] == V->K[0] * P);
    CHECK(P * V->K[1] == V->K[1] * P);
    sum = sum + P;
  }
  CHECK(sum == ExactMatrix::identity(V->dim));

  // empty Levi: every basis direction is its own component
  auto singles = levi_components(*V, {});
  CHECK(singles.size() == 3);
}
