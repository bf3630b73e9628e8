// Tests for the flag-manifold contexts: first-layer data, coordinate and
// mixed algebras, z-relation tensors, fiber presentations and the structural
// checks built on them.

#include <catch2/catch_amalgamated.hpp>

#include "qflag/flagcalc.hpp"

using namespace qflag;

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("context construction and the first layer") {
  struct Probe {
    char type;
    int rank, s, m;
  };
  const Probe probes[] = {{'A', 1, 1, 1}, {'A', 2, 1, 2}, {'A', 2, 2, 2}, {'A', 3, 2, 4}, {'B', 2, 1, 3}};
  for (const auto& p : probes) {
    INFO(std::string(1, p.type) << p.rank << " node " << p.s);
    const FlagContext ctx = build_context(p.type, p.rank, p.s);
    CHECK(ctx.M == p.m);
    REQUIRE(ctx.V->hw.has_value());
    CHECK(*ctx.V->hw == ctx.N - 1);
    CHECK(ctx.V->wts[static_cast<std::size_t>(ctx.N - 1)] == ctx.lam);
    // the highest and lowest coordinates are never first-layer
    for (int i : ctx.I1) {
      CHECK(i != ctx.N - 1);
      CHECK(ctx.V->wts[static_cast<std::size_t>(i)] != ctx.lam);
    }
    // radical bijection: heights enumerate the radical multiset
    std::vector<int> got, want;
    for (const auto& b : ctx.beta) got.push_back(b.height);
    for (const auto& b : ctx.par.radical) want.push_back(b.height);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK(got == want);

    // distinguished covector entries in the rotated (highest-last) basis
    const int last = ctx.N - 1;
    const LaurentRat expect = LaurentRat::q_pow(static_cast<int>(-ctx.fam.lamlam));
    CHECK(sv_get(ctx.fam.C, last * ctx.N + last) == expect);
    for (int k = 0; k + 1 < ctx.N; ++k) CHECK(sv_get(ctx.fam.C, k * ctx.N + last).is_zero());
  }
  CHECK_THROWS_AS(build_context('B', 2, 2), NotIrreducibleFlag);
}

TEST_CASE("coordinate and mixed algebras are flat in low degree") {
  const FlagContext line = build_context('A', 1, 1);
  QuadraticAlgebra ring = coordinate_ring(line);
  for (int k = 0; k <= 3; ++k) CHECK(ring.dim(k) == k + 1);
  QuadraticAlgebra dual = coordinate_ring_dual(line);
  for (int k = 0; k <= 3; ++k) CHECK(dual.dim(k) == k + 1);
  QuadraticAlgebra mixed = mixed_algebra(line);
  CHECK(mixed.dim(0) == 1);
  CHECK(mixed.dim(1) == 4);
  CHECK(mixed.dim(2) == 10);
  CHECK(mixed.dim(3) == 20);

  const FlagContext plane = build_context('A', 2, 1);
  QuadraticAlgebra mixed2 = mixed_algebra(plane);
  CHECK(mixed2.dim(2) == 21);
  CHECK(mixed2.dim(3) == 56);
}

TEST_CASE("z relation families are counit-compatible") {
  for (const auto& [type, rank, s] : {std::tuple{'A', 1, 1}, {'A', 2, 1}}) {
    INFO(std::string(1, type) << rank << " node " << s);
    const FlagContext ctx = build_context(type, rank, s);
    const int n = ctx.N, last = n - 1;
    const int eps_col = ((last * n + last) * n + last) * n + last;
    for (const ExactMatrix& fam : {z_relation_family_one(ctx), z_relation_family_two(ctx)}) {
      bool clean = true;
      for (int r = 0; r < fam.rows(); ++r)
        if (!sv_get(fam.row(r), eps_col).is_zero()) clean = false;
      CHECK(clean);
    }
    // the families are full embeddings of the projector rows
    Echelon e(n * n * n * n);
    const ExactMatrix f1 = z_relation_family_one(ctx);
    for (int r = 0; r < f1.rows(); ++r)
      if (!f1.row(r).empty()) e.insert(f1.row(r));
    Echelon p(n * n);
    for (const auto& r : coordinate_relations(ctx)) p.insert(r);
    CHECK(e.rank() == n * n * p.rank());
  }
}

TEST_CASE("fiber presentations have binomial dimensions") {
  const FlagContext plane = build_context('A', 2, 1);
  CHECK(derham_dims(plane, Calculus::del).dims == std::vector<long long>{1, 2, 1, 0});
  CHECK(derham_dims(plane, Calculus::delbar).dims == std::vector<long long>{1, 2, 1, 0});
  CHECK(derham_dims(plane, Calculus::d).dims == std::vector<long long>{1, 4, 6, 4, 1, 0});

  const FlagContext quadric = build_context('B', 2, 1);
  const DimensionReport rep = derham_dims(quadric, Calculus::d);
  REQUIRE(rep.dims.size() == static_cast<std::size_t>(2 * quadric.M + 2));
  for (int k = 0; k <= 2 * quadric.M + 1; ++k)
    CHECK(rep.dims[static_cast<std::size_t>(k)] == binom(2 * quadric.M, k));
  const DimensionReport hol = derham_dims(quadric, Calculus::del);
  for (int k = 0; k <= quadric.M + 1; ++k)
    CHECK(hol.dims[static_cast<std::size_t>(k)] == binom(quadric.M, k));
}

TEST_CASE("graded commutation and the volume form") {
  const FlagContext line = build_context('A', 1, 1);
  CHECK(derham_dims(line, Calculus::d).dims == std::vector<long long>{1, 2, 1, 0});
  const CheckReport v1 = volume_form_check(line);
  INFO(v1.witness);
  CHECK(v1.pass);

  const FlagContext plane = build_context('A', 2, 1);
  const CheckReport g2 = graded_commutation_check(plane);
  INFO(g2.witness);
  CHECK(g2.pass);
  const CheckReport v2 = volume_form_check(plane);
  INFO(v2.witness);
  CHECK(v2.pass);
}

TEST_CASE("mixed centrality of the canonical element") {
  for (const auto& [type, rank, s] : {std::tuple{'A', 1, 1}, {'A', 2, 1}}) {
    INFO(std::string(1, type) << rank << " node " << s);
    const CheckReport rep = mixed_centrality_check(build_context(type, rank, s));
    INFO(rep.witness);
    CHECK(rep.pass);
  }
}

TEST_CASE("global wedge relations restrict to the fiber presentations") {
  for (const auto& [type, rank, s] : {std::tuple{'A', 2, 1}, {'B', 2, 1}}) {
    INFO(std::string(1, type) << rank << " node " << s);
    const CheckReport rep = fodc_fiber_check(build_context(type, rank, s));
    INFO(rep.witness);
    CHECK(rep.pass);
  }
}

TEST_CASE("braiding spectrum matches the Weyl dimension formula") {
  for (const auto& [type, rank, s] : {std::tuple{'A', 1, 1}, {'A', 2, 1}, {'B', 2, 1}}) {
    INFO(std::string(1, type) << rank << " node " << s);
    const CheckReport rep = spectrum_check(build_context(type, rank, s));
    INFO(rep.witness);
    CHECK(rep.pass);
  }
}
