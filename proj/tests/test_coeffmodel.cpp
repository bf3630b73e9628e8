#include <catch_amalgamated.hpp>

#include <qflag/coeffmodel.hpp>

#include <random>

using namespace qflag;

TEST_CASE("a coefficient evaluated at the unit returns the pairing") {
  auto ctx = build_context('A', 1, 1);
  const MCElement el = mc(ctx.V, {{0, LaurentRat::q_pow(2)}, {1, LaurentRat(3)}},
                          {{0, LaurentRat::one()}, {1, LaurentRat::q_pow(-1)}});
  const LaurentRat want = LaurentRat::q_pow(2) + LaurentRat(3) * LaurentRat::q_pow(-1);
  CHECK(evaluate_direct(el, {}) == want);
  CHECK(evaluate(el, {}) == want);
}

TEST_CASE("products of rank-one generators live on the expected weights") {
  auto ctx = build_context('A', 1, 1);
  const Weight adj{2}, triv{0};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const MCElement z = z_generator(ctx, i, j);
      CHECK_FALSE(z.canonical().empty());
      for (const auto& [mu, block] : z.canonical()) {
        (void)block;
        CHECK((mu == adj || mu == triv));
      }
    }
  // the diagonal corner pairs highest with lowest, so both components appear
  CHECK(z_generator(ctx, 1, 1).canonical().size() == 2);
}

TEST_CASE("the unit element is a two-sided identity") {
  auto ctx = build_context('A', 2, 1);
  const MCElement one = unit_element(ctx.rs);
  const MCElement z = z_generator(ctx, 0, 2);
  CHECK(equal(product(one, z), z));
  CHECK(equal(product(z, one), z));
  CHECK(equal(product(one, one), one));
}

TEST_CASE("the coefficient product is associative in canonical form") {
  auto ctx = build_context('A', 2, 1);
  const int hw = ctx.N - 1;
  const MCElement a = mc(ctx.V, {{0, LaurentRat::one()}}, {{hw, LaurentRat::one()}});
  const MCElement b = mc(ctx.Vd, {{1, LaurentRat::one()}}, {{hw, LaurentRat::one()}});
  const MCElement c = mc(ctx.V, {{2, LaurentRat::one()}, {0, LaurentRat::q_pow(-2)}}, {{hw, LaurentRat::one()}});
  CHECK(equal(product(product(a, b), c), product(a, product(b, c))));
  const MCElement sum = a + LaurentRat::q_pow(3) * a;
  CHECK(equal(product(sum, b), product(a + LaurentRat::q_pow(3) * a, b)));
}

TEST_CASE("counit table of the z generators") {
  for (auto [type, rank] : {std::pair{'A', 1}, std::pair{'A', 2}}) {
    auto ctx = build_context(type, rank, 1);
    const int hw = ctx.N - 1;
    for (int i = 0; i < ctx.N; ++i)
      for (int j = 0; j < ctx.N; ++j) {
        const LaurentRat eps = evaluate_direct(z_generator(ctx, i, j), {});
        if (i == hw && j == hw)
          CHECK(eps == LaurentRat::one());
        else
          CHECK(eps.is_zero());
      }
  }
  CHECK_THROWS_AS(z_generator(build_context('A', 1, 1), 2, 0), InvalidArgument);
}

TEST_CASE("rank-one evaluation oracle at single generators") {
  auto ctx = build_context('A', 1, 1);
  // F sends the highest vector of V (x) V* to v_1 (x) f_2, so only z_12 sees it
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const MCElement z = z_generator(ctx, i, j);
      const LaurentRat at_f = evaluate_direct(z, {{GenKind::F, 0}});
      if (i == 0 && j == 1)
        CHECK(at_f == LaurentRat::one());
      else
        CHECK(at_f.is_zero());
      // K acts trivially on the product of extreme vectors
      const LaurentRat at_k = evaluate_direct(z, {{GenKind::K, 0}});
      if (i == 1 && j == 1)
        CHECK(at_k == LaurentRat::one());
      else
        CHECK(at_k.is_zero());
      CHECK(evaluate(z, {{GenKind::K, 0}}) == at_k);
      CHECK(evaluate(z, {{GenKind::F, 0}}) == at_f);
    }
}

TEST_CASE("random words agree between direct and canonical evaluation") {
  auto ctx = build_context('A', 2, 1);
  const MCElement z01 = z_generator(ctx, 0, 1);
  const MCElement big = product(z01, z_generator(ctx, 1, 0));
  const MCElement mix = big + LaurentRat::q_pow(-5) * product(z_generator(ctx, 2, 2), z_generator(ctx, 0, 0));
  std::mt19937 rng(20260819u);
  std::uniform_int_distribution<int> len(0, 3), kind(0, 2), node(0, ctx.rank - 1);
  for (int trial = 0; trial < 30; ++trial) {
    Word w;
    const int l = len(rng);
    for (int t = 0; t < l; ++t)
      w.emplace_back(std::array{GenKind::E, GenKind::F, GenKind::K}[static_cast<std::size_t>(kind(rng))], node(rng));
    CHECK(evaluate_direct(z01, w) == evaluate(z01, w));
    CHECK(evaluate_direct(big, w) == evaluate(big, w));
    CHECK(evaluate_direct(mix, w) == evaluate(mix, w));
  }
}

TEST_CASE("z relations hold as functionals and fail under a perturbed braiding") {
  for (auto [type, rank] : {std::pair{'A', 1}, std::pair{'A', 2}}) {
    auto ctx = build_context(type, rank, 1);
    const CheckReport rep = verify_z_relations(ctx);
    INFO(rep.witness);
    CHECK(rep.pass);
  }
  const CheckReport bad = verify_z_relations(build_context('A', 1, 1), true);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.witness.empty());
}
