#include <catch2/catch_amalgamated.hpp>

#include <qflag/qq.hpp>

#include <map>
#include <vector>

using qflag::Int;
using qflag::LaurentRat;
using qflag::Rat;
using qflag::qbinom;
using qflag::qbinom_base;
using qflag::qint;
using qflag::qint_base;

namespace {

// Deterministic xorshift; used to generate arithmetic stress cases.
struct Rng {
  std::uint64_t s = 0x9e3779b97f4a7c15ull;
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

LaurentRat random_laurent(Rng& rng) {
  LaurentRat v = LaurentRat::zero();
  const int terms = rng.range(0, 3);
  for (int t = 0; t < terms; ++t)
    v += LaurentRat::monomial(Int(rng.range(-5, 5)), rng.range(-4, 4));
  return v;
}

LaurentRat random_element(Rng& rng) {
  LaurentRat den = LaurentRat::zero();
  while (den.is_zero()) den = random_laurent(rng);
  return random_laurent(rng) / den;
}

// Independent route to the balanced q-binomial: Pascal recurrence
//   [n,k] = q^k [n-1,k] + q^(k-n) [n-1,k-1],   [n,0] = [n,n] = 1.
LaurentRat qbinom_pascal(int n, int k) {
  static std::map<std::pair<int, int>, LaurentRat> memo;
  if (k == 0 || k == n) return LaurentRat::one();
  auto it = memo.find({n, k});
  if (it != memo.end()) return it->second;
  LaurentRat v = LaurentRat::q_pow(k) * qbinom_pascal(n - 1, k) +
                 LaurentRat::q_pow(k - n) * qbinom_pascal(n - 1, k - 1);
  memo.insert({{n, k}, v});
  return v;
}

}  // namespace

TEST_CASE("q-integers") {
  CHECK(qint(0).is_zero());
  CHECK(qint(1).is_one());
  CHECK(qint(2).to_string() == "(q + q^-1)/(1)");
  CHECK(qint(-3).to_string() == "(-q^2 - 1 - q^-2)/(1)");
  CHECK(qint(-3) == -qint(3));
  for (long long n = -20; n <= 20; ++n)
    CHECK(qint(n).evaluate_at(Rat(1)) == Rat(n));
  // [2] at q=2 is 2 + 1/2
  CHECK(qint(2).evaluate_at(Rat(2)) == Rat(5, 2));
}

TEST_CASE("q-binomials against the Pascal recurrence") {
  CHECK(qbinom(4, 2).to_string() == "(q^4 + q^2 + 2 + q^-2 + q^-4)/(1)");
  for (int n = 0; n <= 9; ++n)
    for (int k = 0; k <= n; ++k) {
      CHECK(qbinom(n, k) == qbinom_pascal(n, k));
      CHECK(qbinom(n, k) == qbinom(n, n - k));
    }
  CHECK_THROWS_AS(qbinom(3, 4), qflag::InvalidArgument);
  CHECK_THROWS_AS(qbinom(-1, 0), qflag::InvalidArgument);
  CHECK_THROWS_AS(qbinom(2, -1), qflag::InvalidArgument);
}

TEST_CASE("base change q -> q^d") {
  CHECK(qint_base(2, 3) == LaurentRat::q_pow(3) + LaurentRat::q_pow(-3));
  CHECK(qbinom_base(2, 1, 2) == LaurentRat::q_pow(2) + LaurentRat::q_pow(-2));
  CHECK(qint_base(5, 1) == qint(5));
  // stretching is a field homomorphism
  Rng rng;
  for (int i = 0; i < 40; ++i) {
    LaurentRat a = random_element(rng), b = random_element(rng);
    CHECK((a * b).stretched(3) == a.stretched(3) * b.stretched(3));
    CHECK((a + b).stretched(2) == a.stretched(2) + b.stretched(2));
  }
}

TEST_CASE("arithmetic basics and wire format") {
  const LaurentRat q = LaurentRat::q_pow(1);
  const LaurentRat qi = LaurentRat::q_pow(-1);
  CHECK((q - qi) * (q + qi) == LaurentRat::q_pow(2) - LaurentRat::q_pow(-2));
  CHECK(((q - qi) * (q + qi)).to_string() == "(q^2 - q^-2)/(1)");
  CHECK(LaurentRat::q_pow(2).inv() == LaurentRat::q_pow(-2));
  CHECK(LaurentRat::monomial(Int(-3), 2).to_string() == "(-3*q^2)/(1)");
  CHECK(LaurentRat(1) / (q + 1) == (q - 1) / (LaurentRat::q_pow(2) - 1));
  CHECK((LaurentRat(1) / (q + 1)).to_string() == "(1)/(q + 1)");
  CHECK(LaurentRat(Rat(1, 2)).to_string() == "(1)/(2)");
  // joint content reduction: 2q / (2q + 2) = q/(q+1)
  CHECK((LaurentRat::monomial(Int(2), 1) / (LaurentRat::monomial(Int(2), 1) + 2)).to_string() ==
        "(q)/(q + 1)");
  // q-power factors of a denominator move into the numerator shift
  CHECK((LaurentRat(1) / LaurentRat::q_pow(3)).to_string() == "(q^-3)/(1)");
  CHECK(LaurentRat::zero().to_string() == "(0)/(1)");
}

TEST_CASE("evaluation") {
  const LaurentRat q = LaurentRat::q_pow(1);
  CHECK_THROWS_AS((LaurentRat(1) / (q - 1)).evaluate_at(Rat(1)), qflag::PoleAtPoint);
  CHECK_THROWS_AS(qint(2).evaluate_at(Rat(0)), qflag::ZeroBase);
  CHECK((qint(3) / qint(2)).evaluate_at(Rat(2)) == Rat(21, 10));
  CHECK(LaurentRat::q_pow(-2).evaluate_at(Rat(3)) == Rat(1, 9));
}

TEST_CASE("field axioms on pseudorandom elements") {
  Rng rng;
  for (int i = 0; i < 120; ++i) {
    LaurentRat a = random_element(rng), b = random_element(rng), c = random_element(rng);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + LaurentRat::zero() == a);
    CHECK(a * LaurentRat::one() == a);
    CHECK((a - a).is_zero());
    if (!a.is_zero()) {
      CHECK((a * a.inv()).is_one());
      CHECK(a.inv().inv() == a);
    }
    // structural equality is field equality: cross-multiplied comparison
    if (!b.is_zero() && !c.is_zero()) {
      LaurentRat x = a / b, y = (a * c) / (b * c);
      CHECK(x == y);
      CHECK(x.to_string() == y.to_string());
    }
  }
  CHECK_THROWS_AS(LaurentRat::zero().inv(), qflag::DivisionByZero);
  CHECK_THROWS_AS(LaurentRat(3) / LaurentRat::zero(), qflag::DivisionByZero);
}
