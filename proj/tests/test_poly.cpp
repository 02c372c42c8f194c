#include <doctest.h>

#include <random>
#include <stdexcept>

#include "naive_field.hpp"
#include "scrpp/poly.hpp"

using scrpp::Element;
using scrpp::Field;
using scrpp::Poly;

namespace {

Element E(std::uint32_t v) { return Element{v}; }

Poly random_poly(const Field& f, std::mt19937& rng, int deg) {
  std::uniform_int_distribution<std::uint32_t> pick(0, f.q2() - 1);
  std::vector<Element> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = E(pick(rng));
  if (c.back().value == 0) c.back() = f.one();
  return Poly(c);
}

// SCR with unit beta: choose the low half freely, mirror the rest.
Poly random_scr(const Field& f, std::mt19937& rng, int n, Element& beta_out) {
  std::uniform_int_distribution<std::uint32_t> pick(1, f.q2() - 1);
  const Element lambda = E(pick(rng));
  std::vector<Element> d(static_cast<std::size_t>(n) + 1);
  for (int i = 0; 2 * i < n; ++i) {
    d[i] = E(pick(rng));
    d[n - i] = f.frobenius(d[i]);
  }
  if (n % 2 == 0) d[n / 2] = E(pick(rng) % f.q());
  if (n == 0 && d[0].value == 0) d[0] = f.one();
  std::vector<Element> c(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) c[i] = f.mul(lambda, d[i]);
  beta_out = f.pow(lambda, static_cast<std::int64_t>(f.q()) - 1);
  return Poly(c);
}

}  // namespace

TEST_CASE("evaluation") {
  const Field f9 = Field::build(3, 1);
  const Element y = f9.y();
  CHECK(eval(f9, Poly({f9.one(), f9.zero(), f9.one()}), y) == f9.zero());
  CHECK(eval(f9, Poly(), y) == f9.zero());
  const Poly c({f9.frobenius(y), f9.one(), y});  // y x^2 + x + y^q
  CHECK(eval(f9, c, f9.neg(y)) == f9.zero());
}

TEST_CASE("ring operations") {
  const Field f4 = Field::build(2, 1);
  const Poly xp1({f4.one(), f4.one()});
  CHECK(mul(f4, xp1, xp1) == Poly({f4.one(), f4.zero(), f4.one()}));
  CHECK(poly_ops(f4, xp1, Poly::constant(f4.one()), scrpp::PolyOp::mul) == xp1);
  CHECK(poly_ops(f4, xp1, xp1, scrpp::PolyOp::add).is_zero());

  const Field f = Field::build(5, 1);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Poly a = random_poly(f, rng, trial % 5), b = random_poly(f, rng, (trial / 5) % 4);
    const Poly ab = mul(f, a, b);
    CHECK(ab.degree() == a.degree() + b.degree());
    for (std::uint32_t x : {0u, 3u, 17u}) CHECK(eval(f, ab, E(x)) == f.mul(eval(f, a, E(x)), eval(f, b, E(x))));
    const auto [qt, rm] = divmod(f, ab, b);
    CHECK(qt == a);
    CHECK(rm.is_zero());
  }
  const Element beta = E(7), beta2 = E(11);
  const Poly prod = from_roots(f, {beta, beta2});
  for (std::uint32_t x : {0u, 1u, 9u}) {
    CHECK(eval(f, prod, E(x)) == f.mul(f.sub(E(x), beta), f.sub(E(x), beta2)));
  }
  CHECK_THROWS_AS(divmod(f, prod, Poly()), std::domain_error);
}

TEST_CASE("conjugation and reversal") {
  const Field f9 = Field::build(3, 1);
  const Element a = f9.y(), aq = f9.frobenius(a);
  const Poly c({aq, f9.one(), a});
  CHECK(conjugate_lift(f9, c) == Poly({a, f9.one(), aq}));
  CHECK(conjugate_lift(f9, conjugate_lift(f9, c)) == c);
  CHECK(conj_reverse(f9, c, 2) == c);
  CHECK(conj_reverse(f9, Poly::monomial(f9.one(), 1), 1) == Poly::constant(f9.one()));
  CHECK(conj_reverse(f9, Poly::constant(a), 0) == Poly::constant(aq));
  CHECK_THROWS_AS(conj_reverse(f9, c, 1), std::invalid_argument);
  const Poly over_base({f9.one(), E(2)});
  CHECK(conjugate_lift(f9, over_base) == over_base);
}

TEST_CASE("SCR detection") {
  const Field f9 = Field::build(3, 1);
  const Element a = f9.y(), aq = f9.frobenius(a);
  auto cert = scr_check(f9, Poly({aq, f9.one(), a}));
  REQUIRE(cert);
  CHECK(cert->degree == 2);
  CHECK(cert->unit == f9.one());

  const Field f4 = Field::build(2, 1);
  cert = scr_check(f4, Poly({f4.one(), f4.one()}));
  REQUIRE(cert);
  CHECK(cert->unit == f4.one());

  const Field f16 = Field::build(2, 2);
  CHECK_FALSE(scr_check(f16, Poly({f16.zero(), E(2), f16.one()})));
  CHECK_THROWS_AS(scr_check(f16, Poly()), std::invalid_argument);

  // (delta x - beta delta^q)^n - (x - beta)^n has unit (-1)^n beta^{-n}
  const Field f = Field::build(2, 3);
  const Element delta = f.y();
  for (std::uint32_t k = 0; k < f.q2(); ++k) {
    const Element beta = E(k);
    if (k == 0 || f.norm(beta) != f.one()) continue;
    for (unsigned n = 1; n <= 3; ++n) {
      if (f.pow(delta, n) == f.one()) continue;  // leading coefficient delta^n - 1 vanishes
      const Poly lin({f.neg(f.mul(beta, f.frobenius(delta))), delta});
      const Poly base({f.neg(beta), f.one()});
      const Poly c = sub(f, pow(f, lin, n), pow(f, base, n));
      const auto cc = scr_check(f, c);
      REQUIRE(cc);
      const Element expected = f.pow(f.neg(beta), -static_cast<std::int64_t>(n));
      CHECK(cc->unit == expected);
    }
  }
}

TEST_CASE("SCR properties on random inputs") {
  std::mt19937 rng(11);
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}}) {
    const Field f = Field::build(p, n);
    for (int trial = 0; trial < 60; ++trial) {
      const int deg = trial % 6;
      Element beta;
      const Poly c = random_scr(f, rng, deg, beta);
      const auto cert = scr_check(f, c);
      REQUIRE(cert);
      CHECK(cert->unit == beta);
      CHECK(f.norm(cert->unit) == f.one());
      for (int i = 0; i <= deg; ++i)
        CHECK(c.coeff(deg - i) == f.frobenius(f.mul(beta, c.coeff(i))));
      CHECK(conj_reverse(f, c, deg) == scale(f, c, beta));

      Element beta2;
      const Poly d = random_scr(f, rng, (trial + 1) % 4, beta2);
      const auto pc = scr_check(f, mul(f, c, d));
      REQUIRE(pc);
      CHECK(pc->unit == f.mul(beta, beta2));
      if (cert->unit == f.one()) CHECK(conj_reverse(f, conj_reverse(f, c, deg), deg) == c);
    }
    // a generic polynomial is rarely SCR; when it is, the certificate must verify
    for (int trial = 0; trial < 40; ++trial) {
      const Poly g = random_poly(f, rng, 1 + trial % 3);
      if (const auto cg = scr_check(f, g)) CHECK(conj_reverse(f, g, g.degree()) == scale(f, g, cg->unit));
    }
  }
}

TEST_CASE("irreducibility and gcd") {
  const Field f3 = Field::build(3, 1);
  CHECK(is_irreducible_over_base(f3, Poly({f3.one(), f3.zero(), f3.one()})));
  CHECK_FALSE(is_irreducible_over_base(f3, Poly({E(2), f3.zero(), f3.one()})));
  const Field f2 = Field::build(2, 1);
  CHECK(is_irreducible_over_base(f2, Poly({f2.one(), f2.one(), f2.one()})));
  CHECK_THROWS(is_irreducible_over_base(f3, Poly({f3.y(), f3.one()})));

  // count monic irreducibles of degree 2..4 over F_q against the necklace formula
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
    const Field f = Field::build(p, n);
    const std::uint64_t q = f.q();
    const std::uint64_t expected[] = {0, q, (q * q - q) / 2, (q * q * q - q) / 3, (q * q * q * q - q * q) / 4};
    for (int d = 2; d <= 4; ++d) {
      std::uint64_t count = 0, total = 1;
      for (int i = 0; i < d; ++i) total *= q;
      for (std::uint64_t v = 0; v < total; ++v) {
        std::vector<Element> c(static_cast<std::size_t>(d) + 1, f.zero());
        std::uint64_t w = v;
        for (int i = 0; i < d; ++i) {
          c[i] = E(static_cast<std::uint32_t>(w % q));
          w /= q;
        }
        c[d] = f.one();
        count += is_irreducible_over_base(f, Poly(c));
      }
      CHECK(count == expected[d]);
    }
  }
  const Field f = Field::build(5, 1);
  const Poly g = gcd(f, from_roots(f, {E(1), E(2), E(3)}), from_roots(f, {E(2), E(3), E(4)}));
  CHECK(g == from_roots(f, {E(2), E(3)}));
}

TEST_CASE("text format") {
  const Field f = Field::build(5, 1);
  const Poly c({f.mul(E(2), f.y()), f.one(), f.y()});
  CHECK(to_string(f, c) == "(y)*x^2 + 1*x + (2y)");
  CHECK(to_string(f, Poly()) == "0");
  CHECK(c.indices() == std::vector<std::uint32_t>{10, 1, 5});
}
