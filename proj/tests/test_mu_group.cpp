#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <set>

#include "naive_field.hpp"
#include "scrpp/mu_group.hpp"

using scrpp::Element;
using scrpp::Field;
using scrpp::Infinity;
using scrpp::MobiusMap;
using scrpp::MuGroup;
using scrpp::Poly;

namespace {

Element E(std::uint32_t v) { return Element{v}; }

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kUpTo16 = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1},
                                                                     {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4}};

std::vector<Element> random_deltas(const Field& f, std::mt19937& rng, int count) {
  std::uniform_int_distribution<std::uint32_t> pick(f.q(), f.q2() - 1);
  std::vector<Element> out{scrpp::canonical_delta(f)};
  while (static_cast<int>(out.size()) < count) out.push_back(E(pick(rng)));
  return out;
}

}  // namespace

TEST_CASE("mu_{q+1} construction") {
  for (auto [p, n] : kUpTo16) {
    const Field f = Field::build(p, n);
    const naive::Tower t(f.spec());
    const MuGroup mu(f);
    CAPTURE(f.q());
    CHECK(mu.size() == f.q() + 1);
    CHECK(f.multiplicative_order(mu.generator()) == f.q() + 1);
    std::set<std::uint32_t> got;
    for (std::size_t k = 0; k < mu.size(); ++k) {
      const Element z = mu.elements()[k];
      CHECK(f.pow(z, static_cast<std::int64_t>(f.q()) + 1) == f.one());
      CHECK(z == f.pow(mu.generator(), static_cast<std::int64_t>(k)));
      CHECK(mu.log(z) == k);
      got.insert(z.value);
    }
    const auto expect = t.mu();
    CHECK(got == std::set<std::uint32_t>(expect.begin(), expect.end()));
    for (auto x : f.enumerate(scrpp::Level::extension)) CHECK(mu.contains(x) == scrpp::mu_contains(f, x));
  }
}

TEST_CASE("membership examples") {
  const Field f9 = Field::build(3, 1);
  CHECK(scrpp::mu_contains(f9, f9.one()));
  CHECK_FALSE(scrpp::mu_contains(f9, f9.zero()));
  CHECK(scrpp::mu_contains(f9, f9.y()));
  const MuGroup mu9(f9);
  std::set<std::uint32_t> got;
  for (auto z : mu9.elements()) got.insert(z.value);
  CHECK(got == std::set<std::uint32_t>{1, 2, f9.y().value, f9.neg(f9.y()).value});

  const Field f4 = Field::build(2, 1);
  CHECK(MuGroup(f4).size() == 3);
}

TEST_CASE("roots in mu") {
  const Field f9 = Field::build(3, 1);
  const MuGroup mu(f9);
  const Element y = f9.y();
  const auto r = scrpp::has_root_in_mu(mu, Poly({f9.neg(y), f9.one(), y}));
  REQUIRE(r);
  CHECK(*r == f9.neg(y));
  CHECK(scrpp::has_root_in_mu(mu, Poly({f9.neg(f9.one()), f9.one()})) == f9.one());
  CHECK_THROWS(scrpp::has_root_in_mu(mu, Poly()));

  // With y^2 = 2 over F_5 the quadratic 4y + 2x + y x^2 does vanish on mu_6.
  const Field f25 = Field::from_spec(scrpp::FieldSpec{5, 1, {0, 1}, {3, 0, 1}, 5});
  const naive::Tower t(f25.spec());
  const MuGroup mu25(f25);
  const Element yy = f25.y();
  const Poly c({f25.mul(E(4), yy), E(2), yy});
  const auto root = scrpp::has_root_in_mu(mu25, c);
  CHECK(root.has_value());
  CHECK(t.mu_root(c.indices()).has_value());
}

TEST_CASE("Möbius map examples") {
  const Field f9 = Field::build(3, 1);
  const MobiusMap m(f9, f9.y(), f9.one());
  CHECK(scrpp::mobius_inv_eval(f9, m, Infinity{}) == f9.one());
  CHECK(scrpp::mobius_inv_eval(f9, m, f9.zero()) == f9.neg(f9.one()));
  CHECK(scrpp::canonical_delta(f9) == f9.y());
  CHECK_THROWS_AS(MobiusMap(f9, f9.one(), f9.one()), std::invalid_argument);
  CHECK_THROWS_AS(MobiusMap(f9, f9.y(), f9.add(f9.y(), f9.one())), std::invalid_argument);
  CHECK_THROWS_AS(scrpp::mobius_inv_eval(f9, m, f9.y()), std::invalid_argument);
}

TEST_CASE("Möbius inverse is a bijection onto mu for every delta and beta") {
  std::mt19937 rng(3);
  for (auto [p, n] : kUpTo16) {
    const Field f = Field::build(p, n);
    const MuGroup mu(f);
    CAPTURE(f.q());
    for (auto delta : random_deltas(f, rng, 6)) {
      for (auto beta : {f.one(), mu.elements()[mu.size() / 2]}) {
        const MobiusMap m(f, delta, beta);
        std::set<std::uint32_t> image;
        image.insert(scrpp::mobius_inv_eval(f, m, Infinity{}).value);
        for (auto x : f.enumerate(scrpp::Level::base)) {
          const Element z = scrpp::mobius_inv_eval(f, m, x);
          CHECK(mu.contains(z));
          image.insert(z.value);
          const auto back = scrpp::mobius_eval(f, m, z);
          REQUIRE(std::holds_alternative<Element>(back));
          CHECK(std::get<Element>(back) == x);
        }
        CHECK(image.size() == f.q() + 1);
        CHECK(std::holds_alternative<Infinity>(scrpp::mobius_eval(f, m, beta)));
      }
    }
  }
}

TEST_CASE("composition numerator lies over F_q and transports roots") {
  std::mt19937 rng(5);
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
    const Field f = Field::build(p, n);
    const MuGroup mu(f);
    CAPTURE(f.q());
    std::uniform_int_distribution<std::uint32_t> pick(1, f.q2() - 1);
    for (int trial = 0; trial < 40; ++trial) {
      const int deg = 1 + trial % 5;
      std::vector<Element> c(static_cast<std::size_t>(deg) + 1);
      for (int i = 0; 2 * i < deg; ++i) {
        c[i] = E(pick(rng));
        c[deg - i] = f.frobenius(c[i]);
      }
      if (deg % 2 == 0) c[deg / 2] = E(pick(rng) % f.q());
      const Poly cp(c);
      const Element delta = random_deltas(f, rng, 2)[1];
      const MobiusMap m(f, delta, f.one());
      const Poly h = scrpp::compose_numerator(f, cp, m);
      CHECK(scrpp::over_base(f, h));
      CHECK(h.degree() <= deg);
      // μ \ {1} roots of C correspond to F_q roots of h; x = ∞ is C(1)
      std::size_t mu_roots = 0, base_roots = 0;
      for (auto z : mu.elements())
        if (z != f.one() && eval(f, cp, z).value == 0) ++mu_roots;
      for (auto x : f.enumerate(scrpp::Level::base))
        if (eval(f, h, x).value == 0) ++base_roots;
      CHECK(mu_roots == base_roots);
      CHECK((eval(f, cp, f.one()).value == 0) == (h.degree() < deg));
    }
  }
  const Field f9 = Field::build(3, 1);
  const MobiusMap m(f9, f9.y(), f9.one());
  CHECK(scrpp::compose_numerator(f9, Poly::constant(f9.one()), m) == Poly::constant(f9.one()));
  CHECK_THROWS_AS(scrpp::compose_numerator(f9, Poly({f9.y(), f9.one()}), m), std::invalid_argument);
  CHECK_THROWS_AS(scrpp::compose_numerator(f9, Poly::constant(f9.one()), MobiusMap(f9, f9.y(), f9.y())),
                  std::invalid_argument);
}

TEST_CASE("quadratic numerator coefficients and discriminant") {
  const Field f = Field::build(5, 1);
  const MuGroup mu(f);
  for (std::uint32_t ai = f.q(); ai < f.q2(); ai += 3) {
    for (std::uint32_t bi = 1; bi < f.q(); ++bi) {
      const Element a = E(ai), b = E(bi), aq = f.frobenius(a);
      for (auto delta : {f.y(), E(f.q() * 2 + 1)}) {
        const Element dq = f.frobenius(delta);
        const Poly h = scrpp::compose_numerator(f, Poly({aq, b, a}), MobiusMap(f, delta, f.one()));
        CHECK(h.coeff(2) == f.add(f.add(a, aq), b));
        const Element two = f.from_int(2);
        const Element mid = f.neg(f.add(f.add(f.mul(two, f.mul(aq, delta)), f.mul(b, dq)),
                                        f.add(f.mul(b, delta), f.mul(two, f.mul(dq, a)))));
        CHECK(h.coeff(1) == mid);
        const Element low = f.add(f.add(f.mul(b, f.norm(delta)), f.mul(aq, f.square(delta))), f.mul(a, f.square(dq)));
        CHECK(h.coeff(0) == low);
        const Element disc = f.sub(f.square(h.coeff(1)), f.mul(f.from_int(4), f.mul(h.coeff(2), h.coeff(0))));
        const Element d = f.sub(f.square(b), f.mul(f.from_int(4), f.norm(a)));
        CHECK(disc == f.mul(d, f.square(f.sub(dq, delta))));
        // (delta^q - delta)^2 is never a square in F_q
        CHECK_FALSE(f.is_square(f.square(f.sub(dq, delta))));
      }
    }
  }
}

TEST_CASE("g0 on mu") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}}) {
    const Field f = Field::build(p, n);
    const MuGroup mu(f);
    const std::uint64_t q = f.q();
    for (std::uint64_t m = 0; m <= q + 1; ++m)
      for (std::int64_t r = 1; r <= 4; ++r) {
        const bool expect = std::gcd(m * (q - 1) + static_cast<std::uint64_t>(r), q + 1) == 1;
        CHECK(scrpp::g0_permutes_mu(mu, Poly::monomial(f.one(), m), r) == expect);
      }
    CHECK_FALSE(scrpp::g0_permutes_mu(mu, Poly({f.neg(f.one()), f.one()}), 1));
    // image always in mu ∪ {0}
    std::mt19937 rng(9);
    std::uniform_int_distribution<std::uint32_t> pick(0, f.q2() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      const Poly b({E(pick(rng)), E(pick(rng)), f.one()});
      for (auto z : mu.elements()) {
        const Element v = f.mul(z, f.pow(eval(f, b, z), static_cast<std::int64_t>(q) - 1));
        CHECK((v.value == 0 || mu.contains(v)));
      }
    }
  }
  // x^q + x^{q-2} over F_9: no root iff 4 does not divide q+1; the induced map is x^5
  const Field f9 = Field::build(3, 2);
  const MuGroup mu9(f9);
  Poly b = add(f9, Poly::monomial(f9.one(), 9), Poly::monomial(f9.one(), 7));
  CHECK_FALSE(scrpp::has_root_in_mu(mu9, b).has_value());
  CHECK_FALSE(scrpp::g0_permutes_mu(mu9, b, 1));  // gcd(5, 10) = 5
  const Field f3 = Field::build(3, 1);
  b = add(f3, Poly::monomial(f3.one(), 3), Poly::monomial(f3.one(), 1));
  CHECK(scrpp::has_root_in_mu(MuGroup(f3), b).has_value());  // 4 | q+1
  CHECK_FALSE(scrpp::g0_permutes_mu(MuGroup(f3), b, 1));
}
