#include "scrpp/mu_group.hpp"

#include <stdexcept>

namespace scrpp {

MuGroup::MuGroup(const Field& field) : field_(&field) {
  generator_ = field.pow(field.primitive_root(), static_cast<std::int64_t>(field.q()) - 1);
  elements_.reserve(field.q() + 1);
  Element cur = field.one();
  for (std::uint64_t k = 0; k <= field.q(); ++k) {
    index_.emplace(cur.value, k);
    elements_.push_back(cur);
    cur = field.mul(cur, generator_);
  }
}

bool MuGroup::contains(Element x) const { return index_.contains(x.value); }

std::optional<std::uint64_t> MuGroup::log(Element x) const {
  const auto it = index_.find(x.value);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Element> MuGroup::root_of(const Poly& f) const {
  for (auto z : elements_)
    if (eval(*field_, f, z).value == 0) return z;
  return std::nullopt;
}

bool mu_contains(const Field& field, Element x) { return x.value != 0 && field.norm(x) == field.one(); }

std::optional<Element> has_root_in_mu(const MuGroup& mu, const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("has_root_in_mu: zero polynomial");
  return mu.root_of(f);
}

MobiusMap::MobiusMap(const Field& field, Element delta, Element beta) : delta_(delta), beta_(beta) {
  if (field.in_base(delta)) throw std::invalid_argument("mobius: delta must lie outside F_q");
  if (!mu_contains(field, beta)) throw std::invalid_argument("mobius: beta must lie in mu_{q+1}");
}

Element canonical_delta(const Field& field) {
  for (auto x : field.enumerate(Level::extension))
    if (field.frobenius(x) != x) return x;
  throw std::logic_error("canonical_delta: F_{q^2} has no element outside F_q");
}

ProjectivePoint mobius_eval(const Field& field, const MobiusMap& m, Element z) {
  const Element den = field.sub(z, m.beta());
  if (den.value == 0) return Infinity{};
  const Element num = field.sub(field.mul(m.delta(), z), field.mul(m.beta(), field.frobenius(m.delta())));
  return field.div(num, den);
}

Element mobius_inv_eval(const Field& field, const MobiusMap& m, ProjectivePoint x) {
  if (std::holds_alternative<Infinity>(x)) return m.beta();
  const Element v = std::get<Element>(x);
  if (!field.in_base(v)) throw std::invalid_argument("mobius_inv_eval: point must lie in F_q");
  const Element num = field.sub(field.frobenius(m.delta()), v);
  const Element den = field.sub(m.delta(), v);
  return field.mul(m.beta(), field.div(num, den));
}

Poly compose_numerator(const Field& field, const Poly& c, const MobiusMap& m) {
  if (m.beta() != field.one()) throw std::invalid_argument("compose_numerator: the map must have beta = 1");
  const auto cert = scr_check(field, c);
  if (!cert || cert->unit != field.one())
    throw std::invalid_argument("compose_numerator: C must be SCR with unit 1");
  const int n = c.degree();
  const Poly up({field.frobenius(m.delta()), field.neg(field.one())});  // delta^q - x
  const Poly down({m.delta(), field.neg(field.one())});                 // delta - x

  std::vector<Poly> up_pow{Poly::constant(field.one())};
  std::vector<Poly> down_pow{Poly::constant(field.one())};
  for (int i = 1; i <= n; ++i) {
    up_pow.push_back(mul(field, up_pow.back(), up));
    down_pow.push_back(mul(field, down_pow.back(), down));
  }
  Poly h;
  for (int i = 0; i <= n; ++i) {
    const Element ci = c.coeff(static_cast<std::size_t>(i));
    if (ci.value == 0) continue;
    h = add(field, h, scale(field, mul(field, up_pow[static_cast<std::size_t>(i)], down_pow[static_cast<std::size_t>(n - i)]), ci));
  }
  if (!over_base(field, h)) throw std::logic_error("compose_numerator: coefficient outside F_q");
  return h;
}

bool g0_permutes_mu(const MuGroup& mu, const Poly& b, std::int64_t r) {
  const Field& field = mu.field();
  const auto qm1 = static_cast<std::int64_t>(field.q()) - 1;
  std::vector<bool> hit(mu.size(), false);
  for (auto z : mu.elements()) {
    const Element bz = eval(field, b, z);
    if (bz.value == 0) return false;
    const Element image = field.mul(field.pow(z, r), field.pow(bz, qm1));
    const auto k = mu.log(image);
    if (!k || hit[*k]) return false;
    hit[*k] = true;
  }
  return true;
}

}  // namespace scrpp
