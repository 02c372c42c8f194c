#pragma once

// The subgroup mu_{q+1} of (q+1)-th roots of unity in F_{q^2}^* and the
// fractional-linear maps that carry it to the projective line over F_q.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "scrpp/field.hpp"
#include "scrpp/poly.hpp"

namespace scrpp {

struct Infinity {
  friend constexpr bool operator==(Infinity, Infinity) = default;
};

/// A point of F_q ∪ {∞}.
using ProjectivePoint = std::variant<Element, Infinity>;

class MuGroup {
 public:
  /// Generator g^{q-1} for the smallest primitive root g of F_{q^2}.
  /// The field must outlive the group.
  explicit MuGroup(const Field& field);

  const Field& field() const { return *field_; }
  Element generator() const { return generator_; }
  /// generator^k at position k, k = 0..q.
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  bool contains(Element x) const;
  /// k with generator^k = x, when x is in the group.
  std::optional<std::uint64_t> log(Element x) const;

  /// First root in generator-power order, by evaluation at all q+1 points.
  std::optional<Element> root_of(const Poly& f) const;

 private:
  const Field* field_;
  Element generator_;
  std::vector<Element> elements_;
  std::unordered_map<std::uint32_t, std::uint64_t> index_;
};

bool mu_contains(const Field& field, Element x);
std::optional<Element> has_root_in_mu(const MuGroup& mu, const Poly& f);

/// rho(x) = (delta x - beta delta^q) / (x - beta) with delta outside F_q and beta in mu_{q+1}.
class MobiusMap {
 public:
  /// Throws std::invalid_argument when delta lies in F_q or beta is not in mu_{q+1}.
  MobiusMap(const Field& field, Element delta, Element beta);

  Element delta() const { return delta_; }
  Element beta() const { return beta_; }

 private:
  Element delta_;
  Element beta_;
};

/// First element of F_{q^2}, in index order, not fixed by Frobenius.
Element canonical_delta(const Field& field);

/// rho : mu_{q+1} -> F_q ∪ {∞}; beta goes to ∞.
ProjectivePoint mobius_eval(const Field& field, const MobiusMap& m, Element z);
/// rho^{-1}(x) = beta (delta^q - x) / (delta - x); ∞ goes to beta.
Element mobius_inv_eval(const Field& field, const MobiusMap& m, ProjectivePoint x);

/// h(x) = sum_i c_i (delta^q - x)^i (delta - x)^{n-i}, the numerator of C∘rho^{-1}
/// for beta = 1. C must be SCR with unit 1; the result has coefficients in F_q.
Poly compose_numerator(const Field& field, const Poly& c, const MobiusMap& m);

/// Whether x -> x^r B(x)^{q-1} permutes mu_{q+1}.
bool g0_permutes_mu(const MuGroup& mu, const Poly& b, std::int64_t r);

}  // namespace scrpp
