#pragma once

// Dense univariate polynomials over F_{q^2} (F_q[x] is the Frobenius-fixed subring).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scrpp/field.hpp"

namespace scrpp {

class Poly {
 public:
  Poly() = default;
  /// Coefficients indexed by exponent; trailing zeros are trimmed.
  explicit Poly(std::vector<Element> coeffs);

  static Poly constant(Element c) { return Poly({c}); }
  static Poly monomial(Element c, std::size_t k);
  /// Builds from element indices, low exponent first.
  static Poly from_indices(const Field& field, const std::vector<std::uint64_t>& indices);

  const std::vector<Element>& coeffs() const { return coeffs_; }
  std::vector<std::uint32_t> indices() const;
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Element coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Element{}; }
  Element leading() const { return coeffs_.empty() ? Element{} : coeffs_.back(); }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim();
  std::vector<Element> coeffs_;
};

enum class PolyOp { add, mul };

/// x^n C^(q)(1/x) = unit * C(x) with n = deg C.
struct ScrCertificate {
  int degree = 0;
  Element unit;
};

Element eval(const Field& field, const Poly& f, Element x);
Poly add(const Field& field, const Poly& f, const Poly& g);
Poly sub(const Field& field, const Poly& f, const Poly& g);
Poly mul(const Field& field, const Poly& f, const Poly& g);
Poly poly_ops(const Field& field, const Poly& f, const Poly& g, PolyOp op);
Poly scale(const Field& field, const Poly& f, Element c);
Poly pow(const Field& field, const Poly& f, unsigned k);
/// Monic polynomial with the given roots.
Poly from_roots(const Field& field, const std::vector<Element>& roots);

/// Coefficientwise Frobenius, f -> f^(q).
Poly conjugate_lift(const Field& field, const Poly& f);
/// x^n f^(q)(1/x); requires n >= deg f.
Poly conj_reverse(const Field& field, const Poly& f, int n);
/// The unique unit beta with x^n C^(q)(1/x) = beta C(x), if any. Throws on the zero polynomial.
std::optional<ScrCertificate> scr_check(const Field& field, const Poly& f);

/// True when every coefficient lies in F_q.
bool over_base(const Field& field, const Poly& f);
Poly make_monic(const Field& field, const Poly& f);
/// Euclidean division; throws std::domain_error when g is zero.
std::pair<Poly, Poly> divmod(const Field& field, const Poly& f, const Poly& g);
/// Monic gcd (zero when both inputs are zero).
Poly gcd(const Field& field, Poly f, Poly g);
/// base^e mod modulus.
Poly powmod(const Field& field, const Poly& base, std::uint64_t e, const Poly& modulus);
/// Irreducibility over F_q: gcd(f, x^{q^i} - x) = 1 for every i <= deg f / 2.
/// f must have coefficients in F_q and positive degree.
bool is_irreducible_over_base(const Field& field, const Poly& f);

/// `c_k*x^k + ... + c_0`, coefficients in element form (parenthesised unless a plain number).
std::string to_string(const Field& field, const Poly& f);

}  // namespace scrpp
