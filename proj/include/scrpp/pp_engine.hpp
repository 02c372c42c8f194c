#pragma once

// Assembly of x^s B(x^{q-1}) C(x^{q-1}) and the exhaustive permutation oracle.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scrpp/field.hpp"
#include "scrpp/mu_group.hpp"
#include "scrpp/poly.hpp"

namespace scrpp {

struct Term {
  std::uint64_t exponent = 0;
  Element coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial over F_{q^2}: terms sorted by exponent, merged, zeros dropped.
class SparsePoly {
 public:
  SparsePoly() = default;
  SparsePoly(const Field& field, std::vector<Term> terms);
  static SparsePoly from_dense(const Field& field, const Poly& f);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

 private:
  std::vector<Term> terms_;
};

/// Exponents e >= 1 become ((e-1) mod (q^2-1)) + 1; the induced function is unchanged.
SparsePoly reduce_exponents(const Field& field, const SparsePoly& f);
Element eval(const Field& field, const SparsePoly& f, Element x);
std::string to_string(const Field& field, const SparsePoly& f);

struct BChoice {
  Poly b;
  std::int64_t r = 1;
  bool validated = false;
};

/// validated iff x -> x^r B(x)^{q-1} permutes mu_{q+1}.
BChoice validate_B(const MuGroup& mu, const Poly& b, std::int64_t r);

struct SCandidate {
  std::uint64_t s = 0;
  std::uint64_t gcd = 0;  // gcd(s, q-1)
};

/// s >= 1 with s = r + n (mod q+1), over one period lcm(q+1, q-1).
std::vector<SCandidate> compute_s(const Field& field, std::int64_t r, std::int64_t n);
/// Smallest candidate with gcd(s, q-1) = 1, if the class contains one.
std::optional<std::uint64_t> smallest_coprime_s(const Field& field, std::int64_t r, std::int64_t n);

/// x^s B(x^{q-1}) C(x^{q-1}) with reduced exponents, no validation.
SparsePoly expand_pp(const Field& field, const Poly& b, const Poly& c, std::uint64_t s);
/// As expand_pp; throws std::invalid_argument unless B is validated and C is SCR.
SparsePoly build_pp(const Field& field, const BChoice& b, const Poly& c, std::uint64_t s);

/// Oracle field-size limit: SCRP_ORACLE_BOUND if set, else 16384.
std::uint64_t oracle_bound();

/// Evaluates candidates on all of F_{q^2} through a precomputed power table.
class PermutationOracle {
 public:
  /// Throws std::out_of_range when q^2 exceeds the bound.
  explicit PermutationOracle(const Field& field, std::uint64_t bound = oracle_bound());

  bool is_permutation(const SparsePoly& f) const;
  /// Values at 0, g, g^2, ..., g^{q^2-2}; solely for pointwise comparisons.
  std::vector<Element> values(const SparsePoly& f) const;
  bool same_function(const SparsePoly& f, const SparsePoly& g) const;

 private:
  const Field* field_;
  std::vector<Element> powers_;
};

bool is_permutation_bruteforce(const Field& field, const SparsePoly& f, std::uint64_t bound = oracle_bound());

}  // namespace scrpp
