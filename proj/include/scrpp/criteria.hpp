#pragma once

// Closed-form tests deciding whether particular SCR polynomials have a root in
// mu_{q+1}, and the two Möbius-conjugated constructions with known answers.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "scrpp/field.hpp"
#include "scrpp/mu_group.hpp"
#include "scrpp/poly.hpp"

namespace scrpp {

/// How the odd-characteristic quadratic tests classify their discriminant.
///
/// `derived` decides from the discriminant of the Möbius numerator h, which is
/// D*(delta^q - delta)^2; since (delta^q - delta)^2 is always a non-square in
/// F_q, C has no root exactly when D is a nonzero square. `stated` applies the
/// opposite rule ("no root iff D is a nonzero non-square") and is kept only for
/// comparison runs.
enum class ResidueReading { derived, stated };

/// Which closed form feeds the trace condition of the char-2 cubic test.
/// `statement`: (a^q+b)^3 (a+b)^3 / ((a+a^q)^2 (a^{q+1}+b^2)^2).
/// `proof`:     (a^q+a)^3 (a+b)^3 / ((a^q+a)^2 (a^{q+1}+b^2)^2).
enum class CubicTraceFormula { statement, proof };

struct CriterionOptions {
  ResidueReading reading = ResidueReading::derived;
  CubicTraceFormula trace = CubicTraceFormula::statement;
  /// When false, hypothesis checks are skipped and the rule is applied as is.
  bool enforce_hypotheses = true;
};

struct CriterionVerdict {
  std::string theorem;
  bool has_mu_root = false;
  std::optional<Element> witness;
  std::map<std::string, std::string> reason;
};

/// Raised when the inputs fall outside a criterion's hypotheses.
class HypothesisViolation : public std::invalid_argument {
 public:
  HypothesisViolation(std::string theorem, std::string condition);
  const std::string& theorem() const { return theorem_; }
  const std::string& condition() const { return condition_; }

 private:
  std::string theorem_;
  std::string condition_;
};

/// Root alpha = -beta^q a1^{q-1} of (beta a1)^q + a1 x.
Element deg1_root(const Field& field, Element a1, Element beta);

/// C = a x^2 + b x + a^q in characteristic 2: root in mu iff Tr(a^{q+1}/b^2) = 1.
CriterionVerdict char2_deg2_has_root(const Field& field, Element a, Element b);

/// C = a^q + b x + a x^2 in odd characteristic (see ResidueReading).
CriterionVerdict odd_deg2_no_root(const Field& field, Element a, Element b, Element delta,
                                  const CriterionOptions& opts = {});

/// Degree-2 SCR with unit 1, decided through its Möbius numerator (any characteristic).
CriterionVerdict quadratic_via_numerator(const Field& field, const Poly& c, Element delta);

/// a^q x^{2q} + b x^q + a  ->  a x^2 + b x + a^q (same roots in mu, inverted).
Poly deg2q_reduce(const Field& field, Element a, Element b);

/// C = a x^3 + a^q: root iff (-a^{q-1})^{(q+1)/gcd(q+1,3)} = 1.
CriterionVerdict binomial_deg3_no_root(const Field& field, Element a, const CriterionOptions& opts = {});

struct CubicReduction {
  Element sigma1, sigma2, sigma3;
  Element p_coef;  // sigma2 + sigma1^2
  Element q_coef;  // sigma3 + sigma1 sigma2
};

/// Depressed cubic of the Möbius numerator of a^q + b x + b x^2 + a x^3 (char 2).
/// Checks the closed forms of both coefficients; throws std::logic_error on mismatch.
CubicReduction char2_cubic_reduction(const Field& field, Element a, Element b, Element delta);

CriterionVerdict char2_cubic_no_root(const Field& field, Element a, Element b, Element delta,
                                     const CriterionOptions& opts = {});

/// a x^{q+1} + b x^q + b x + a^q  ->  b x^2 + (a + a^q) x + b.
Poly xq1_family_reduce(const Field& field, Element a, Element b);

/// Dispatches the reduced quadratic: a in F_q (odd), a outside F_q (odd), or char 2.
CriterionVerdict xq1_family_no_root(const Field& field, Element a, Element b, Element delta,
                                    const CriterionOptions& opts = {});

struct LinearFactorFamily {
  Poly c;
  Element root;
};

/// C = (delta x - beta delta^q)^n - (x - beta)^n with its root beta (delta^q - 1)/(delta - 1).
LinearFactorFamily linear_factor_family(const Field& field, Element delta, Element beta, int n);

/// C = sum_i b_i (delta x - beta delta^q)^{m-i} (x - beta)^i for the monic irreducible
/// f = sum_i b_i x^{m-i} over F_q of degree m >= 2.
Poly irreducible_family(const Field& field, const Poly& f, Element delta, Element beta);

}  // namespace scrpp
