#include "scrpp/criteria.hpp"

#include <numeric>

namespace scrpp {

namespace {

std::string idx(Element x) { return std::to_string(x.value); }

std::string residue_class(const Field& field, Element d) {
  if (d.value == 0) return "zero";
  return field.is_square(d) ? "square" : "non-square";
}

void require(bool ok, const char* theorem, const char* condition) {
  if (!ok) throw HypothesisViolation(theorem, condition);
}

// Degree-2 SCR with unit 1: roots in F_q of its Möbius numerator, mapped back to mu.
struct QuadraticRoute {
  bool has_root = false;
  std::optional<Element> witness;
  std::map<std::string, std::string> reason;
};

QuadraticRoute quadratic_route(const Field& field, const Poly& c, Element delta) {
  QuadraticRoute out;
  if (eval(field, c, field.one()).value == 0) {
    out.has_root = true;
    out.witness = field.one();
    out.reason["route"] = "root at 1 (the point at infinity)";
    return out;
  }
  const MobiusMap m(field, delta, field.one());
  const Poly h = compose_numerator(field, c, m);
  const Element a2 = h.coeff(2), a1 = h.coeff(1), a0 = h.coeff(0);
  std::optional<Element> x0;
  if (field.char2()) {
    if (a1.value == 0) {
      x0 = field.sqrt_base(field.div(a0, a2));
      out.reason["numerator"] = "x^2 + c (always solvable)";
    } else {
      const Element v = field.div(field.mul(a2, a0), field.square(a1));
      out.reason["numerator_trace"] = idx(field.absolute_trace(v));
      if (auto z = field.solve_artin_schreier(v)) x0 = field.mul(field.div(a1, a2), z->first);
    }
  } else {
    const Element four = field.from_int(4);
    const Element disc = field.sub(field.square(a1), field.mul(four, field.mul(a2, a0)));
    out.reason["numerator_discriminant"] = idx(disc);
    out.reason["numerator_discriminant_class"] = residue_class(field, disc);
    if (auto r = field.sqrt_base(disc)) {
      const Element two_a = field.add(a2, a2);
      x0 = field.div(field.sub(*r, a1), two_a);
    }
  }
  if (x0) {
    const Element w = mobius_inv_eval(field, m, *x0);
    if (eval(field, c, w).value != 0) throw std::logic_error("quadratic route: transported root does not vanish");
    out.has_root = true;
    out.witness = w;
  }
  return out;
}

CriterionVerdict verdict_from(std::string theorem, QuadraticRoute route) {
  CriterionVerdict v;
  v.theorem = std::move(theorem);
  v.has_mu_root = route.has_root;
  v.witness = route.witness;
  v.reason = std::move(route.reason);
  return v;
}

// Witness ties break by the first root in canonical mu order.
void attach_witness(const Field& field, CriterionVerdict& v, const Poly& c) {
  v.witness.reset();
  if (v.has_mu_root) v.witness = has_root_in_mu(MuGroup(field), c);
}

}  // namespace

HypothesisViolation::HypothesisViolation(std::string theorem, std::string condition)
    : std::invalid_argument(theorem + ": hypothesis violated: " + condition),
      theorem_(std::move(theorem)),
      condition_(std::move(condition)) {}

Element deg1_root(const Field& field, Element a1, Element beta) {
  if (a1.value == 0) throw std::invalid_argument("deg1_root: a1 must be nonzero");
  if (!mu_contains(field, beta)) throw std::invalid_argument("deg1_root: beta must lie in mu_{q+1}");
  const auto qm1 = static_cast<std::int64_t>(field.q()) - 1;
  return field.neg(field.mul(field.frobenius(beta), field.pow(a1, qm1)));
}

CriterionVerdict quadratic_via_numerator(const Field& field, const Poly& c, Element delta) {
  if (c.degree() != 2) throw std::invalid_argument("quadratic_via_numerator: degree must be 2");
  auto v = verdict_from("quadratic_numerator", quadratic_route(field, c, delta));
  attach_witness(field, v, c);
  return v;
}

CriterionVerdict char2_deg2_has_root(const Field& field, Element a, Element b) {
  if (!field.char2()) throw std::domain_error("char2_deg2_has_root: characteristic must be 2");
  if (b.value == 0 || !field.in_base(b)) throw std::invalid_argument("char2_deg2_has_root: b must lie in F_q^*");
  const Element ratio = field.div(field.norm(a), field.square(b));
  const Element tr = field.absolute_trace(ratio);
  CriterionVerdict v;
  v.theorem = "char2_quadratic_trace";
  v.has_mu_root = tr == field.one();
  v.reason["trace_norm_over_b2"] = idx(tr);
  const Poly c({field.frobenius(a), b, a});
  if (v.has_mu_root && a.value != 0 && !quadratic_route(field, c, canonical_delta(field)).has_root)
    throw std::logic_error("char2_deg2_has_root: trace test and numerator route disagree");
  attach_witness(field, v, c);
  return v;
}

CriterionVerdict odd_deg2_no_root(const Field& field, Element a, Element b, Element delta,
                                  const CriterionOptions& opts) {
  constexpr const char* kName = "odd_quadratic";
  if (field.char2()) throw std::domain_error("odd_deg2_no_root: characteristic must be odd");
  const Element aq = field.frobenius(a);
  const Element s = field.add(a, aq);
  if (opts.enforce_hypotheses) {
    require(!field.in_base(a), kName, "a outside F_q");
    require(b.value != 0 && field.in_base(b), kName, "b in F_q^*");
    require(field.add(s, b).value != 0, kName, "C(1) != 0");
    require(field.sub(s, b).value != 0, kName, "C(-1) != 0");
  }
  const Element d = field.sub(field.square(b), field.mul(field.from_int(4), field.norm(a)));
  CriterionVerdict v;
  if (opts.reading == ResidueReading::stated) {
    v.theorem = kName;
    v.has_mu_root = d.value == 0 || field.is_square(d);
  } else {
    v = verdict_from(kName, quadratic_route(field, Poly({aq, b, a}), delta));
  }
  v.reason["reading"] = opts.reading == ResidueReading::stated ? "stated" : "derived";
  v.reason["b2_minus_4norm"] = idx(d);
  v.reason["b2_minus_4norm_class"] = residue_class(field, d);
  attach_witness(field, v, Poly({aq, b, a}));
  return v;
}

Poly deg2q_reduce(const Field& field, Element a, Element b) { return Poly({field.frobenius(a), b, a}); }

CriterionVerdict binomial_deg3_no_root(const Field& field, Element a, const CriterionOptions& opts) {
  constexpr const char* kName = "binomial_cubic";
  if (opts.enforce_hypotheses) require(!field.in_base(a), kName, "a outside F_q");
  if (a.value == 0) throw std::invalid_argument("binomial_deg3_no_root: a must be nonzero");
  const std::uint64_t q1 = field.q() + 1;
  const std::uint64_t e = q1 / std::gcd(q1, std::uint64_t{3});
  const Element t = field.neg(field.pow(a, static_cast<std::int64_t>(field.q()) - 1));
  CriterionVerdict v;
  v.theorem = kName;
  v.has_mu_root = field.pow(t, static_cast<std::int64_t>(e)) == field.one();
  v.reason["minus_a_pow_q_minus_1"] = idx(t);
  v.reason["subgroup_order"] = std::to_string(e);
  attach_witness(field, v, Poly({field.frobenius(a), field.zero(), field.zero(), a}));
  return v;
}

CubicReduction char2_cubic_reduction(const Field& field, Element a, Element b, Element delta) {
  constexpr const char* kName = "char2_cubic";
  if (!field.char2()) throw std::domain_error("char2_cubic_reduction: characteristic must be 2");
  require(!field.in_base(a), kName, "a outside F_q");
  require(b.value != 0 && field.in_base(b), kName, "b in F_q^*");
  const Element aq = field.frobenius(a);
  const Element b2 = field.square(b);
  const Element nb = field.add(field.norm(a), b2);
  require(nb.value != 0, kName, "a^{q+1} + b^2 != 0");

  const MobiusMap m(field, delta, field.one());
  const Poly h = compose_numerator(field, Poly({aq, b, b, a}), m);
  const Element lead = h.coeff(3);
  CubicReduction r;
  r.sigma1 = field.div(h.coeff(2), lead);
  r.sigma2 = field.div(h.coeff(1), lead);
  r.sigma3 = field.div(h.coeff(0), lead);
  r.p_coef = field.add(r.sigma2, field.square(r.sigma1));
  r.q_coef = field.add(r.sigma3, field.mul(r.sigma1, r.sigma2));

  const Element s = field.add(a, aq);
  const Element s2 = field.square(s);
  const Element dd = field.add(field.frobenius(delta), delta);
  const Element p_closed =
      field.div(field.mul(field.square(dd), field.mul(field.add(aq, b), field.add(a, b))), s2);
  const Element q_closed = field.div(field.mul(nb, field.pow(dd, 3)), s2);
  if (r.p_coef != p_closed || r.q_coef != q_closed)
    throw std::logic_error("char2_cubic_reduction: closed forms disagree with the sigma computation");
  if (r.p_coef.value == 0 || r.q_coef.value == 0)
    throw std::logic_error("char2_cubic_reduction: vanishing depressed coefficient");
  return r;
}

CriterionVerdict char2_cubic_no_root(const Field& field, Element a, Element b, Element delta,
                                     const CriterionOptions& opts) {
  const CubicReduction r = char2_cubic_reduction(field, a, b, delta);
  const Element aq = field.frobenius(a);
  const Element s = field.add(a, aq);
  const Element nb = field.add(field.norm(a), field.square(b));
  const Element ab3 = field.pow(field.add(a, b), 3);
  Element ratio;
  if (opts.trace == CubicTraceFormula::statement)
    ratio = field.div(field.mul(field.pow(field.add(aq, b), 3), ab3), field.mul(field.square(s), field.square(nb)));
  else
    ratio = field.div(field.mul(field.pow(s, 3), ab3), field.mul(field.square(s), field.square(nb)));

  // The alternative numerator (a^q+a)^3 (a+b)^3 need not lie in F_q; its trace is then taken over F_{q^2}.
  const Level ratio_level = field.in_base(ratio) ? Level::base : Level::extension;
  const Element tr_formula = field.absolute_trace(ratio, ratio_level);
  const Element tr_one = field.absolute_trace(field.one());
  const bool trace_ok = tr_formula == tr_one;

  // t solves t^2 + Q t + P^3 = 0: t = Q z with z^2 + z = P^3 / Q^2.
  const Element p3 = field.pow(r.p_coef, 3);
  const Element v = field.div(p3, field.square(r.q_coef));
  const Level t_level = field.absolute_trace(v) == field.zero() ? Level::base : Level::extension;
  const auto z = field.solve_artin_schreier(v, t_level);
  if (!z) throw std::logic_error("char2_cubic_no_root: resolvent not solvable");
  const Element t1 = field.mul(r.q_coef, z->first);
  const Element t2 = field.mul(r.q_coef, z->second);

  const bool m_even = field.n() % 2 == 0;
  const Level cube_level = (m_even && field.in_base(t1) && field.in_base(t2)) ? Level::base : Level::extension;
  const bool cube = field.is_cube_in(t1, cube_level) || field.is_cube_in(t2, cube_level);

  CriterionVerdict out;
  out.theorem = "char2_cubic";
  out.has_mu_root = !(trace_ok && !cube);
  out.reason["trace_formula"] = opts.trace == CubicTraceFormula::statement ? "statement" : "proof";
  out.reason["trace_value"] = idx(tr_formula);
  out.reason["trace_level"] = ratio_level == Level::base ? "F_q" : "F_q2";
  out.reason["trace_direct"] = idx(field.absolute_trace(v));
  out.reason["trace_one"] = idx(tr_one);
  out.reason["p_coef"] = idx(r.p_coef);
  out.reason["q_coef"] = idx(r.q_coef);
  out.reason["t1"] = idx(t1);
  out.reason["t2"] = idx(t2);
  out.reason["cube_field"] = cube_level == Level::base ? "F_q" : "F_q2";
  out.reason["t_is_cube"] = cube ? "true" : "false";
  attach_witness(field, out, Poly({aq, b, b, a}));
  return out;
}

Poly xq1_family_reduce(const Field& field, Element a, Element b) {
  if (b.value == 0) throw std::invalid_argument("xq1_family_reduce: b must be nonzero");
  return Poly({b, field.add(a, field.frobenius(a)), b});
}

CriterionVerdict xq1_family_no_root(const Field& field, Element a, Element b, Element delta,
                                    const CriterionOptions& opts) {
  const Element s = field.add(a, field.frobenius(a));
  const bool base = field.in_base(a);
  const char* name = field.char2() ? "xq1_char2" : (base ? "xq1_base" : "xq1_odd");
  if (opts.enforce_hypotheses) {
    require(b.value != 0 && field.in_base(b), name, "b in F_q^*");
    if (field.char2()) {
      require(!base, name, "a outside F_q");
    } else if (base) {
      require(a.value != 0, name, "a in F_q^*");
      require(field.add(a, b).value != 0 && field.sub(a, b).value != 0, name, "(a+b)(a-b) != 0");
    } else {
      const Element twob = field.add(b, b);
      require(field.add(s, twob).value != 0 && field.sub(s, twob).value != 0, name,
              "(a+a^q+2b)(a+a^q-2b) != 0");
    }
  }
  if (b.value == 0) {
    // C' degenerates to (a + a^q) x, which has no root in mu unless it vanishes.
    CriterionVerdict v;
    v.theorem = name;
    v.has_mu_root = s.value == 0;
    if (v.has_mu_root) v.witness = field.one();
    v.reason["degenerate"] = "b = 0";
    return v;
  }
  const Poly reduced = xq1_family_reduce(field, a, b);
  CriterionVerdict v;
  if (field.char2()) {
    v.theorem = name;
    if (s.value == 0) {
      v.has_mu_root = true;
      v.witness = field.one();
    } else {
      const Element tr = field.absolute_trace(field.div(field.square(b), field.square(s)));
      v.has_mu_root = tr == field.one();
      v.reason["trace_b2_over_s2"] = idx(tr);
      attach_witness(field, v, reduced);
    }
    return v;
  }
  // Discriminant of C' up to the square factor 4.
  const Element d = field.sub(field.square(s), field.square(field.add(b, b)));
  if (opts.reading == ResidueReading::stated) {
    v.theorem = name;
    v.has_mu_root = d.value == 0 || field.is_square(d);
  } else {
    v = verdict_from(name, quadratic_route(field, reduced, delta));
  }
  v.reason["reading"] = opts.reading == ResidueReading::stated ? "stated" : "derived";
  v.reason["s2_minus_4b2"] = idx(d);
  v.reason["s2_minus_4b2_class"] = residue_class(field, d);
  attach_witness(field, v, reduced);
  return v;
}

LinearFactorFamily linear_factor_family(const Field& field, Element delta, Element beta, int n) {
  if (n < 1) throw std::invalid_argument("linear_factor_family: n must be positive");
  if (std::gcd(static_cast<std::uint64_t>(n), std::uint64_t{field.q()} - 1) != 1)
    throw std::invalid_argument("linear_factor_family: gcd(n, q-1) must be 1");
  const MobiusMap m(field, delta, beta);
  const Element dq = field.frobenius(delta);
  const Poly lin({field.neg(field.mul(beta, dq)), delta});
  const Poly base({field.neg(beta), field.one()});
  LinearFactorFamily out;
  out.c = sub(field, pow(field, lin, static_cast<unsigned>(n)), pow(field, base, static_cast<unsigned>(n)));
  out.root = field.div(field.mul(beta, field.sub(dq, field.one())), field.sub(delta, field.one()));
  if (eval(field, out.c, out.root).value != 0 || !mu_contains(field, out.root))
    throw std::logic_error("linear_factor_family: constructed root fails");
  if (eval(field, out.c, beta).value == 0) throw std::logic_error("linear_factor_family: C(beta) vanishes");
  return out;
}

Poly irreducible_family(const Field& field, const Poly& f, Element delta, Element beta) {
  const int m = f.degree();
  if (m < 2) throw std::invalid_argument("irreducible_family: degree must be at least 2");
  if (f.leading() != field.one()) throw std::invalid_argument("irreducible_family: f must be monic");
  if (!is_irreducible_over_base(field, f)) throw std::invalid_argument("irreducible_family: f is reducible");
  const MobiusMap map(field, delta, beta);
  const Poly lin({field.neg(field.mul(beta, field.frobenius(delta))), delta});
  const Poly base({field.neg(beta), field.one()});
  Poly c;
  for (int i = 0; i <= m; ++i) {
    const Element bi = f.coeff(static_cast<std::size_t>(m - i));
    if (bi.value == 0) continue;
    const Poly term = mul(field, pow(field, lin, static_cast<unsigned>(m - i)), pow(field, base, static_cast<unsigned>(i)));
    c = add(field, c, scale(field, term, bi));
  }
  return c;
}

}  // namespace scrpp
