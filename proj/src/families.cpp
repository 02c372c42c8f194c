#include "scrpp/families.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace scrpp {

namespace {

// ---------------------------------------------------------------------------
// Family table

enum class Char { any, odd, even };

struct FamilyInfo {
  const char* tag;
  Char chr;
  bool uses_delta;  // delta only enters as a proof device: verdict must not depend on it
  bool explicit_form;
};

constexpr FamilyInfo kFamilies[] = {
    {"thm3.2", Char::any, false, false},     {"thm3.5", Char::any, false, false},
    {"thm3.6", Char::even, false, false},    {"thm3.9", Char::odd, true, false},
    {"thm3.10", Char::odd, true, false},     {"thm3.11", Char::even, false, false},
    {"thm3.12", Char::any, false, false},    {"thm3.13", Char::even, true, false},
    {"thm3.14", Char::odd, true, false},     {"thm3.15.1", Char::odd, true, false},
    {"thm3.15.2", Char::even, false, false}, {"thm3.16", Char::any, false, false},
    {"thm3.17", Char::any, false, false},    {"cor4.1.1", Char::even, false, true},
    {"cor4.1.2", Char::odd, true, true},     {"cor4.1.3", Char::even, true, true},
    {"cor4.1.4", Char::odd, true, true},     {"cor4.1.5", Char::odd, true, true},
    {"cor4.1.6", Char::even, false, true},   {"cor4.2", Char::any, true, true},
    {"cor4.3.1", Char::even, false, true},   {"cor4.3.2", Char::even, false, true},
    {"cor4.3.3", Char::odd, true, true},     {"cor4.4", Char::odd, true, true},
};

const FamilyInfo* info(const std::string& tag) {
  for (const auto& f : kFamilies)
    if (tag == f.tag) return &f;
  return nullptr;
}

const FamilyInfo& require_info(const std::string& tag) {
  const auto* i = info(tag);
  if (!i) throw std::invalid_argument("unknown family '" + tag + "'");
  return *i;
}

// ---------------------------------------------------------------------------
// Parameters

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw std::invalid_argument("parameter " + key + ": expected a non-negative integer, got '" + v + "'");
  return out;
}

const std::string* find(const ParamMap& p, const std::string& k) {
  const auto it = p.find(k);
  return it == p.end() ? nullptr : &it->second;
}

Element to_elem(const Field& f, const std::string& key, std::uint64_t v) {
  if (v >= f.q2()) throw std::invalid_argument("parameter " + key + ": index " + std::to_string(v) + " outside F_{q^2}");
  return Element{static_cast<std::uint32_t>(v)};
}

Element get_elem(const Field& f, const ParamMap& p, const std::string& k) {
  const auto* v = find(p, k);
  if (!v) throw std::invalid_argument("missing parameter " + k);
  return to_elem(f, k, parse_u64(k, *v));
}

Element get_elem_or(const Field& f, const ParamMap& p, const std::string& k, Element def) {
  return find(p, k) ? get_elem(f, p, k) : def;
}

std::uint64_t get_u64_or(const ParamMap& p, const std::string& k, std::uint64_t def) {
  const auto* v = find(p, k);
  return v ? parse_u64(k, *v) : def;
}

std::vector<Element> get_elems(const Field& f, const ParamMap& p, const std::string& k) {
  std::vector<Element> out;
  const auto* v = find(p, k);
  if (!v || v->empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto end = v->find(':', start);
    const std::string item = v->substr(start, end == std::string::npos ? std::string::npos : end - start);
    out.push_back(to_elem(f, k, parse_u64(k, item)));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

Poly get_poly(const Field& f, const ParamMap& p, const std::string& k) {
  if (!find(p, k)) throw std::invalid_argument("missing parameter " + k);
  return Poly(get_elems(f, p, k));
}

std::string get_choice(const ParamMap& p, const std::string& k, std::initializer_list<const char*> allowed) {
  const auto* v = find(p, k);
  if (!v) return *allowed.begin();
  for (const char* a : allowed)
    if (*v == a) return *v;
  throw std::invalid_argument("parameter " + k + ": unsupported value '" + *v + "'");
}

std::string encode(Element x) { return std::to_string(x.value); }

std::string encode(const Poly& f) {
  std::string out;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i) out += ':';
    out += std::to_string(f.coeffs()[i].value);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Building blocks

Poly quad_c(const Field& f, Element a, Element b) { return Poly({f.frobenius(a), b, a}); }

Poly cubic_c(const Field& f, Element a, Element b) { return Poly({f.frobenius(a), b, b, a}); }

Poly binomial_c(const Field& f, Element a) { return Poly({f.frobenius(a), f.zero(), f.zero(), a}); }

// a x^{q+1} + b x^q + b x + a^q
Poly xq1_c(const Field& f, Element a, Element b) {
  std::vector<Element> c(f.q() + 2, f.zero());
  c[0] = f.frobenius(a);
  c[1] = b;
  c[f.q()] = f.add(c[f.q()], b);
  c[f.q() + 1] = a;
  return Poly(std::move(c));
}

// a^q x^{2q} + b x^q + a
Poly deg2q_c(const Field& f, Element a, Element b) {
  std::vector<Element> c(2 * f.q() + 1, f.zero());
  c[0] = a;
  c[f.q()] = b;
  c[2 * f.q()] = f.frobenius(a);
  return Poly(std::move(c));
}

SparsePoly sparse(const Field& f, std::vector<Term> terms) { return SparsePoly(f, std::move(terms)); }

bool in_base_star(const Field& f, Element b) { return b.value != 0 && f.in_base(b); }

std::uint64_t mod_nonneg(std::int64_t v, std::uint64_t m) {
  const auto sm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((v % sm) + sm) % sm);
}

using VerdictFn = std::function<CriterionVerdict(Element delta, const CriterionOptions&)>;

struct Plan {
  std::string theorem;
  Poly b;
  std::int64_t r = 1;
  Poly c;
  std::optional<std::uint64_t> fixed_s;
  std::optional<std::string> outside;  // failed family hypothesis
  VerdictFn verdict;
  CriterionOptions opts;
  std::vector<std::pair<std::string, CriterionOptions>> variants;
  // The printed claim: true = PP, false = not PP; nullopt when its own hypotheses fail.
  std::function<std::optional<bool>()> printed_claim;
  std::optional<SparsePoly> printed;
  std::vector<std::string> notes;
};

CriterionOptions read_options(const ParamMap& p) {
  CriterionOptions o;
  if (get_choice(p, "reading", {"derived", "stated"}) == "stated") o.reading = ResidueReading::stated;
  if (get_choice(p, "trace", {"statement", "proof"}) == "proof") o.trace = CubicTraceFormula::proof;
  return o;
}

CriterionOptions flip_reading(CriterionOptions o) {
  o.reading = o.reading == ResidueReading::derived ? ResidueReading::stated : ResidueReading::derived;
  return o;
}

CriterionOptions flip_trace(CriterionOptions o) {
  o.trace = o.trace == CubicTraceFormula::statement ? CubicTraceFormula::proof : CubicTraceFormula::statement;
  return o;
}

std::string reading_variant_name(const CriterionOptions& base) {
  return base.reading == ResidueReading::derived ? "stated_reading" : "derived_reading";
}

std::string trace_variant_name(const CriterionOptions& base) {
  return base.trace == CubicTraceFormula::statement ? "proof_trace" : "statement_trace";
}

// B = x^m (r = 1) unless B and r are given explicitly.
void monomial_or_explicit_B(const Field& f, const ParamMap& p, Plan& plan) {
  if (find(p, "B")) {
    plan.b = get_poly(f, p, "B");
    plan.r = static_cast<std::int64_t>(get_u64_or(p, "r", 1));
    if (plan.b.is_zero()) throw std::invalid_argument("parameter B: zero polynomial");
  } else {
    plan.b = Poly::monomial(f.one(), get_u64_or(p, "m", 0));
    plan.r = 1;
  }
}

std::uint64_t m_param(const ParamMap& p) { return get_u64_or(p, "m", 0); }

std::optional<bool> no_root_claim(const std::function<CriterionVerdict()>& v) {
  try {
    return !v().has_mu_root;
  } catch (const HypothesisViolation&) {
    return std::nullopt;
  }
}

void add_reading_variant(Plan& plan) { plan.variants.push_back({reading_variant_name(plan.opts), flip_reading(plan.opts)}); }

// ---------------------------------------------------------------------------
// Theorem families

Plan plan_theorem(const FamilyContext& ctx, const std::string& tag, const ParamMap& p) {
  const Field& f = ctx.field();
  Plan plan;
  plan.opts = read_options(p);
  const auto require_outside = [&](Element a) {
    if (f.in_base(a) && !plan.outside) plan.outside = "a outside F_q";
  };
  const auto require_b = [&](Element b) {
    if (!in_base_star(f, b) && !plan.outside) plan.outside = "b in F_q^*";
  };

  if (tag == "thm3.2") {
    monomial_or_explicit_B(f, p, plan);
    plan.c = get_poly(f, p, "C");
    if (plan.c.is_zero()) throw std::invalid_argument("parameter C: zero polynomial");
    plan.theorem = "mu_search";
    const MuGroup* mu = &ctx.mu();
    const Poly c = plan.c;
    plan.verdict = [mu, c](Element, const CriterionOptions&) {
      CriterionVerdict v;
      v.theorem = "mu_search";
      v.witness = has_root_in_mu(*mu, c);
      v.has_mu_root = v.witness.has_value();
      return v;
    };
    return plan;
  }

  monomial_or_explicit_B(f, p, plan);

  if (tag == "thm3.5") {
    const Element a1 = get_elem(f, p, "a1");
    const Element beta = get_elem_or(f, p, "beta", f.one());
    if (a1.value == 0) plan.outside = "a1 != 0";
    if (!mu_contains(f, beta)) plan.outside = "beta in mu_{q+1}";
    plan.c = a1.value == 0 ? Poly::constant(f.one()) : Poly({f.frobenius(f.mul(beta, a1)), a1});
    plan.theorem = "degree_one";
    plan.verdict = [&f, a1, beta](Element, const CriterionOptions&) {
      CriterionVerdict v;
      v.theorem = "degree_one";
      v.has_mu_root = true;
      v.witness = deg1_root(f, a1, beta);
      return v;
    };
    return plan;
  }

  if (tag == "thm3.16") {
    const Element delta = get_elem_or(f, p, "delta", canonical_delta(f));
    const Element beta = get_elem_or(f, p, "beta", f.one());
    const std::uint64_t n = get_u64_or(p, "n", 1);
    if (f.in_base(delta)) throw std::invalid_argument("parameter delta must lie outside F_q");
    if (n < 1 || n > 64) throw std::invalid_argument("parameter n must lie in 1..64");
    plan.theorem = "linear_factor";
    const Poly lin({f.neg(f.mul(beta, f.frobenius(delta))), delta});
    const Poly base({f.neg(beta), f.one()});
    plan.c = sub(f, pow(f, lin, static_cast<unsigned>(n)), pow(f, base, static_cast<unsigned>(n)));
    if (!mu_contains(f, beta)) plan.outside = "beta in mu_{q+1}";
    else if (std::gcd(n, std::uint64_t{f.q()} - 1) != 1) plan.outside = "gcd(n, q-1) = 1";
    else if (f.pow(delta, static_cast<std::int64_t>(n)) == f.one()) plan.outside = "delta^n != 1 (degree n)";
    plan.verdict = [&f, delta, beta, n](Element, const CriterionOptions&) {
      const auto fam = linear_factor_family(f, delta, beta, static_cast<int>(n));
      CriterionVerdict v;
      v.theorem = "linear_factor";
      v.has_mu_root = true;
      v.witness = fam.root;
      return v;
    };
    return plan;
  }

  if (tag == "thm3.17") {
    const Element delta = get_elem_or(f, p, "delta", canonical_delta(f));
    const Element beta = get_elem_or(f, p, "beta", f.one());
    const Poly fp = get_poly(f, p, "f");
    if (f.in_base(delta)) throw std::invalid_argument("parameter delta must lie outside F_q");
    plan.theorem = "irreducible_family";
    const bool ok_f = fp.degree() >= 2 && fp.leading() == f.one() && over_base(f, fp) && is_irreducible_over_base(f, fp);
    if (!ok_f) {
      plan.outside = "f monic irreducible over F_q of degree >= 2";
      plan.c = Poly::constant(f.one());
    } else if (!mu_contains(f, beta)) {
      plan.outside = "beta in mu_{q+1}";
      plan.c = Poly::constant(f.one());
    } else {
      plan.c = irreducible_family(f, fp, delta, beta);
      if (eval(f, fp, delta).value == 0) plan.outside = "f(delta) != 0 (degree m)";
    }
    plan.verdict = [](Element, const CriterionOptions&) {
      CriterionVerdict v;
      v.theorem = "irreducible_family";
      v.has_mu_root = false;
      return v;
    };
    return plan;
  }

  const Element a = get_elem(f, p, "a");
  if (tag == "thm3.12") {
    require_outside(a);
    plan.c = binomial_c(f, a);
    plan.theorem = "binomial_cubic";
    plan.verdict = [&f, a](Element, const CriterionOptions& o) { return binomial_deg3_no_root(f, a, o); };
    return plan;
  }

  const Element b = get_elem(f, p, "b");
  if (tag == "thm3.6" || tag == "thm3.11") {
    require_outside(a);
    require_b(b);
    plan.c = tag == "thm3.6" ? quad_c(f, a, b) : deg2q_c(f, a, b);
    plan.theorem = "char2_quadratic_trace";
    plan.verdict = [&f, a, b](Element, const CriterionOptions&) { return char2_deg2_has_root(f, a, b); };
  } else if (tag == "thm3.9" || tag == "thm3.10") {
    plan.c = tag == "thm3.9" ? quad_c(f, a, b) : deg2q_c(f, a, b);
    plan.theorem = "odd_quadratic";
    plan.verdict = [&f, a, b](Element d, const CriterionOptions& o) { return odd_deg2_no_root(f, a, b, d, o); };
    add_reading_variant(plan);
  } else if (tag == "thm3.13") {
    plan.c = cubic_c(f, a, b);
    plan.theorem = "char2_cubic";
    plan.verdict = [&f, a, b](Element d, const CriterionOptions& o) { return char2_cubic_no_root(f, a, b, d, o); };
    plan.variants.push_back({trace_variant_name(plan.opts), flip_trace(plan.opts)});
  } else if (tag == "thm3.14" || tag == "thm3.15.1" || tag == "thm3.15.2") {
    if (tag == "thm3.14") {
      if (!in_base_star(f, a)) plan.outside = "a in F_q^*";
    } else {
      require_outside(a);
    }
    plan.c = xq1_c(f, a, b);
    plan.theorem = "xq1";
    plan.verdict = [&f, a, b](Element d, const CriterionOptions& o) { return xq1_family_no_root(f, a, b, d, o); };
    if (tag != "thm3.15.2") add_reading_variant(plan);
  } else {
    throw std::invalid_argument("unknown family '" + tag + "'");
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Explicit families

Plan plan_corollary(const FamilyContext& ctx, const std::string& tag, const ParamMap& p) {
  const Field& f = ctx.field();
  const std::uint64_t q = f.q();
  Plan plan;
  plan.opts = read_options(p);
  plan.printed = corollary_builder(f, tag, p);
  const Element a = get_elem(f, p, "a");
  const Element aq = f.frobenius(a);
  const Element s_a = f.add(a, aq);

  if (tag.rfind("cor4.1.", 0) == 0) {
    plan.b = Poly::monomial(f.one(), m_param(p));
    plan.r = 1;
    const Element b = get_elem(f, p, "b");
    if (tag == "cor4.1.1" || tag == "cor4.1.2") {
      plan.c = quad_c(f, a, b);
      plan.fixed_s = 3;
      if (f.in_base(a)) plan.outside = "a outside F_q";
      else if (!in_base_star(f, b)) plan.outside = "b in F_q^*";
      if (tag == "cor4.1.1") {
        plan.theorem = "char2_quadratic_trace";
        plan.verdict = [&f, a, b](Element, const CriterionOptions&) { return char2_deg2_has_root(f, a, b); };
        plan.printed_claim = [&f, a, b]() -> std::optional<bool> {
          if (f.in_base(a) || !in_base_star(f, b)) return std::nullopt;
          return f.n() % 2 == 1 && !char2_deg2_has_root(f, a, b).has_mu_root;
        };
        plan.notes.push_back("k odd is equivalent to gcd(3, q-1) = 1");
      } else {
        plan.theorem = "odd_quadratic";
        plan.verdict = [&f, a, b](Element d, const CriterionOptions& o) { return odd_deg2_no_root(f, a, b, d, o); };
        add_reading_variant(plan);
        plan.printed_claim = [&f, a, b]() {
          CriterionOptions st;
          st.reading = ResidueReading::stated;
          return no_root_claim([&] { return odd_deg2_no_root(f, a, b, canonical_delta(f), st); });
        };
        plan.notes.push_back("printed claim omits gcd(3, q-1) = 1");
      }
      return plan;
    }
    if (tag == "cor4.1.3") {
      plan.c = cubic_c(f, a, b);
      plan.fixed_s = 4;
      plan.theorem = "char2_cubic";
      plan.verdict = [&f, a, b](Element d, const CriterionOptions& o) { return char2_cubic_no_root(f, a, b, d, o); };
      plan.variants.push_back({trace_variant_name(plan.opts), flip_trace(plan.opts)});
      plan.printed_claim = [&f, a, b]() {
        CriterionOptions pr;
        pr.trace = CubicTraceFormula::proof;
        return no_root_claim([&] { return char2_cubic_no_root(f, a, b, canonical_delta(f), pr); });
      };
      plan.notes.push_back("printed trace argument uses the (a^q+a)^3 numerator");
      return plan;
    }
    // degree q+1 members
    plan.c = xq1_c(f, a, b);
    plan.fixed_s = q + 2;
    plan.theorem = "xq1";
    plan.notes.push_back("printed claim omits gcd(q+2, q-1) = gcd(3, q-1) = 1");
    if (tag == "cor4.1.4") {
      if (!in_base_star(f, a)) plan.outside = "a in F_q^*";
    } else if (f.in_base(a)) {
      plan.outside = "a outside F_q";
    }
    plan.verdict = [&f, a, b](Element d, const CriterionOptions& o) { return xq1_family_no_root(f, a, b, d, o); };
    if (tag == "cor4.1.6") {
      if (b.value != 0 && !f.in_base(b)) plan.outside = "b in F_q";
      plan.printed_claim = [&f, a, b, s_a]() -> std::optional<bool> {
        if (f.in_base(a) || !f.in_base(b)) return std::nullopt;
        return f.absolute_trace(f.div(f.square(b), f.square(s_a))) != f.one();
      };
      plan.notes.push_back("printed middle exponent (q-1)(m+2)+q+2 differs from the assembled (q-1)(m+q)+q+2");
    } else {
      add_reading_variant(plan);
      const bool printed_pm_b = tag == "cor4.1.5";
      plan.printed_claim = [&f, a, b, s_a, printed_pm_b]() -> std::optional<bool> {
        CriterionOptions st;
        st.reading = ResidueReading::stated;
        if (printed_pm_b) {
          // printed hypothesis (a+a^q+b)(a+a^q-b) != 0
          if (f.in_base(a) || !in_base_star(f, b) || f.add(s_a, b).value == 0 || f.sub(s_a, b).value == 0)
            return std::nullopt;
          st.enforce_hypotheses = false;
        }
        return no_root_claim([&] { return xq1_family_no_root(f, a, b, canonical_delta(f), st); });
      };
      if (printed_pm_b) plan.notes.push_back("printed hypothesis uses (a+a^q+b)(a+a^q-b); the criterion needs +-2b");
    }
    return plan;
  }

  if (tag == "cor4.2") {
    const Element b = get_elem(f, p, "b");
    std::vector<Element> bb(q + 2, f.zero());
    bb[2] = f.one();
    bb[q + 1] = f.add(bb[q + 1], f.one());
    plan.b = Poly(std::move(bb));
    plan.r = 3;
    plan.c = quad_c(f, a, b);
    plan.fixed_s = 5;
    if (f.in_base(a)) plan.outside = "a outside F_q";
    else if (!in_base_star(f, b)) plan.outside = "b in F_q^*";
    if (f.char2()) {
      plan.theorem = "char2_quadratic_trace";
      plan.verdict = [&f, a, b](Element, const CriterionOptions&) { return char2_deg2_has_root(f, a, b); };
      plan.printed_claim = []() -> std::optional<bool> { return std::nullopt; };
      plan.notes.push_back("characteristic 2: B(1) = 0, so B never qualifies; the printed hypothesis is vacuous");
    } else {
      plan.theorem = "odd_quadratic";
      plan.verdict = [&f, a, b](Element d, const CriterionOptions& o) { return odd_deg2_no_root(f, a, b, d, o); };
      add_reading_variant(plan);
      plan.printed_claim = [&f, a, b, q]() -> std::optional<bool> {
        if ((q + 1) % 4 == 0) return std::nullopt;  // -1 is a square in mu_{q+1}
        CriterionOptions st;
        st.reading = ResidueReading::stated;
        return no_root_claim([&] { return odd_deg2_no_root(f, a, b, canonical_delta(f), st); });
      };
      plan.notes.push_back("stated for even characteristic; evaluated here under the odd-characteristic reading");
    }
    return plan;
  }

  if (tag.rfind("cor4.3.", 0) == 0) {
    const Element ap = get_elem(f, p, "aprime");
    const Element ap1 = f.add(ap, f.one());
    std::vector<Element> bb(q + 2, f.zero());
    bb[0] = f.one();
    bb[q + 1] = ap;
    plan.b = Poly(std::move(bb));
    plan.r = 1;
    if (ap1.value == 0) plan.outside = "a' + 1 != 0";
    else if (f.in_base(a)) plan.outside = "a outside F_q";
    if (tag == "cor4.3.1") {
      plan.c = binomial_c(f, a);
      plan.fixed_s = 4;
      plan.theorem = "binomial_cubic";
      plan.verdict = [&f, a](Element, const CriterionOptions& o) { return binomial_deg3_no_root(f, a, o); };
      plan.printed_claim = [&f, a, ap1]() {
        if (ap1.value == 0) return std::optional<bool>{};
        return no_root_claim([&] { return binomial_deg3_no_root(f, a); });
      };
      return plan;
    }
    const Element b = get_elem(f, p, "b");
    if (!plan.outside && !in_base_star(f, b)) plan.outside = "b in F_q^*";
    plan.c = xq1_c(f, a, b);
    plan.fixed_s = q + 2;
    plan.theorem = "xq1";
    plan.notes.push_back("printed claim omits gcd(q+2, q-1) = gcd(3, q-1) = 1");
    if (tag == "cor4.3.2") {
      plan.verdict = [&f, a, b](Element d, const CriterionOptions& o) { return xq1_family_no_root(f, a, b, d, o); };
      plan.printed_claim = [&f, a, b, s_a, ap1]() -> std::optional<bool> {
        if (ap1.value == 0 || f.in_base(a) || !in_base_star(f, b)) return std::nullopt;
        return f.absolute_trace(f.div(f.square(b), f.square(s_a))) != f.one();
      };
      return plan;
    }
    // cor4.3.3: the printed hypothesis (a+a^q+2b)(a+a^q-b) versus the criterion's (a+a^q+2b)(a+a^q-2b)
    const bool printed_hyp = get_choice(p, "hyp", {"theorem", "printed"}) == "printed";
    const Element twob = f.add(b, b);
    const bool printed_ok = f.add(s_a, twob).value != 0 && f.sub(s_a, b).value != 0;
    if (printed_hyp) {
      if (!plan.outside && !printed_ok) plan.outside = "(a+a^q+2b)(a+a^q-b) != 0";
      plan.opts.enforce_hypotheses = false;
      plan.notes.push_back("coverage by the printed hypothesis");
    }
    plan.verdict = [&f, a, b](Element d, const CriterionOptions& o) { return xq1_family_no_root(f, a, b, d, o); };
    add_reading_variant(plan);
    plan.printed_claim = [&f, a, b, ap1, printed_ok]() -> std::optional<bool> {
      if (ap1.value == 0 || f.in_base(a) || !in_base_star(f, b) || !printed_ok) return std::nullopt;
      CriterionOptions st;
      st.reading = ResidueReading::stated;
      st.enforce_hypotheses = false;
      return no_root_claim([&] { return xq1_family_no_root(f, a, b, canonical_delta(f), st); });
    };
    return plan;
  }

  if (tag == "cor4.4") {
    const Element b = get_elem(f, p, "b");
    const bool mu_reading = get_choice(p, "breading", {"Fq", "mu"}) == "mu";
    std::vector<Element> bb(q + 1, f.zero());
    bb[q - 2] = f.one();
    bb[q] = f.one();
    plan.b = Poly(std::move(bb));
    plan.r = 1;
    plan.c = quad_c(f, a, b);
    plan.fixed_s = 3;
    if (f.in_base(a)) plan.outside = "a outside F_q";
    else if (mu_reading ? !mu_contains(f, b) : !in_base_star(f, b))
      plan.outside = mu_reading ? "b in mu_{q+1}" : "b in F_q^*";
    plan.theorem = "odd_quadratic";
    plan.verdict = [&f, a, b](Element d, const CriterionOptions& o) { return odd_deg2_no_root(f, a, b, d, o); };
    add_reading_variant(plan);
    plan.printed_claim = [&f, a, b, q, mu_reading]() -> std::optional<bool> {
      if ((q + 1) % 4 == 0) return std::nullopt;
      if (mu_reading ? !mu_contains(f, b) : !in_base_star(f, b)) return std::nullopt;
      CriterionOptions st;
      st.reading = ResidueReading::stated;
      return no_root_claim([&] { return odd_deg2_no_root(f, a, b, canonical_delta(f), st); });
    };
    plan.notes.push_back("on mu_{q+1}, x B^(q)(1/x)/B(x) = x^5, so B qualifies iff 4 does not divide q+1 and gcd(5, q+1) = 1");
    plan.notes.push_back("printed claim omits gcd(3, q-1) = 1");
    return plan;
  }
  throw std::invalid_argument("unknown family '" + tag + "'");
}

Prediction predict(bool gcd_ok, bool has_root) { return gcd_ok && !has_root ? Prediction::yes : Prediction::no; }

}  // namespace

std::string to_string(Prediction p) {
  switch (p) {
    case Prediction::yes: return "yes";
    case Prediction::no: return "no";
    case Prediction::not_covered: return "not-covered";
  }
  return "not-covered";
}

FamilyContext::FamilyContext(const FieldSpec& spec, std::uint64_t bound)
    : field_(std::make_unique<Field>(Field::from_spec(spec))),
      mu_(std::make_unique<MuGroup>(*field_)),
      oracle_(std::make_unique<PermutationOracle>(*field_, bound)) {}

const std::vector<std::string>& family_tags() {
  static const std::vector<std::string> tags = [] {
    std::vector<std::string> out;
    for (const auto& f : kFamilies) out.emplace_back(f.tag);
    return out;
  }();
  return tags;
}

bool is_family(const std::string& tag) { return info(tag) != nullptr; }

bool family_applies(const Field& field, const std::string& tag) {
  const auto& i = require_info(tag);
  if (i.chr == Char::odd) return !field.char2();
  if (i.chr == Char::even) return field.char2();
  return true;
}

bool is_explicit_family(const std::string& tag) { return require_info(tag).explicit_form; }

SparsePoly corollary_builder(const Field& f, const std::string& tag, const ParamMap& p) {
  const auto& i = require_info(tag);
  if (!i.explicit_form) throw std::invalid_argument("family '" + tag + "' has no printed form");
  const std::uint64_t q = f.q(), qm1 = q - 1, m = m_param(p);
  const Element a = get_elem(f, p, "a");
  const Element aq = f.frobenius(a);
  const Element s_a = f.add(a, aq);
  if (tag == "cor4.1.1" || tag == "cor4.1.2") {
    const Element b = get_elem(f, p, "b");
    return sparse(f, {{(2 + m) * qm1 + 3, a}, {(m + 1) * qm1 + 3, b}, {m * qm1 + 3, aq}});
  }
  if (tag == "cor4.1.3") {
    const Element b = get_elem(f, p, "b");
    return sparse(f, {{(m + 3) * qm1 + 4, a}, {(m + 2) * qm1 + 4, b}, {(m + 1) * qm1 + 4, b}, {m * qm1 + 4, aq}});
  }
  if (tag == "cor4.1.4" || tag == "cor4.1.5" || tag == "cor4.1.6") {
    const Element b = get_elem(f, p, "b");
    const Element lead = tag == "cor4.1.4" ? f.add(a, a) : s_a;
    const std::uint64_t mid = tag == "cor4.1.6" ? m + 2 : m + q;
    return sparse(f, {{m * qm1 + q + 2, lead}, {qm1 * mid + q + 2, b}, {qm1 * (m + 1) + q + 2, b}});
  }
  if (tag == "cor4.2") {
    const Element b = get_elem(f, p, "b");
    return sparse(f, {{5, aq}, {q + 4, b}, {2 * q + 3, s_a}, {4 * q + 1, a}, {3 * q + 2, b}});
  }
  if (tag == "cor4.3.1") {
    const Element ap1 = f.add(get_elem(f, p, "aprime"), f.one());
    return sparse(f, {{3 * q + 1, f.mul(ap1, a)}, {4, f.mul(ap1, aq)}});
  }
  if (tag == "cor4.3.2" || tag == "cor4.3.3") {
    const Element ap1 = f.add(get_elem(f, p, "aprime"), f.one());
    const Element b = get_elem(f, p, "b");
    return sparse(f, {{q + 2, f.mul(ap1, s_a)}, {q * q + 2, f.mul(ap1, b)}, {2 * q + 1, f.mul(ap1, b)}});
  }
  if (tag == "cor4.4") {
    const Element b = get_elem(f, p, "b");
    return sparse(f, {{(q + 2) * qm1 + 3, a},
                      {qm1 * q + 3, s_a},
                      {qm1 * qm1 + 3, b},
                      {qm1 * (q - 2) + 3, aq},
                      {3, b}});
  }
  throw std::invalid_argument("family '" + tag + "' has no printed form");
}

PermReport predict_and_check(const FamilyContext& ctx, const std::string& tag, const ParamMap& params) {
  const auto& fi = require_info(tag);
  const Field& f = ctx.field();
  if (!family_applies(f, tag))
    throw std::invalid_argument("family '" + tag + "' does not apply in characteristic " + std::to_string(f.p()));

  Plan plan = fi.explicit_form ? plan_corollary(ctx, tag, params) : plan_theorem(ctx, tag, params);

  PermReport rep;
  rep.spec = f.spec();
  rep.q = f.q();
  rep.family = tag;
  rep.params = params;
  rep.theorem = plan.theorem;
  rep.notes = plan.notes;

  const std::uint64_t qp1 = std::uint64_t{f.q()} + 1, qm1 = std::uint64_t{f.q()} - 1;
  const std::int64_t n = plan.c.degree();
  if (const auto* sv = find(params, "s")) {
    rep.s = parse_u64("s", *sv);
    if (rep.s == 0) throw std::invalid_argument("parameter s must be positive");
  } else if (plan.fixed_s) {
    rep.s = *plan.fixed_s;
  } else {
    const auto coprime = smallest_coprime_s(f, plan.r, n);
    rep.s = coprime ? *coprime : compute_s(f, plan.r, n).front().s;
  }
  rep.gcd_ok = std::gcd(rep.s, qm1) == 1;

  const SparsePoly pp = expand_pp(f, plan.b, plan.c, rep.s);
  rep.polynomial = to_string(f, pp);
  rep.terms = pp.size();
  rep.oracle_pp = ctx.oracle().is_permutation(pp);
  rep.pp = pp;
  if (plan.printed) rep.printed_form_matches = ctx.oracle().same_function(*plan.printed, pp);

  std::optional<std::string> why = plan.outside;
  if (!why && !validate_B(ctx.mu(), plan.b, plan.r).validated) why = "B qualifies (no mu-root, x^r B^(q)(1/x)/B(x) permutes mu)";
  if (!why && !scr_check(f, plan.c)) why = "C is SCR";
  if (!why && mod_nonneg(static_cast<std::int64_t>(rep.s % qp1), qp1) != mod_nonneg(plan.r + n, qp1))
    why = "s = r + deg C (mod q+1)";

  const Element delta = get_elem_or(f, params, "delta", canonical_delta(f));
  if (f.in_base(delta)) throw std::invalid_argument("parameter delta must lie outside F_q");
  if (why) {
    rep.reason["not_covered"] = *why;
  } else {
    try {
      const CriterionVerdict v = plan.verdict(delta, plan.opts);
      rep.predicted = predict(rep.gcd_ok, v.has_mu_root);
      if (!v.theorem.empty()) rep.theorem = v.theorem;
      for (const auto& [k, val] : v.reason) rep.reason[k] = val;
      rep.reason["has_mu_root"] = v.has_mu_root ? "true" : "false";
      if (v.witness) rep.reason["witness"] = encode(*v.witness);
      if (fi.uses_delta) {
        const auto extra = get_elems(f, params, "delta_extra");
        if (!extra.empty()) {
          bool same = true;
          for (auto d : extra) {
            if (f.in_base(d)) throw std::invalid_argument("parameter delta_extra must lie outside F_q");
            same = same && plan.verdict(d, plan.opts).has_mu_root == v.has_mu_root;
          }
          rep.delta_consistent = same;
        }
      }
    } catch (const HypothesisViolation& e) {
      rep.predicted = Prediction::not_covered;
      rep.reason["not_covered"] = e.condition();
    }
    for (const auto& [name, o] : plan.variants) {
      try {
        rep.alternatives[name] = predict(rep.gcd_ok, plan.verdict(delta, o).has_mu_root);
      } catch (const HypothesisViolation&) {
        rep.alternatives[name] = Prediction::not_covered;
      }
    }
  }
  if (plan.printed_claim) {
    const auto claim = plan.printed_claim();
    rep.alternatives["printed_claim"] = claim ? (*claim ? Prediction::yes : Prediction::no) : Prediction::not_covered;
  }
  rep.agree = rep.predicted != Prediction::not_covered && (rep.predicted == Prediction::yes) == rep.oracle_pp;
  return rep;
}

// ---------------------------------------------------------------------------
// Parameter spaces

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

struct Draw {
  std::uint64_t seed;
  std::uint64_t counter = 0;
  std::uint64_t next(std::uint64_t bound) { return splitmix64(seed, counter++) % bound; }
};

std::vector<std::uint64_t> valid_m(const FamilyContext& ctx, const SpaceOptions& opts) {
  std::vector<std::uint64_t> ms;
  if (opts.m_values) {
    ms = *opts.m_values;
  } else {
    for (std::uint64_t m = 0; m <= ctx.field().q(); ++m) ms.push_back(m);
  }
  std::vector<std::uint64_t> out;
  for (auto m : ms)
    if (validate_B(ctx.mu(), Poly::monomial(ctx.field().one(), m), 1).validated) out.push_back(m);
  return out;
}

// First coprime and first non-coprime representative of the class r + n (mod q+1).
std::vector<std::uint64_t> s_variants(const Field& f, std::int64_t r, std::int64_t n) {
  std::optional<std::uint64_t> co, nonco;
  for (const auto& c : compute_s(f, r, n)) {
    if (c.gcd == 1 && !co) co = c.s;
    if (c.gcd != 1 && !nonco) nonco = c.s;
  }
  std::vector<std::uint64_t> out;
  if (co) out.push_back(*co);
  if (nonco) out.push_back(*nonco);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Element> delta_set(const Field& f, const SpaceOptions& opts, std::uint64_t stream) {
  std::vector<Element> out{canonical_delta(f)};
  Draw d{splitmix64(opts.seed, stream)};
  for (int k = 0; k < opts.delta_rand; ++k)
    out.push_back(Element{static_cast<std::uint32_t>(f.q() + d.next(f.q2() - f.q()))});
  return out;
}

std::string extra_deltas(const Field& f, const SpaceOptions& opts, std::uint64_t index) {
  std::string out;
  Draw d{splitmix64(opts.seed ^ 0xD1B54A32D192ED03ULL, index)};
  for (int k = 0; k < opts.delta_rand; ++k) {
    if (k) out += ':';
    out += std::to_string(f.q() + d.next(f.q2() - f.q()));
  }
  return out;
}

std::vector<Poly> monic_irreducibles(const Field& f, int deg) {
  std::vector<Poly> out;
  std::uint64_t total = 1;
  for (int i = 0; i < deg; ++i) total *= f.q();
  for (std::uint64_t v = 0; v < total; ++v) {
    std::vector<Element> c(static_cast<std::size_t>(deg) + 1, f.zero());
    std::uint64_t w = v;
    for (int i = 0; i < deg; ++i) {
      c[static_cast<std::size_t>(i)] = Element{static_cast<std::uint32_t>(w % f.q())};
      w /= f.q();
    }
    c[static_cast<std::size_t>(deg)] = f.one();
    Poly fp(std::move(c));
    if (is_irreducible_over_base(f, fp)) out.push_back(std::move(fp));
  }
  return out;
}

Poly random_element_poly(const Field& f, Draw& d, int deg) {
  std::vector<Element> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = Element{static_cast<std::uint32_t>(d.next(f.q2()))};
  if (c.back().value == 0) c.back() = f.one();
  return Poly(std::move(c));
}

// Random SCR polynomial: c_i = lambda d_i with d_{n-i} = d_i^q.
Poly random_scr(const Field& f, Draw& d, int n) {
  const Element lambda{static_cast<std::uint32_t>(1 + d.next(f.q2() - 1))};
  std::vector<Element> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; 2 * i < n; ++i) {
    c[static_cast<std::size_t>(i)] = Element{static_cast<std::uint32_t>(1 + d.next(f.q2() - 1))};
    c[static_cast<std::size_t>(n - i)] = f.frobenius(c[static_cast<std::size_t>(i)]);
  }
  if (n % 2 == 0) c[static_cast<std::size_t>(n / 2)] = Element{static_cast<std::uint32_t>(d.next(f.q()))};
  if (n == 0 && c[0].value == 0) c[0] = f.one();
  for (auto& x : c) x = f.mul(lambda, x);
  return Poly(std::move(c));
}

}  // namespace

std::vector<ParamMap> parameter_space(const FamilyContext& ctx, const std::string& tag, const SpaceOptions& opts) {
  const auto& fi = require_info(tag);
  const Field& f = ctx.field();
  std::vector<ParamMap> out;
  if (!family_applies(f, tag)) return out;
  const std::uint32_t q = f.q(), q2 = f.q2();

  auto push = [&](ParamMap p) {
    if (fi.uses_delta && opts.delta_rand > 0) p["delta_extra"] = extra_deltas(f, opts, out.size());
    out.push_back(std::move(p));
  };
  auto with_m_and_s = [&](const ParamMap& base, std::int64_t n) {
    for (auto m : valid_m(ctx, opts))
      for (auto s : s_variants(f, 1, n)) {
        ParamMap p = base;
        p["m"] = std::to_string(m);
        p["s"] = std::to_string(s);
        push(std::move(p));
      }
  };
  auto with_m = [&](const ParamMap& base) {
    for (auto m : valid_m(ctx, opts)) {
      ParamMap p = base;
      p["m"] = std::to_string(m);
      push(std::move(p));
    }
  };
  auto E = [](std::uint32_t v) { return std::to_string(v); };

  if (tag == "thm3.2") {
    for (std::uint64_t i = 0; i < opts.random_count; ++i) {
      Draw d{splitmix64(opts.seed, (std::uint64_t{q} << 32) ^ i)};
      Poly b;
      std::int64_t r = 1;
      bool found = false;
      for (int attempt = 0; attempt < 200 && !found; ++attempt) {
        b = random_element_poly(f, d, static_cast<int>(d.next(3)));
        r = static_cast<std::int64_t>(1 + d.next(2 * q + 2));
        found = validate_B(ctx.mu(), b, r).validated;
      }
      if (!found) {
        b = Poly::constant(f.one());
        r = 1;
      }
      const int n = static_cast<int>(d.next(5));
      const Poly c = random_scr(f, d, n);
      const auto cands = compute_s(f, r, n);
      const auto s = cands[d.next(cands.size())].s;
      push({{"B", encode(b)}, {"r", std::to_string(r)}, {"C", encode(c)}, {"s", std::to_string(s)}});
    }
    return out;
  }
  if (tag == "thm3.5") {
    for (std::uint32_t a1 = 1; a1 < q2; ++a1)
      for (auto beta : ctx.mu().elements()) with_m_and_s({{"a1", E(a1)}, {"beta", encode(beta)}}, 1);
    return out;
  }
  if (tag == "thm3.12") {
    for (std::uint32_t a = q; a < q2; ++a) with_m_and_s({{"a", E(a)}}, 3);
    return out;
  }
  if (tag == "thm3.6" || tag == "thm3.9" || tag == "thm3.10" || tag == "thm3.11" || tag == "thm3.13" ||
      tag == "thm3.15.1" || tag == "thm3.15.2") {
    const std::int64_t n = tag == "thm3.13"                              ? 3
                           : (tag == "thm3.10" || tag == "thm3.11")      ? 2 * std::int64_t{q}
                           : (tag == "thm3.15.1" || tag == "thm3.15.2") ? std::int64_t{q} + 1
                                                                         : 2;
    for (std::uint32_t a = q; a < q2; ++a)
      for (std::uint32_t b = 1; b < q; ++b) with_m_and_s({{"a", E(a)}, {"b", E(b)}}, n);
    return out;
  }
  if (tag == "thm3.14") {
    for (std::uint32_t a = 1; a < q; ++a)
      for (std::uint32_t b = 1; b < q; ++b) with_m_and_s({{"a", E(a)}, {"b", E(b)}}, std::int64_t{q} + 1);
    return out;
  }
  if (tag == "thm3.16") {
    const auto deltas = delta_set(f, opts, 16);
    for (auto delta : deltas)
      for (auto beta : ctx.mu().elements())
        for (int n = 1; n <= opts.max_linear_power; ++n) {
          if (std::gcd(static_cast<std::uint64_t>(n), std::uint64_t{q} - 1) != 1) continue;
          if (f.pow(delta, n) == f.one()) continue;
          for (auto s : s_variants(f, 1, n))
            push({{"delta", encode(delta)}, {"beta", encode(beta)}, {"n", std::to_string(n)}, {"s", std::to_string(s)}});
        }
    return out;
  }
  if (tag == "thm3.17") {
    const auto deltas = delta_set(f, opts, 17);
    for (int deg = 2; deg <= opts.max_irreducible_degree; ++deg) {
      const auto svars = s_variants(f, 1, deg);
      for (const auto& fp : monic_irreducibles(f, deg))
        for (auto delta : deltas) {
          if (eval(f, fp, delta).value == 0) continue;
          for (auto beta : ctx.mu().elements())
            for (auto s : svars)
              push({{"f", encode(fp)}, {"delta", encode(delta)}, {"beta", encode(beta)}, {"s", std::to_string(s)}});
        }
    }
    return out;
  }
  // explicit families: s is fixed by the printed form
  if (tag == "cor4.1.1" || tag == "cor4.1.2" || tag == "cor4.1.3" || tag == "cor4.1.5") {
    for (std::uint32_t a = q; a < q2; ++a)
      for (std::uint32_t b = 1; b < q; ++b) with_m({{"a", E(a)}, {"b", E(b)}});
    return out;
  }
  if (tag == "cor4.1.4") {
    for (std::uint32_t a = 1; a < q; ++a)
      for (std::uint32_t b = 1; b < q; ++b) with_m({{"a", E(a)}, {"b", E(b)}});
    return out;
  }
  if (tag == "cor4.1.6") {
    for (std::uint32_t a = q; a < q2; ++a)
      for (std::uint32_t b = 0; b < q; ++b) with_m({{"a", E(a)}, {"b", E(b)}});
    return out;
  }
  if (tag == "cor4.2") {
    for (std::uint32_t a = q; a < q2; ++a)
      for (std::uint32_t b = 1; b < q; ++b) push({{"a", E(a)}, {"b", E(b)}});
    return out;
  }
  if (tag == "cor4.3.1") {
    for (std::uint32_t ap = 0; ap < q2; ++ap) {
      if (f.add(Element{ap}, f.one()).value == 0) continue;
      for (std::uint32_t a = q; a < q2; ++a) push({{"aprime", E(ap)}, {"a", E(a)}});
    }
    return out;
  }
  if (tag == "cor4.3.2" || tag == "cor4.3.3") {
    const std::vector<std::string> hyps =
        tag == "cor4.3.3" ? std::vector<std::string>{"theorem", "printed"} : std::vector<std::string>{""};
    for (std::uint32_t ap = 0; ap < q2; ++ap) {
      if (f.add(Element{ap}, f.one()).value == 0) continue;
      for (std::uint32_t a = q; a < q2; ++a)
        for (std::uint32_t b = 1; b < q; ++b)
          for (const auto& h : hyps) {
            ParamMap p{{"aprime", E(ap)}, {"a", E(a)}, {"b", E(b)}};
            if (!h.empty()) p["hyp"] = h;
            push(std::move(p));
          }
    }
    return out;
  }
  if (tag == "cor4.4") {
    for (std::uint32_t a = q; a < q2; ++a) {
      for (std::uint32_t b = 1; b < q; ++b) push({{"a", E(a)}, {"b", E(b)}, {"breading", "Fq"}});
      for (auto b : ctx.mu().elements()) push({{"a", E(a)}, {"b", encode(b)}, {"breading", "mu"}});
    }
    return out;
  }
  throw std::invalid_argument("unknown family '" + tag + "'");
}

}  // namespace scrpp
