#include "scrpp/pp_engine.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace scrpp {

namespace {
constexpr std::uint64_t kOracleBoundDefault = 16384;

std::uint64_t mod_nonneg(std::int64_t v, std::uint64_t m) {
  const auto sm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((v % sm) + sm) % sm);
}
}  // namespace

SparsePoly::SparsePoly(const Field& field, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  for (const auto& t : terms) {
    if (!terms_.empty() && terms_.back().exponent == t.exponent)
      terms_.back().coeff = field.add(terms_.back().coeff, t.coeff);
    else
      terms_.push_back(t);
  }
  std::erase_if(terms_, [](const Term& t) { return t.coeff.value == 0; });
}

SparsePoly SparsePoly::from_dense(const Field& field, const Poly& f) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i)
    if (f.coeffs()[i].value != 0) terms.push_back({i, f.coeffs()[i]});
  return SparsePoly(field, std::move(terms));
}

SparsePoly reduce_exponents(const Field& field, const SparsePoly& f) {
  const std::uint64_t period = std::uint64_t{field.q2()} - 1;
  std::vector<Term> terms = f.terms();
  for (auto& t : terms)
    if (t.exponent >= 1) t.exponent = (t.exponent - 1) % period + 1;
  return SparsePoly(field, std::move(terms));
}

Element eval(const Field& field, const SparsePoly& f, Element x) {
  Element acc = field.zero();
  for (const auto& t : f.terms())
    acc = field.add(acc, field.mul(t.coeff, field.pow(x, static_cast<std::int64_t>(t.exponent))));
  return acc;
}

std::string to_string(const Field& field, const SparsePoly& f) {
  if (f.size() == 0) return "0";
  std::string out;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    if (!out.empty()) out += " + ";
    std::string c = field.format(it->coeff);
    if (!std::all_of(c.begin(), c.end(), [](unsigned char ch) { return std::isdigit(ch); })) c = "(" + c + ")";
    out += c;
    if (it->exponent == 1)
      out += "*x";
    else if (it->exponent > 1)
      out += "*x^" + std::to_string(it->exponent);
  }
  return out;
}

BChoice validate_B(const MuGroup& mu, const Poly& b, std::int64_t r) {
  if (b.is_zero()) throw std::invalid_argument("validate_B: B must be nonzero");
  return BChoice{b, r, g0_permutes_mu(mu, b, r)};
}

std::vector<SCandidate> compute_s(const Field& field, std::int64_t r, std::int64_t n) {
  const std::uint64_t qp1 = std::uint64_t{field.q()} + 1;
  const std::uint64_t qm1 = std::uint64_t{field.q()} - 1;
  const std::uint64_t period = std::lcm(qp1, qm1);
  const std::uint64_t residue = mod_nonneg(r + n, qp1);
  std::vector<SCandidate> out;
  for (std::uint64_t s = residue == 0 ? qp1 : residue; s <= period; s += qp1) out.push_back({s, std::gcd(s, qm1)});
  return out;
}

std::optional<std::uint64_t> smallest_coprime_s(const Field& field, std::int64_t r, std::int64_t n) {
  for (const auto& c : compute_s(field, r, n))
    if (c.gcd == 1) return c.s;
  return std::nullopt;
}

SparsePoly expand_pp(const Field& field, const Poly& b, const Poly& c, std::uint64_t s) {
  const Poly bc = mul(field, b, c);
  const std::uint64_t qm1 = std::uint64_t{field.q()} - 1;
  std::vector<Term> terms;
  for (std::size_t k = 0; k < bc.coeffs().size(); ++k)
    if (bc.coeffs()[k].value != 0) terms.push_back({s + qm1 * k, bc.coeffs()[k]});
  return reduce_exponents(field, SparsePoly(field, std::move(terms)));
}

SparsePoly build_pp(const Field& field, const BChoice& b, const Poly& c, std::uint64_t s) {
  if (!b.validated) throw std::invalid_argument("build_pp: B is not validated");
  if (c.is_zero() || !scr_check(field, c)) throw std::invalid_argument("build_pp: C is not SCR");
  return expand_pp(field, b.b, c, s);
}

std::uint64_t oracle_bound() {
  if (const char* env = std::getenv("SCRP_ORACLE_BOUND")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kOracleBoundDefault;
}

PermutationOracle::PermutationOracle(const Field& field, std::uint64_t bound) : field_(&field) {
  if (field.q2() > bound)
    throw std::out_of_range("oracle: q^2 = " + std::to_string(field.q2()) + " exceeds the bound " +
                            std::to_string(bound));
  const std::uint64_t n = std::uint64_t{field.q2()} - 1;
  powers_.reserve(n);
  Element cur = field.one();
  for (std::uint64_t k = 0; k < n; ++k) {
    powers_.push_back(cur);
    cur = field.mul(cur, field.primitive_root());
  }
}

std::vector<Element> PermutationOracle::values(const SparsePoly& f) const {
  const std::uint64_t n = powers_.size();
  std::vector<Element> out;
  out.reserve(n + 1);
  Element at_zero = field_->zero();
  std::vector<std::uint64_t> step;
  std::vector<Element> coeff;
  for (const auto& t : f.terms()) {
    if (t.exponent == 0) {
      at_zero = field_->add(at_zero, t.coeff);
    }
    step.push_back(t.exponent % n);
    coeff.push_back(t.coeff);
  }
  out.push_back(at_zero);
  std::vector<std::uint64_t> pos(step.size(), 0);
  for (std::uint64_t k = 0; k < n; ++k) {
    Element acc = field_->zero();
    for (std::size_t j = 0; j < step.size(); ++j) {
      acc = field_->add(acc, field_->mul(coeff[j], powers_[pos[j]]));
      pos[j] += step[j];
      if (pos[j] >= n) pos[j] -= n;
    }
    out.push_back(acc);
  }
  return out;
}

bool PermutationOracle::is_permutation(const SparsePoly& f) const {
  std::vector<char> seen(field_->q2(), 0);
  for (auto v : values(f)) {
    if (seen[v.value]) return false;
    seen[v.value] = 1;
  }
  return true;
}

bool PermutationOracle::same_function(const SparsePoly& f, const SparsePoly& g) const {
  return values(f) == values(g);
}

bool is_permutation_bruteforce(const Field& field, const SparsePoly& f, std::uint64_t bound) {
  return PermutationOracle(field, bound).is_permutation(f);
}

}  // namespace scrpp
