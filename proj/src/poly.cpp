#include "scrpp/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace scrpp {

Poly::Poly(std::vector<Element> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().value == 0) coeffs_.pop_back();
}

Poly Poly::monomial(Element c, std::size_t k) {
  std::vector<Element> v(k + 1);
  v[k] = c;
  return Poly(std::move(v));
}

Poly Poly::from_indices(const Field& field, const std::vector<std::uint64_t>& indices) {
  std::vector<Element> v;
  v.reserve(indices.size());
  for (auto i : indices) v.push_back(field.element(i));
  return Poly(std::move(v));
}

std::vector<std::uint32_t> Poly::indices() const {
  std::vector<std::uint32_t> out;
  out.reserve(coeffs_.size());
  for (auto c : coeffs_) out.push_back(c.value);
  return out;
}

Element eval(const Field& field, const Poly& f, Element x) {
  Element acc = field.zero();
  const auto& c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = field.add(field.mul(acc, x), c[i]);
  return acc;
}

Poly add(const Field& field, const Poly& f, const Poly& g) {
  std::vector<Element> out(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field.add(f.coeff(i), g.coeff(i));
  return Poly(std::move(out));
}

Poly sub(const Field& field, const Poly& f, const Poly& g) {
  std::vector<Element> out(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field.sub(f.coeff(i), g.coeff(i));
  return Poly(std::move(out));
}

Poly mul(const Field& field, const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return Poly();
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  std::vector<Element> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].value == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = field.add(out[i + j], field.mul(a[i], b[j]));
  }
  return Poly(std::move(out));
}

Poly poly_ops(const Field& field, const Poly& f, const Poly& g, PolyOp op) {
  return op == PolyOp::add ? add(field, f, g) : mul(field, f, g);
}

Poly scale(const Field& field, const Poly& f, Element c) {
  std::vector<Element> out = f.coeffs();
  for (auto& e : out) e = field.mul(e, c);
  return Poly(std::move(out));
}

Poly pow(const Field& field, const Poly& f, unsigned k) {
  Poly result = Poly::constant(field.one());
  Poly base = f;
  while (k != 0) {
    if (k & 1u) result = mul(field, result, base);
    k >>= 1;
    if (k != 0) base = mul(field, base, base);
  }
  return result;
}

Poly from_roots(const Field& field, const std::vector<Element>& roots) {
  Poly out = Poly::constant(field.one());
  for (auto r : roots) out = mul(field, out, Poly({field.neg(r), field.one()}));
  return out;
}

Poly conjugate_lift(const Field& field, const Poly& f) {
  std::vector<Element> out = f.coeffs();
  for (auto& c : out) c = field.frobenius(c);
  return Poly(std::move(out));
}

Poly conj_reverse(const Field& field, const Poly& f, int n) {
  if (n < f.degree()) throw std::invalid_argument("conj_reverse: n is below the degree");
  std::vector<Element> out(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= f.degree(); ++i) out[static_cast<std::size_t>(n - i)] = field.frobenius(f.coeff(i));
  return Poly(std::move(out));
}

std::optional<ScrCertificate> scr_check(const Field& field, const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("scr_check: zero polynomial");
  const int n = f.degree();
  // c_{n-i} = (beta c_i)^q, taken at the first nonzero c_i
  int i = 0;
  while (f.coeff(static_cast<std::size_t>(i)).value == 0) ++i;
  const Element ci = f.coeff(static_cast<std::size_t>(i));
  const Element cni = f.coeff(static_cast<std::size_t>(n - i));
  if (cni.value == 0) return std::nullopt;
  const Element beta_q = field.div(cni, field.frobenius(ci));
  const Element beta = field.frobenius(beta_q);
  for (int k = 0; k <= n; ++k) {
    const Element lhs = f.coeff(static_cast<std::size_t>(n - k));
    const Element rhs = field.frobenius(field.mul(beta, f.coeff(static_cast<std::size_t>(k))));
    if (lhs != rhs) return std::nullopt;
  }
  if (field.norm(beta) != field.one()) throw std::logic_error("scr_check: unit outside mu_{q+1}");
  return ScrCertificate{n, beta};
}

bool over_base(const Field& field, const Poly& f) {
  return std::all_of(f.coeffs().begin(), f.coeffs().end(), [&](Element c) { return field.in_base(c); });
}

Poly make_monic(const Field& field, const Poly& f) {
  if (f.is_zero()) return f;
  return scale(field, f, field.inv(f.leading()));
}

std::pair<Poly, Poly> divmod(const Field& field, const Poly& f, const Poly& g) {
  if (g.is_zero()) throw std::domain_error("divmod: division by the zero polynomial");
  std::vector<Element> rem = f.coeffs();
  const int dg = g.degree();
  if (f.degree() < dg) return {Poly(), f};
  std::vector<Element> quot(static_cast<std::size_t>(f.degree() - dg) + 1);
  const Element lead_inv = field.inv(g.leading());
  for (int k = f.degree(); k >= dg; --k) {
    const Element c = field.mul(rem[static_cast<std::size_t>(k)], lead_inv);
    quot[static_cast<std::size_t>(k - dg)] = c;
    if (c.value == 0) continue;
    for (int t = 0; t <= dg; ++t) {
      auto& slot = rem[static_cast<std::size_t>(k - dg + t)];
      slot = field.sub(slot, field.mul(c, g.coeff(static_cast<std::size_t>(t))));
    }
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly gcd(const Field& field, Poly f, Poly g) {
  while (!g.is_zero()) {
    Poly r = divmod(field, f, g).second;
    f = std::move(g);
    g = std::move(r);
  }
  return make_monic(field, f);
}

Poly powmod(const Field& field, const Poly& base, std::uint64_t e, const Poly& modulus) {
  Poly result = divmod(field, Poly::constant(field.one()), modulus).second;
  Poly b = divmod(field, base, modulus).second;
  while (e != 0) {
    if (e & 1u) result = divmod(field, mul(field, result, b), modulus).second;
    e >>= 1;
    if (e != 0) b = divmod(field, mul(field, b, b), modulus).second;
  }
  return result;
}

bool is_irreducible_over_base(const Field& field, const Poly& f) {
  if (f.degree() < 1) throw std::invalid_argument("irreducibility: degree must be positive");
  if (!over_base(field, f)) throw std::invalid_argument("irreducibility: coefficients must lie in F_q");
  const Poly x = Poly::monomial(field.one(), 1);
  Poly xq = divmod(field, x, f).second;
  for (int i = 1; 2 * i <= f.degree(); ++i) {
    xq = powmod(field, xq, field.q(), f);
    if (gcd(field, f, sub(field, xq, x)).degree() != 0) return false;
  }
  return true;
}

std::string to_string(const Field& field, const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int k = f.degree(); k >= 0; --k) {
    const Element c = f.coeff(static_cast<std::size_t>(k));
    if (c.value == 0) continue;
    if (!out.empty()) out += " + ";
    std::string coeff = field.format(c);
    const bool plain = std::all_of(coeff.begin(), coeff.end(), [](unsigned char ch) { return std::isdigit(ch); });
    if (!plain) coeff = "(" + coeff + ")";
    out += coeff;
    if (k == 1)
      out += "*x";
    else if (k > 1)
      out += "*x^" + std::to_string(k);
  }
  return out;
}

}  // namespace scrpp
