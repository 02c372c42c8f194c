#include "scrpp/field.hpp"

#include <sstream>
#include <stdexcept>

namespace scrpp {

namespace {

using Digits = std::vector<std::uint32_t>;

Digits to_digits(std::uint64_t v, std::uint32_t p, std::uint32_t len) {
  Digits d(len);
  for (std::uint32_t i = 0; i < len; ++i) {
    d[i] = static_cast<std::uint32_t>(v % p);
    v /= p;
  }
  return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return static_cast<std::uint32_t>(v);
}

// Product of two residues modulo a monic modulus over F_p (schoolbook).
Digits mulmod_fp(const Digits& a, const Digits& b, const Digits& modulus, std::uint32_t p) {
  const std::size_t n = modulus.size() - 1;
  std::vector<std::uint64_t> r(2 * n + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  for (std::size_t k = r.size(); k-- > n;) {
    const std::uint64_t c = r[k];
    if (c == 0) continue;
    for (std::size_t t = 0; t <= n; ++t) r[k - n + t] = (r[k - n + t] + (p - c) * modulus[t]) % p;
  }
  Digits out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint32_t>(r[i]);
  return out;
}

// True when the monic polynomial g divides the monic polynomial f over F_p.
bool divides_fp(const Digits& g, Digits f, std::uint32_t p) {
  const std::size_t d = g.size() - 1;
  for (std::size_t k = f.size(); k-- > d;) {
    const std::uint64_t c = f[k];
    if (c == 0) continue;
    for (std::size_t t = 0; t <= d; ++t) f[k - d + t] = static_cast<std::uint32_t>((f[k - d + t] + (p - c) * g[t]) % p);
  }
  for (std::size_t i = 0; i < d; ++i)
    if (f[i] != 0) return false;
  return true;
}

bool irreducible_fp(const Digits& f, std::uint32_t p) {
  const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; 2 * d <= n; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
      Digits g = to_digits(v, p, d);
      g.push_back(1);
      if (divides_fp(g, f, p)) return false;
    }
  }
  return true;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::vector<std::uint32_t> parse_list(std::string_view text) {
  std::vector<std::uint32_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(':', start), text.size());
    const std::string item(text.substr(start, end - start));
    if (item.empty()) throw std::invalid_argument("field spec: empty coefficient");
    out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    start = end + 1;
  }
  return out;
}

}  // namespace

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d != 0) continue;
    out.push_back(d);
    while (v % d == 0) v /= d;
  }
  if (v > 1) out.push_back(v);
  return out;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  const auto factors = prime_factors(q);
  if (factors.size() != 1) return std::nullopt;
  std::uint32_t n = 0;
  while (q > 1) {
    q /= factors[0];
    ++n;
  }
  return std::pair{static_cast<std::uint32_t>(factors[0]), n};
}

std::string FieldSpec::serialize() const {
  std::ostringstream os;
  os << p << ',' << n << ',';
  for (std::size_t i = 0; i < modulus_q.size(); ++i) os << (i ? ":" : "") << modulus_q[i];
  os << ',';
  for (std::size_t i = 0; i < modulus_q2.size(); ++i) os << (i ? ":" : "") << modulus_q2[i];
  return os.str();
}

FieldSpec FieldSpec::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(',', start);
    parts.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (parts.size() != 4) throw std::invalid_argument("field spec: expected p,n,modulus_q,modulus_q2");
  FieldSpec spec;
  spec.p = static_cast<std::uint32_t>(std::stoul(std::string(parts[0])));
  spec.n = static_cast<std::uint32_t>(std::stoul(std::string(parts[1])));
  spec.modulus_q = parse_list(parts[2]);
  spec.modulus_q2 = parse_list(parts[3]);
  spec.q = 1;
  for (std::uint32_t i = 0; i < spec.n; ++i) spec.q *= spec.p;
  return spec;
}

Field Field::build(std::uint32_t p, std::uint32_t n, std::uint64_t bound) {
  FieldSpec spec;
  spec.p = p;
  spec.n = n;
  Field f;
  f.init(spec, bound);
  return f;
}

Field Field::from_spec(const FieldSpec& spec, std::uint64_t bound) {
  if (spec.modulus_q.empty() || spec.modulus_q2.empty())
    throw std::invalid_argument("field spec: both moduli are required");
  Field f;
  f.init(spec, bound);
  return f;
}

void Field::init(const FieldSpec& requested, std::uint64_t bound) {
  const std::uint32_t p = requested.p;
  const std::uint32_t n = requested.n;
  if (!is_prime(p)) throw std::invalid_argument("field: " + std::to_string(p) + " is not prime");
  if (n == 0) throw std::invalid_argument("field: extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q * q > bound) throw std::invalid_argument("field: q^2 exceeds the configured bound " + std::to_string(bound));
  }
  spec_.p = p;
  spec_.n = n;
  spec_.q = q;
  q_ = static_cast<std::uint32_t>(q);
  q2_ = static_cast<std::uint32_t>(q * q);
  digit_pow_.assign(n, 1);
  for (std::uint32_t i = 1; i < n; ++i) digit_pow_[i] = digit_pow_[i - 1] * p;

  if (requested.modulus_q.empty()) {
    for (std::uint64_t v = 0; v < q; ++v) {
      Digits cand = to_digits(v, p, n);
      cand.push_back(1);
      if (irreducible_fp(cand, p)) {
        spec_.modulus_q = std::move(cand);
        break;
      }
    }
  } else {
    const auto& m = requested.modulus_q;
    if (m.size() != n + 1 || m.back() != 1) throw std::invalid_argument("field: modulus_q must be monic of degree n");
    for (auto c : m)
      if (c >= p) throw std::invalid_argument("field: modulus_q coefficient out of range");
    if (!irreducible_fp(m, p)) throw std::invalid_argument("field: modulus_q is reducible over F_p");
    spec_.modulus_q = m;
  }
  init_base_tables();

  auto quadratic_irreducible = [this](std::uint32_t c0, std::uint32_t c1) {
    for (std::uint32_t x = 0; x < q_; ++x)
      if (badd(badd(bmul(x, x), bmul(c1, x)), c0) == 0) return false;
    return true;
  };
  if (requested.modulus_q2.empty()) {
    for (std::uint64_t v = 0; v < q * q; ++v) {
      const auto c0 = static_cast<std::uint32_t>(v % q);
      const auto c1 = static_cast<std::uint32_t>(v / q);
      if (quadratic_irreducible(c0, c1)) {
        spec_.modulus_q2 = {c0, c1, 1};
        break;
      }
    }
  } else {
    const auto& m = requested.modulus_q2;
    if (m.size() != 3 || m[2] != 1) throw std::invalid_argument("field: modulus_q2 must be a monic quadratic");
    if (m[0] >= q || m[1] >= q) throw std::invalid_argument("field: modulus_q2 coefficient out of range");
    if (!quadratic_irreducible(m[0], m[1])) throw std::invalid_argument("field: modulus_q2 is reducible over F_q");
    spec_.modulus_q2 = m;
  }
  mc0_ = spec_.modulus_q2[0];
  mc1_ = spec_.modulus_q2[1];

  ext_order_primes_ = prime_factors(std::uint64_t{q2_} - 1);
  for (std::uint32_t g = 1; g < q2_; ++g) {
    bool generator = true;
    for (auto l : ext_order_primes_) {
      if (pow(Element{g}, static_cast<std::int64_t>((std::uint64_t{q2_} - 1) / l)) == one()) {
        generator = false;
        break;
      }
    }
    if (generator) {
      primitive_ = Element{g};
      break;
    }
  }
  if (char2()) init_artin_schreier();
}

void Field::init_base_tables() {
  const std::uint32_t p = spec_.p;
  const std::uint32_t n = spec_.n;
  neg_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    Digits d = to_digits(a, p, n);
    for (auto& c : d) c = (p - c) % p;
    neg_[a] = from_digits(d, p);
  }
  if (p != 2 && q_ <= 1024) {
    add_.resize(std::size_t{q_} * q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      const Digits da = to_digits(a, p, n);
      for (std::uint32_t b = 0; b < q_; ++b) {
        Digits db = to_digits(b, p, n);
        for (std::uint32_t i = 0; i < n; ++i) db[i] = (da[i] + db[i]) % p;
        add_[std::size_t{a} * q_ + b] = from_digits(db, p);
      }
    }
  }

  const std::uint32_t order = q_ - 1;
  log_.assign(q_, 0);
  exp_.assign(2 * std::size_t{order}, 0);
  for (std::uint32_t g = 1; g < q_; ++g) {
    const Digits dg = to_digits(g, p, n);
    Digits cur = to_digits(1, p, n);
    std::uint32_t k = 0;
    bool ok = true;
    do {
      if (k >= order) {
        ok = false;
        break;
      }
      exp_[k] = from_digits(cur, p);
      cur = mulmod_fp(cur, dg, spec_.modulus_q, p);
      ++k;
    } while (from_digits(cur, p) != 1);
    if (ok && k == order) break;
  }
  for (std::uint32_t k = 0; k < order; ++k) {
    log_[exp_[k]] = k;
    exp_[k + order] = exp_[k];
  }
}

void Field::init_artin_schreier() {
  auto fill = [this](AsBasis& basis, std::uint32_t bits) {
    basis.image.assign(bits, 0);
    basis.preimage.assign(bits, 0);
    basis.present.assign(bits, false);
    for (std::uint32_t i = 0; i < bits; ++i) {
      const std::uint32_t x = std::uint32_t{1} << i;
      std::uint32_t img = mul(Element{x}, Element{x}).value ^ x;
      std::uint32_t pre = x;
      for (std::uint32_t bit = bits; bit-- > 0 && img != 0;) {
        if (((img >> bit) & 1u) == 0) continue;
        if (!basis.present[bit]) {
          basis.present[bit] = true;
          basis.image[bit] = img;
          basis.preimage[bit] = pre;
          img = 0;
          break;
        }
        img ^= basis.image[bit];
        pre ^= basis.preimage[bit];
      }
    }
  };
  fill(as_base_, spec_.n);
  fill(as_ext_, 2 * spec_.n);
}

std::optional<std::uint32_t> Field::as_solve(const AsBasis& basis, std::uint32_t v) const {
  std::uint32_t x = 0;
  for (std::size_t bit = basis.image.size(); bit-- > 0;) {
    if (((v >> bit) & 1u) == 0) continue;
    if (!basis.present[bit]) return std::nullopt;
    v ^= basis.image[bit];
    x ^= basis.preimage[bit];
  }
  return x;
}

std::uint32_t Field::badd(std::uint32_t a, std::uint32_t b) const {
  if (spec_.p == 2) return a ^ b;
  if (!add_.empty()) return add_[std::size_t{a} * q_ + b];
  const std::uint32_t p = spec_.p;
  std::uint32_t out = 0;
  for (std::uint32_t i = spec_.n; i-- > 0;) {
    const std::uint32_t da = (a / digit_pow_[i]) % p;
    const std::uint32_t db = (b / digit_pow_[i]) % p;
    out = out * p + (da + db) % p;
  }
  return out;
}

std::uint32_t Field::binv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("field: division by zero");
  const std::uint32_t order = q_ - 1;
  return exp_[(order - log_[a]) % order];
}

Element Field::element(std::uint64_t index) const {
  if (index >= q2_) throw std::out_of_range("field: element index " + std::to_string(index) + " out of range");
  return Element{static_cast<std::uint32_t>(index)};
}

Element Field::from_base_coords(const std::vector<std::uint32_t>& coords) const {
  if (coords.size() > spec_.n) throw std::invalid_argument("field: too many coordinates");
  Digits d(spec_.n, 0);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= spec_.p) throw std::invalid_argument("field: coordinate out of range");
    d[i] = coords[i];
  }
  return Element{from_digits(d, spec_.p)};
}

Element Field::from_pair(Element c0, Element c1) const {
  if (!in_base(c0) || !in_base(c1)) throw std::invalid_argument("field: pair coordinates must lie in F_q");
  return Element{c0.value + q_ * c1.value};
}

Element Field::from_int(std::int64_t k) const {
  const auto p = static_cast<std::int64_t>(spec_.p);
  return Element{static_cast<std::uint32_t>(((k % p) + p) % p)};
}

Element Field::add(Element a, Element b) const {
  if (spec_.p == 2) return Element{a.value ^ b.value};
  const std::uint32_t lo = badd(a.value % q_, b.value % q_);
  const std::uint32_t hi = badd(a.value / q_, b.value / q_);
  return Element{lo + q_ * hi};
}

Element Field::neg(Element a) const {
  if (spec_.p == 2) return a;
  return Element{bneg(a.value % q_) + q_ * bneg(a.value / q_)};
}

Element Field::sub(Element a, Element b) const { return add(a, neg(b)); }

Element Field::mul(Element a, Element b) const {
  const std::uint32_t a0 = a.value % q_, a1 = a.value / q_;
  const std::uint32_t b0 = b.value % q_, b1 = b.value / q_;
  if (a1 == 0 && b1 == 0) return Element{bmul(a0, b0)};
  // y^2 = -mc1*y - mc0
  const std::uint32_t t = bmul(a1, b1);
  const std::uint32_t r0 = badd(bmul(a0, b0), bneg(bmul(t, mc0_)));
  const std::uint32_t r1 = badd(badd(bmul(a0, b1), bmul(a1, b0)), bneg(bmul(t, mc1_)));
  return Element{r0 + q_ * r1};
}

Element Field::frobenius(Element x) const {
  const std::uint32_t a0 = x.value % q_, a1 = x.value / q_;
  if (a1 == 0) return x;
  // y^q = -mc1 - y
  return Element{badd(a0, bneg(bmul(a1, mc1_))) + q_ * bneg(a1)};
}

Element Field::norm(Element x) const {
  const Element n = mul(x, frobenius(x));
  if (!in_base(n)) throw std::logic_error("field: norm left F_q");
  return n;
}

Element Field::inv(Element a) const {
  if (a.value == 0) throw std::domain_error("field: division by zero");
  if (in_base(a)) return Element{binv(a.value)};
  const std::uint32_t ninv = binv(norm(a).value);
  const Element c = frobenius(a);
  return Element{bmul(c.value % q_, ninv) + q_ * bmul(c.value / q_, ninv)};
}

Element Field::div(Element a, Element b) const { return mul(a, inv(b)); }

Element Field::arith(Element a, Element b, ArithOp op) const {
  switch (op) {
    case ArithOp::add: return add(a, b);
    case ArithOp::sub: return sub(a, b);
    case ArithOp::mul: return mul(a, b);
    case ArithOp::div: return div(a, b);
  }
  throw std::invalid_argument("field: unknown operation");
}

Element Field::pow(Element a, std::int64_t e) const {
  if (a.value == 0) {
    if (e < 0) throw std::domain_error("field: zero to a negative power");
    return e == 0 ? one() : zero();
  }
  const auto order = static_cast<std::int64_t>(q2_) - 1;
  std::uint64_t k = static_cast<std::uint64_t>(((e % order) + order) % order);
  Element result = one();
  Element base = a;
  while (k != 0) {
    if (k & 1u) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

Element Field::absolute_trace(Element x, Level level) const {
  if (level == Level::base && !in_base(x)) throw std::invalid_argument("trace: element is not in F_q");
  const std::uint32_t terms = level == Level::base ? spec_.n : 2 * spec_.n;
  Element sum = zero();
  Element t = x;
  for (std::uint32_t i = 0; i < terms; ++i) {
    sum = add(sum, t);
    t = pow(t, spec_.p);
  }
  return sum;
}

bool Field::is_square(Element x) const {
  if (char2()) throw std::domain_error("is_square: every element is a square in characteristic 2");
  if (!in_base(x)) throw std::invalid_argument("is_square: element is not in F_q");
  if (x.value == 0) return true;
  return pow(x, (static_cast<std::int64_t>(q_) - 1) / 2) == one();
}

std::optional<Element> Field::sqrt_base(Element x) const {
  if (!in_base(x)) throw std::invalid_argument("sqrt: element is not in F_q");
  if (x.value == 0) return zero();
  const std::uint64_t order = q_ - 1;
  const std::uint64_t k = log_[x.value];
  if (char2()) return Element{exp_[(k * (q_ / 2)) % order]};
  if (k % 2 != 0) return std::nullopt;
  return Element{exp_[k / 2]};
}

bool Field::is_cube_in(Element x, Level level) const {
  if (x.value == 0) throw std::domain_error("is_cube_in: zero");
  if (level == Level::base && !in_base(x)) throw std::invalid_argument("is_cube_in: element is not in F_q");
  const std::uint64_t order = size(level) - 1;
  return pow(x, static_cast<std::int64_t>(order / gcd_u64(3, order))) == one();
}

std::optional<std::pair<Element, Element>> Field::solve_artin_schreier(Element v, Level level) const {
  if (!char2()) throw std::domain_error("artin-schreier: characteristic must be 2");
  if (level == Level::base && !in_base(v)) throw std::invalid_argument("artin-schreier: element is not in F_q");
  const auto x = as_solve(level == Level::base ? as_base_ : as_ext_, v.value);
  if (!x) return std::nullopt;
  return std::pair{Element{*x}, Element{*x ^ 1u}};
}

std::uint64_t Field::multiplicative_order(Element x) const {
  if (x.value == 0) throw std::domain_error("multiplicative_order: zero");
  std::uint64_t order = std::uint64_t{q2_} - 1;
  for (auto l : ext_order_primes_) {
    while (order % l == 0 && pow(x, static_cast<std::int64_t>(order / l)) == one()) order /= l;
  }
  return order;
}

std::vector<Element> Field::enumerate(Level level) const {
  std::vector<Element> out(size(level));
  for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = Element{i};
  return out;
}

std::string Field::format_base(std::uint32_t a) const {
  if (spec_.n == 1) return std::to_string(a);
  if (a == 0) return "0";
  const Digits d = to_digits(a, spec_.p, spec_.n);
  std::string out;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) out += std::to_string(d[i]);
    out += i == 1 ? "u" : "u^" + std::to_string(i);
  }
  return out;
}

std::string Field::format(Element x) const {
  const std::uint32_t c0 = x.value % q_, c1 = x.value / q_;
  if (c1 == 0) return format_base(c0);
  std::string out;
  if (c1 == 1)
    out = "y";
  else if (c1 < spec_.p)
    out = std::to_string(c1) + "y";
  else
    out = "(" + format_base(c1) + ")y";
  if (c0 != 0) out += "+" + format_base(c0);
  return out;
}

}  // namespace scrpp
