#pragma once

// Exact arithmetic in the tower F_p ⊂ F_q ⊂ F_{q^2}.
//
// F_q = F_p[u]/(modulus_q) and F_{q^2} = F_q[y]/(modulus_q2). Every element is
// addressed by a single integer index: for F_q the base-p digit value of its
// coordinate vector (u^0 digit least significant), for F_{q^2} the value
// c0 + q*c1 of the pair c0 + c1*y. F_q therefore embeds as the indices below q,
// which are exactly the Frobenius-fixed elements.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scrpp {

/// Largest q^2 accepted by Field::build unless a caller passes its own bound.
inline constexpr std::uint64_t kDefaultFieldBound = std::uint64_t{1} << 26;

enum class Level { base, extension };

struct Element {
  std::uint32_t value = 0;

  constexpr Element() = default;
  constexpr explicit Element(std::uint32_t v) : value(v) {}

  friend constexpr auto operator<=>(Element, Element) = default;
};

enum class ArithOp { add, sub, mul, div };

struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::vector<std::uint32_t> modulus_q;   // over F_p, low degree first, monic, length n+1
  std::vector<std::uint32_t> modulus_q2;  // over F_q (indices), low degree first, monic, length 3
  std::uint64_t q = 0;

  /// `p,n,m0:m1:...:mn,c0:c1:1`
  std::string serialize() const;
  static FieldSpec parse(std::string_view text);

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t v);
std::vector<std::uint64_t> prime_factors(std::uint64_t v);
/// Returns (p, n) with q = p^n, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

class Field {
 public:
  /// Builds the tower with the lexicographically smallest monic irreducible
  /// moduli (coefficients read as base-p / base-q digits, constant term least
  /// significant).
  static Field build(std::uint32_t p, std::uint32_t n, std::uint64_t bound = kDefaultFieldBound);
  /// Builds the tower from explicit moduli; both are checked for irreducibility.
  static Field from_spec(const FieldSpec& spec, std::uint64_t bound = kDefaultFieldBound);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t p() const { return spec_.p; }
  std::uint32_t n() const { return spec_.n; }
  std::uint32_t q() const { return q_; }
  std::uint32_t q2() const { return q2_; }
  bool char2() const { return spec_.p == 2; }

  Element zero() const { return Element{0}; }
  Element one() const { return Element{1}; }
  /// The adjoined root y of modulus_q2 (index q).
  Element y() const { return Element{q_}; }
  /// Element with the given index; throws std::out_of_range past q^2.
  Element element(std::uint64_t index) const;
  /// F_q element from its coordinates over F_p (low degree first).
  Element from_base_coords(const std::vector<std::uint32_t>& coords) const;
  /// F_{q^2} element c0 + c1*y for c0, c1 in F_q.
  Element from_pair(Element c0, Element c1) const;
  /// Image of the integer k under Z -> F_p ⊂ F_q.
  Element from_int(std::int64_t k) const;

  bool in_base(Element x) const { return x.value < q_; }
  std::size_t size(Level level) const { return level == Level::base ? q_ : q2_; }

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  /// Throws std::domain_error on zero.
  Element inv(Element a) const;
  Element div(Element a, Element b) const;
  Element arith(Element a, Element b, ArithOp op) const;
  /// Square-and-multiply; negative exponents invert first. 0^0 = 1.
  Element pow(Element a, std::int64_t e) const;
  Element square(Element a) const { return mul(a, a); }

  /// x -> x^q, computed on coordinates.
  Element frobenius(Element x) const;
  /// x^{q+1}, always an element of F_q.
  Element norm(Element x) const;
  /// Sum of the p-power conjugates of x over F_p. For Level::base, x must lie in F_q.
  Element absolute_trace(Element x, Level level = Level::base) const;

  /// Euler's criterion in F_q; throws in characteristic 2 or when x is not in F_q.
  bool is_square(Element x) const;
  /// Some square root in F_q (any characteristic) or nullopt.
  std::optional<Element> sqrt_base(Element x) const;
  /// x^{(|F|-1)/gcd(3,|F|-1)} == 1 in the named field; x must be nonzero and lie in it.
  bool is_cube_in(Element x, Level level) const;
  /// Both solutions {x, x+1} of x^2 + x = v in the named field, or nullopt when
  /// the absolute trace of v is nonzero. Characteristic 2 only.
  std::optional<std::pair<Element, Element>> solve_artin_schreier(Element v, Level level = Level::base) const;

  /// Least e >= 1 with x^e = 1.
  std::uint64_t multiplicative_order(Element x) const;
  /// Smallest (by index) generator of F_{q^2}^*.
  Element primitive_root() const { return primitive_; }

  /// Every element of the level, in index order.
  std::vector<Element> enumerate(Level level) const;

  /// Human-readable form, e.g. `y+2`, `(u+1)y+u`.
  std::string format(Element x) const;

 private:
  Field() = default;
  void init(const FieldSpec& spec, std::uint64_t bound);
  void init_base_tables();
  void init_artin_schreier();

  std::uint32_t badd(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t bneg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t bmul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  std::uint32_t binv(std::uint32_t a) const;
  std::string format_base(std::uint32_t a) const;

  // Echelon basis of x -> x^2 + x over F_2, indexed by pivot bit.
  struct AsBasis {
    std::vector<std::uint32_t> image;
    std::vector<std::uint32_t> preimage;
    std::vector<bool> present;
  };
  std::optional<std::uint32_t> as_solve(const AsBasis& basis, std::uint32_t v) const;

  FieldSpec spec_;
  std::uint32_t q_ = 0;
  std::uint32_t q2_ = 0;
  std::uint32_t mc0_ = 0;  // modulus_q2 = y^2 + mc1*y + mc0
  std::uint32_t mc1_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> add_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> digit_pow_;
  std::vector<std::uint64_t> ext_order_primes_;
  Element primitive_;
  AsBasis as_base_;
  AsBasis as_ext_;
};

}  // namespace scrpp
