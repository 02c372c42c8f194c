#pragma once

// Slow, table-free reference arithmetic for the same tower F_p ⊂ F_q ⊂ F_{q^2}.
// Shares only the element encoding with the library: everything else is done
// with schoolbook polynomial arithmetic and repeated multiplication.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "scrpp/field.hpp"

namespace naive {

class Tower {
 public:
  explicit Tower(const scrpp::FieldSpec& spec) : p_(spec.p), n_(spec.n), mq_(spec.modulus_q), mq2_(spec.modulus_q2) {
    q_ = 1;
    for (std::uint32_t i = 0; i < n_; ++i) q_ *= p_;
  }

  std::uint32_t q() const { return q_; }
  std::uint32_t q2() const { return q_ * q_; }

  // ---- F_q on digit vectors ----
  std::vector<std::uint32_t> digits(std::uint32_t a) const {
    std::vector<std::uint32_t> d(n_);
    for (auto& x : d) {
      x = a % p_;
      a /= p_;
    }
    return d;
  }
  std::uint32_t undigits(const std::vector<std::uint32_t>& d) const {
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i];
    return v;
  }
  std::uint32_t badd(std::uint32_t a, std::uint32_t b) const {
    auto x = digits(a), y = digits(b);
    for (std::uint32_t i = 0; i < n_; ++i) x[i] = (x[i] + y[i]) % p_;
    return undigits(x);
  }
  std::uint32_t bneg(std::uint32_t a) const {
    auto x = digits(a);
    for (auto& c : x) c = (p_ - c) % p_;
    return undigits(x);
  }
  std::uint32_t bmul(std::uint32_t a, std::uint32_t b) const {
    auto x = digits(a), y = digits(b);
    std::vector<std::uint64_t> r(2 * n_, 0);
    for (std::uint32_t i = 0; i < n_; ++i)
      for (std::uint32_t j = 0; j < n_; ++j) r[i + j] = (r[i + j] + std::uint64_t{x[i]} * y[j]) % p_;
    for (std::size_t k = r.size(); k-- > n_;) {
      const auto c = r[k];
      r[k] = 0;
      for (std::uint32_t t = 0; t < n_; ++t) r[k - n_ + t] = (r[k - n_ + t] + (p_ - c) * mq_[t]) % p_;
    }
    std::vector<std::uint32_t> out(n_);
    for (std::uint32_t i = 0; i < n_; ++i) out[i] = static_cast<std::uint32_t>(r[i]);
    return undigits(out);
  }

  // ---- F_{q^2} = pairs (c0, c1) with y^2 = -mc1 y - mc0 ----
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    return badd(a % q_, b % q_) + q_ * badd(a / q_, b / q_);
  }
  std::uint32_t neg(std::uint32_t a) const { return bneg(a % q_) + q_ * bneg(a / q_); }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t a0 = a % q_, a1 = a / q_, b0 = b % q_, b1 = b / q_;
    const std::uint32_t lo = bmul(a0, b0);
    const std::uint32_t mid = badd(bmul(a0, b1), bmul(a1, b0));
    const std::uint32_t hi = bmul(a1, b1);
    // hi*y^2 = hi*(-mc1 y - mc0)
    const std::uint32_t c0 = badd(lo, bneg(bmul(hi, mq2_[0])));
    const std::uint32_t c1 = badd(mid, bneg(bmul(hi, mq2_[1])));
    return c0 + q_ * c1;
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  std::uint32_t inv(std::uint32_t a) const {
    for (std::uint32_t x = 1; x < q2(); ++x)
      if (mul(a, x) == 1) return x;
    return 0;
  }
  std::uint32_t frob(std::uint32_t a) const { return pow(a, q_); }

  const std::vector<std::uint32_t>& mu() const {
    if (mu_.empty())
      for (std::uint32_t x = 1; x < q2(); ++x)
        if (pow(x, q_ + 1) == 1) mu_.push_back(x);
    return mu_;
  }
  bool is_square_base(std::uint32_t a) const {
    for (std::uint32_t x = 0; x < q_; ++x)
      if (bmul(x, x) == a) return true;
    return false;
  }

  // Polynomials as coefficient-index vectors, low degree first.
  std::uint32_t eval(const std::vector<std::uint32_t>& f, std::uint32_t x) const {
    std::uint32_t acc = 0, xp = 1;
    for (auto c : f) {
      acc = add(acc, mul(c, xp));
      xp = mul(xp, x);
    }
    return acc;
  }
  std::optional<std::uint32_t> mu_root(const std::vector<std::uint32_t>& f) const {
    for (auto z : mu())
      if (eval(f, z) == 0) return z;
    return std::nullopt;
  }
  // Sparse (exponent, coeff) evaluation with plain repeated multiplication of powers.
  bool permutes(const std::vector<std::pair<std::uint64_t, std::uint32_t>>& terms) const {
    std::set<std::uint32_t> image;
    for (std::uint32_t x = 0; x < q2(); ++x) {
      std::uint32_t acc = 0;
      for (auto [e, c] : terms) acc = add(acc, mul(c, e == 0 ? 1 : pow_fast(x, e)));
      image.insert(acc);
    }
    return image.size() == q2();
  }
  std::uint32_t pow_fast(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e != 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

 private:
  std::uint32_t p_, n_, q_ = 1;
  std::vector<std::uint32_t> mq_, mq2_;
  mutable std::vector<std::uint32_t> mu_;
};

}  // namespace naive
