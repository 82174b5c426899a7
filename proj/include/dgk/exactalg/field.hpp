#pragma once

#include <concepts>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "dgk/errors.hpp"

namespace dgk {

/// The prime field F_p for a word-size prime p < 2^31. Residues are stored
/// reduced in [0, p).
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p))
      throw ValidationError("prime field modulus must be a prime below 2^31, got " +
                            std::to_string(p));
  }

  std::uint32_t characteristic() const noexcept { return p_; }
  std::string name() const { return "F" + std::to_string(p_); }

  value_type zero() const noexcept { return 0; }
  value_type one() const noexcept { return 1; }

  value_type from_int(long long v) const noexcept {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }

  value_type from_integer(const mpz_class& v) const {
    mpz_class r = v % p_;
    if (r < 0) r += p_;
    return static_cast<value_type>(r.get_ui());
  }

  /// num/den reduced mod p; a denominator divisible by p has no image.
  value_type from_rational(const mpz_class& num, const mpz_class& den) const {
    value_type d = from_integer(den);
    if (d == 0)
      throw ValidationError("denominator vanishes in " + name());
    return mul(from_integer(num), inv(d));
  }

  value_type add(value_type a, value_type b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const noexcept {
    return static_cast<value_type>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw ValidationError("division by zero in " + name());
    // extended Euclid on (a, p)
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<value_type>(t);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

  bool is_zero(value_type a) const noexcept { return a == 0; }
  bool is_one(value_type a) const noexcept { return a == 1; }
  bool equal(value_type a, value_type b) const noexcept { return a == b; }

  /// Residues print as non-negative integers; there are no signs.
  std::string to_string(value_type a) const { return std::to_string(a); }
  bool is_negative(value_type) const noexcept { return false; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept {
    return a.p_ == b.p_;
  }

 private:
  static bool is_prime(std::uint32_t n) noexcept {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  std::uint32_t p_;
};

/// The rationals, backed by GMP. mpq_class keeps values canonical
/// (lowest terms, positive denominator) after every operation we use.
class RationalField {
 public:
  using value_type = mpq_class;

  std::uint32_t characteristic() const noexcept { return 0; }
  std::string name() const { return "Q"; }

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(long long v) const { return value_type(mpz_class(std::to_string(v))); }
  value_type from_integer(const mpz_class& v) const { return value_type(v); }
  value_type from_rational(const mpz_class& num, const mpz_class& den) const {
    if (den == 0) throw ValidationError("zero denominator");
    value_type q(num, den);
    q.canonicalize();
    return q;
  }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw ValidationError("division by zero in Q");
    return 1 / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return a * inv(b); }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  std::string to_string(const value_type& a) const { return a.get_str(); }
  bool is_negative(const value_type& a) const { return sgn(a) < 0; }

  friend bool operator==(const RationalField&, const RationalField&) noexcept { return true; }
};

/// Fields the library is instantiated over.
template <class F>
concept ExactField = requires(const F& f, const typename F::value_type& a, long long i) {
  { f.zero() } -> std::convertible_to<typename F::value_type>;
  { f.one() } -> std::convertible_to<typename F::value_type>;
  { f.from_int(i) } -> std::convertible_to<typename F::value_type>;
  { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.sub(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.inv(a) } -> std::convertible_to<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.characteristic() } -> std::convertible_to<std::uint32_t>;
  { f.name() } -> std::convertible_to<std::string>;
  { f == f } -> std::convertible_to<bool>;
};

template <ExactField F>
void require_same_field(const F& a, const F& b) {
  if (!(a == b))
    throw FieldMismatch("field mismatch: " + a.name() + " vs " + b.name());
}

}  // namespace dgk
