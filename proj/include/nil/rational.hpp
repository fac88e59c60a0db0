#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nil {

/// Arbitrary precision rational, always canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;

/// Parses "p/q", "-p/q" or an integer. Throws InputError on anything else or q = 0.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// num/den in canonical form; mpq_class(num, den) alone does not reduce.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Smallest integer >= q.
mpz_class ceil(const Rational& q);
mpz_class floor(const Rational& q);

/// q^e for a non-negative integer exponent.
Rational pow(const Rational& q, unsigned long e);

/// Exact r with r^n == q when it exists (q >= 0).
bool exact_root(const Rational& q, unsigned long n, Rational& root);

/// Rational with an extra +infinity value; used for critical scales and lct.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT
  static ExtendedRational infinity() {
    ExtendedRational r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const { return infinite_; }
  const Rational& value() const { return value_; }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  /// Strict comparison against a finite rational: c < *this.
  bool exceeds(const Rational& c) const { return infinite_ || c < value_; }

 private:
  bool infinite_ = false;
  Rational value_ = 0;
};

std::string to_string(const ExtendedRational& q);

using RationalVector = std::vector<Rational>;

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
std::string to_string(std::span<const Rational> v);

}  // namespace nil
