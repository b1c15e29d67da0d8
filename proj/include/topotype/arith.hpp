#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace topotype {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Binomial coefficient; zero when k < 0 or k > n. Throws for n < 0.
BigInt binomial(long n, long k);

/// Number of `count`-element multisets drawn from an `alphabet`-element set,
/// i.e. binomial(count + alphabet - 1, count).
BigInt multichoose(long count, long alphabet);

BigInt euler_phi(long d);

/// Divisors d' of d with d' > 1, ascending.
std::vector<long> divisors_greater_than_one(long d);

bool is_prime(long n);

/// Smallest prime strictly greater than n.
long next_prime(long n);

/// Exact quotient a / b. Throws InvariantViolation when b does not divide a.
BigInt exact_div(const BigInt& a, const BigInt& b, const char* context);

/// Univariate polynomial with exact rational coefficients; index i holds the
/// coefficient of x^i. The coefficient list never carries trailing zeros, so
/// the zero polynomial has an empty list and degree -1.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coefficients);

  static RationalPolynomial constant(const Rational& c);
  /// The monic linear polynomial x - root.
  static RationalPolynomial linear_factor(const Rational& root);
  static RationalPolynomial from_integers(std::initializer_list<long> coefficients);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(int i) const;

  Rational evaluate(const Rational& x) const;

  RationalPolynomial operator+(const RationalPolynomial& other) const;
  RationalPolynomial operator-(const RationalPolynomial& other) const;
  RationalPolynomial operator*(const RationalPolynomial& other) const;
  RationalPolynomial operator*(const Rational& scalar) const;
  RationalPolynomial operator/(const Rational& scalar) const;

  bool operator==(const RationalPolynomial& other) const;

  /// Renders as "(p^2 - 1)/12": an integer polynomial over a common denominator.
  std::string to_string(const std::string& var = "p") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// q-binomial coefficient [m+n choose m]_q stored as its coefficient list.
struct GaussianBinomial {
  int m = 0;
  int n = 0;
  std::vector<BigInt> coeffs;  // coeffs[l] = t_l, l = 0..m*n

  BigInt evaluate(const BigInt& q) const;
};

GaussianBinomial gaussian_binomial(int m, int n);

/// Unique polynomial of degree < points.size() through all (x, y) pairs.
/// Throws std::invalid_argument on a repeated abscissa.
RationalPolynomial interpolate(std::span<const std::pair<long, Rational>> points);

std::string rational_to_string(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace topotype
