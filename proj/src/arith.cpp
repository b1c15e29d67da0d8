#include "topotype/arith.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "topotype/errors.hpp"

namespace topotype {

BigInt binomial(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial: negative n = " + std::to_string(n));
  if (k < 0 || k > n) return 0;
  BigInt result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return result;
}

BigInt multichoose(long count, long alphabet) {
  if (count < 0 || alphabet < 0) throw std::invalid_argument("multichoose: negative argument");
  if (alphabet == 0) return count == 0 ? 1 : 0;
  return binomial(count + alphabet - 1, count);
}

BigInt euler_phi(long d) {
  if (d < 1) throw std::invalid_argument("euler_phi: argument must be positive");
  long result = d;
  long rest = d;
  for (long q = 2; q * q <= rest; ++q) {
    if (rest % q != 0) continue;
    while (rest % q == 0) rest /= q;
    result -= result / q;
  }
  if (rest > 1) result -= result / rest;
  return result;
}

std::vector<long> divisors_greater_than_one(long d) {
  if (d < 1) throw std::invalid_argument("divisors_greater_than_one: argument must be positive");
  std::vector<long> small, large;
  for (long q = 1; q * q <= d; ++q) {
    if (d % q != 0) continue;
    small.push_back(q);
    if (q != d / q) large.push_back(d / q);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  small.erase(small.begin());  // drop 1
  return small;
}

bool is_prime(long n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (long q = 3; q * q <= n; q += 2)
    if (n % q == 0) return false;
  return true;
}

long next_prime(long n) {
  long c = std::max(n + 1, 2L);
  while (!is_prime(c)) ++c;
  return c;
}

BigInt exact_div(const BigInt& a, const BigInt& b, const char* context) {
  if (b == 0) throw InvariantViolation(std::string(context) + ": division by zero");
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
    throw InvariantViolation(std::string(context) + ": " + a.get_str() + " is not divisible by " + b.get_str());
  BigInt q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// ---------------------------------------------------------------------------
// RationalPolynomial

RationalPolynomial::RationalPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

RationalPolynomial RationalPolynomial::constant(const Rational& c) { return RationalPolynomial({c}); }

RationalPolynomial RationalPolynomial::linear_factor(const Rational& root) {
  return RationalPolynomial({Rational(-root), Rational(1)});
}

RationalPolynomial RationalPolynomial::from_integers(std::initializer_list<long> coefficients) {
  std::vector<Rational> c;
  for (long v : coefficients) c.emplace_back(v);
  return RationalPolynomial(std::move(c));
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::coefficient(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[i];
}

Rational RationalPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  acc.canonicalize();
  return acc;
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& other) const {
  std::vector<Rational> c(std::max(coeffs_.size(), other.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) c[i] += other.coeffs_[i];
  return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial& other) const {
  return *this + other * Rational(-1);
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<Rational> c(coeffs_.size() + other.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * other.coeffs_[j];
  return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator*(const Rational& scalar) const {
  std::vector<Rational> c = coeffs_;
  for (auto& x : c) x *= scalar;
  return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator/(const Rational& scalar) const {
  if (scalar == 0) throw std::invalid_argument("RationalPolynomial: division by zero");
  return *this * Rational(1 / scalar);
}

bool RationalPolynomial::operator==(const RationalPolynomial& other) const { return coeffs_ == other.coeffs_; }

std::string RationalPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  BigInt denom = 1;
  for (const auto& c : coeffs_) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), c.get_den_mpz_t());

  std::ostringstream out;
  bool first = true;
  int terms = 0;
  for (int i = degree(); i >= 0; --i) {
    Rational scaled = coeffs_[i] * denom;
    scaled.canonicalize();
    BigInt c = scaled.get_num();
    if (c == 0) continue;
    ++terms;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) out << mag.get_str();
    if (i >= 1) out << var;
    if (i >= 2) out << "^" << i;
  }
  if (denom == 1) return out.str();
  if (terms == 1 && degree() == 0) return out.str() + "/" + denom.get_str();
  return "(" + out.str() + ")/" + denom.get_str();
}

// ---------------------------------------------------------------------------
// Gaussian binomials

BigInt GaussianBinomial::evaluate(const BigInt& q) const {
  BigInt acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * q + *it;
  return acc;
}

GaussianBinomial gaussian_binomial(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("gaussian_binomial: negative argument");
  // q-Pascal: G(i, j) = G(i-1, j) + q^i G(i, j-1), with G(0, j) = G(i, 0) = 1.
  // Rolling over j keeps one row of polynomials indexed by i.
  std::vector<std::vector<BigInt>> row(m + 1, std::vector<BigInt>{1});
  for (int j = 1; j <= n; ++j) {
    std::vector<std::vector<BigInt>> next(m + 1);
    next[0] = {1};
    for (int i = 1; i <= m; ++i) {
      const auto& left = next[i - 1];
      const auto& up = row[i];
      std::vector<BigInt> poly(static_cast<std::size_t>(i) * j + 1, BigInt(0));
      for (std::size_t l = 0; l < left.size(); ++l) poly[l] += left[l];
      for (std::size_t l = 0; l < up.size(); ++l) poly[l + i] += up[l];
      next[i] = std::move(poly);
    }
    row = std::move(next);
  }
  return GaussianBinomial{m, n, row[m]};
}

// ---------------------------------------------------------------------------
// Interpolation

RationalPolynomial interpolate(std::span<const std::pair<long, Rational>> points) {
  const std::size_t count = points.size();
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if (points[i].first == points[j].first)
        throw std::invalid_argument("interpolate: duplicate abscissa " + std::to_string(points[i].first));

  // Newton divided differences, then expansion into the monomial basis.
  std::vector<Rational> diff(count);
  for (std::size_t i = 0; i < count; ++i) diff[i] = points[i].second;
  for (std::size_t level = 1; level < count; ++level) {
    for (std::size_t i = count - 1; i >= level; --i) {
      diff[i] = (diff[i] - diff[i - 1]) / Rational(points[i].first - points[i - level].first);
      diff[i].canonicalize();
    }
  }

  RationalPolynomial result;
  for (std::size_t i = count; i-- > 0;) {
    result = result * RationalPolynomial::linear_factor(Rational(points[i].first)) +
             RationalPolynomial::constant(diff[i]);
  }
  return result;
}

std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational number: '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace topotype
