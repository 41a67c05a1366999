#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cspw {

using Rational = mpq_class;

int euler_phi(int n);

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<long long>& cyclotomic_polynomial(int n);

struct PureForm;

/// An element of Q(zeta_N) in the power basis zeta^0..zeta^{phi(N)-1}, reduced modulo Phi_N.
///
/// Mixed-order arithmetic promotes both operands to lcm(N1, N2).
class CycloValue {
 public:
  CycloValue() : CycloValue(1) {}
  explicit CycloValue(int order);
  CycloValue(const Rational& q, int order);

  static CycloValue zero(int order = 1) { return CycloValue(order); }
  static CycloValue one(int order = 1) { return CycloValue(Rational(1), order); }
  /// scale * zeta_N^k, for any integer k.
  static CycloValue root_power(int order, long long k, const Rational& scale = 1);

  int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  std::optional<Rational> as_rational() const;

  CycloValue promoted(int order) const;

  CycloValue conj() const;
  CycloValue inv() const;
  CycloValue magnitude_sq() const;
  CycloValue pow(unsigned long e) const;

  /// Recognizes magnitude * root of unity with rational magnitude.
  std::optional<PureForm> pure_form() const;

  std::string to_string() const;
  static CycloValue parse(std::string_view text, int order);

  CycloValue& operator+=(const CycloValue& o);
  CycloValue& operator-=(const CycloValue& o);
  CycloValue& operator*=(const CycloValue& o);
  CycloValue& operator/=(const CycloValue& o) { return *this *= o.inv(); }
  CycloValue operator-() const;

  friend CycloValue operator+(CycloValue a, const CycloValue& b) { return a += b; }
  friend CycloValue operator-(CycloValue a, const CycloValue& b) { return a -= b; }
  friend CycloValue operator*(CycloValue a, const CycloValue& b) { return a *= b; }
  friend CycloValue operator/(CycloValue a, const CycloValue& b) { return a /= b; }
  friend bool operator==(const CycloValue& a, const CycloValue& b);
  friend bool operator!=(const CycloValue& a, const CycloValue& b) { return !(a == b); }

 private:
  friend CycloValue canonicalize(const std::vector<Rational>& raw, int order);
  int order_;
  std::vector<Rational> coeffs_;
};

/// Reduces sum_k raw[k] zeta_N^k modulo the N-th cyclotomic polynomial.
CycloValue canonicalize(const std::vector<Rational>& raw, int order);

inline CycloValue add(const CycloValue& a, const CycloValue& b) { return a + b; }
inline CycloValue mul(const CycloValue& a, const CycloValue& b) { return a * b; }
inline CycloValue conj(const CycloValue& a) { return a.conj(); }
inline CycloValue inv(const CycloValue& a) { return a.inv(); }
inline CycloValue magnitude_sq(const CycloValue& a) { return a.magnitude_sq(); }

/// magnitude * zeta_{unit_order}^unit_exponent with unit_order = lcm(N, 2).
struct PureForm {
  Rational magnitude;
  int unit_exponent = 0;
  int unit_order = 1;

  /// Multiplicative order of the unit part.
  int root_order() const;
  CycloValue value(int order) const;
};

/// Strict weak order for use as a map key; compares order first, then coefficients.
struct CycloLess {
  bool operator()(const CycloValue& a, const CycloValue& b) const;
};

std::ostream& operator<<(std::ostream& os, const CycloValue& v);

}  // namespace cspw
