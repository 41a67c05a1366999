#include "cspw/cyclo.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cspw/errors.hpp"

namespace cspw {

namespace {

constexpr int kMaxOrder = 100000;

struct OrderData {
  int phi = 1;
  std::vector<long long> poly;
  // reduce[k - phi] holds the coefficients of x^k mod Phi_N, for phi <= k < N.
  std::vector<std::vector<long long>> reduce;
};

std::vector<long long> poly_div_exact(std::vector<long long> num, const std::vector<long long>& den) {
  // den is monic.
  int dn = static_cast<int>(den.size()) - 1;
  int nn = static_cast<int>(num.size()) - 1;
  std::vector<long long> q(nn - dn + 1, 0);
  for (int i = nn; i >= dn; --i) {
    long long c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

const OrderData& order_data(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<OrderData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;

  auto data = std::make_unique<OrderData>();
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  std::vector<long long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto sub = cache.find(d);
    if (sub == cache.end()) throw std::logic_error("cyclotomic cache not primed");
    const std::vector<long long>& pd = sub->second->poly;
    p = poly_div_exact(p, pd);
  }
  data->poly = p;
  data->phi = static_cast<int>(p.size()) - 1;
  int phi = data->phi;
  std::vector<long long> cur(phi, 0);
  // x^phi mod Phi = -(lower coefficients)
  for (int k = phi; k < n; ++k) {
    std::vector<long long> next(phi, 0);
    if (k == phi) {
      for (int j = 0; j < phi; ++j) next[j] = -p[j];
    } else {
      long long top = cur[phi - 1];
      for (int j = phi - 1; j >= 1; --j) next[j] = cur[j - 1];
      next[0] = 0;
      for (int j = 0; j < phi; ++j) next[j] -= top * p[j];
    }
    data->reduce.push_back(next);
    cur = std::move(next);
  }
  auto [pos, _] = cache.emplace(n, std::move(data));
  return *pos->second;
}

const OrderData& data_for(int n) {
  thread_local int last_n = 0;
  thread_local const OrderData* last = nullptr;
  if (n == last_n) return *last;
  if (n < 1 || n > kMaxOrder) throw InvalidArgument("root order out of range: " + std::to_string(n));
  // Prime the cache for all divisors in increasing order so order_data never recurses.
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) order_data(d);
  }
  last = &order_data(n);
  last_n = n;
  return *last;
}

int lcm_int(int a, int b) { return std::lcm(a, b); }

}  // namespace

int euler_phi(int n) {
  if (n < 1) throw InvalidArgument("euler_phi of non-positive integer");
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

const std::vector<long long>& cyclotomic_polynomial(int n) { return data_for(n).poly; }

CycloValue canonicalize(const std::vector<Rational>& raw, int order) {
  const OrderData& od = data_for(order);
  std::vector<Rational> bucket(order);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (raw[k] != 0) bucket[k % order] += raw[k];
  }
  CycloValue out(order);
  for (int k = 0; k < od.phi; ++k) out.coeffs_[k] = bucket[k];
  for (int k = od.phi; k < order; ++k) {
    if (bucket[k] == 0) continue;
    const auto& red = od.reduce[k - od.phi];
    for (int j = 0; j < od.phi; ++j) {
      if (red[j] != 0) out.coeffs_[j] += bucket[k] * static_cast<long>(red[j]);
    }
  }
  for (auto& c : out.coeffs_) c.canonicalize();
  return out;
}

CycloValue::CycloValue(int order) : order_(order) {
  coeffs_.assign(data_for(order).phi, Rational(0));
}

CycloValue::CycloValue(const Rational& q, int order) : CycloValue(order) {
  coeffs_[0] = q;
  coeffs_[0].canonicalize();
}

CycloValue CycloValue::root_power(int order, long long k, const Rational& scale) {
  long long e = ((k % order) + order) % order;
  std::vector<Rational> raw(e + 1);
  raw[e] = scale;
  return canonicalize(raw, order);
}

bool CycloValue::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

bool CycloValue::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return false;
  }
  return true;
}

bool CycloValue::is_one() const { return is_rational() && coeffs_[0] == 1; }

std::optional<Rational> CycloValue::as_rational() const {
  if (!is_rational()) return std::nullopt;
  return coeffs_[0];
}

CycloValue CycloValue::promoted(int target) const {
  if (target == order_) return *this;
  if (target % order_ != 0) throw InvalidArgument("cannot promote order " + std::to_string(order_) + " to " + std::to_string(target));
  if (is_rational()) return CycloValue(coeffs_[0], target);
  int step = target / order_;
  std::vector<Rational> raw(static_cast<std::size_t>(coeffs_.size() - 1) * step + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) raw[i * step] = coeffs_[i];
  return canonicalize(raw, target);
}

CycloValue& CycloValue::operator+=(const CycloValue& o) {
  if (o.order_ != order_) {
    int l = lcm_int(order_, o.order_);
    *this = promoted(l);
    return *this += o.promoted(l);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycloValue& CycloValue::operator-=(const CycloValue& o) {
  if (o.order_ != order_) {
    int l = lcm_int(order_, o.order_);
    *this = promoted(l);
    return *this -= o.promoted(l);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycloValue CycloValue::operator-() const {
  CycloValue r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloValue& CycloValue::operator*=(const CycloValue& o) {
  if (o.order_ != order_) {
    int l = lcm_int(order_, o.order_);
    *this = promoted(l);
    return *this *= o.promoted(l);
  }
  if (o.is_rational()) {
    const Rational& q = o.coeffs_[0];
    if (q == 1) return *this;
    for (auto& c : coeffs_) c *= q;
    return *this;
  }
  if (is_rational()) {
    Rational q = coeffs_[0];
    coeffs_ = o.coeffs_;
    if (q != 1) {
      for (auto& c : coeffs_) c *= q;
    }
    return *this;
  }
  std::size_t m = coeffs_.size();
  std::vector<Rational> raw(2 * m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (o.coeffs_[j] != 0) raw[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  *this = canonicalize(raw, order_);
  return *this;
}

bool operator==(const CycloValue& a, const CycloValue& b) {
  if (a.order_ != b.order_) {
    int l = lcm_int(a.order_, b.order_);
    return a.promoted(l).coeffs_ == b.promoted(l).coeffs_;
  }
  return a.coeffs_ == b.coeffs_;
}

CycloValue CycloValue::conj() const {
  if (is_rational()) return *this;
  std::vector<Rational> raw(order_);
  raw[0] = coeffs_[0];
  for (std::size_t i = 1; i < coeffs_.size(); ++i) raw[order_ - i] = coeffs_[i];
  return canonicalize(raw, order_);
}

CycloValue CycloValue::magnitude_sq() const { return *this * conj(); }

CycloValue CycloValue::inv() const {
  if (is_zero()) throw InvalidArgument("inverse of zero");
  if (is_rational()) return CycloValue(Rational(1) / coeffs_[0], order_);
  // Column j of M is this * zeta^j; solve M x = e_0 by Gauss-Jordan elimination.
  int m = static_cast<int>(coeffs_.size());
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
  CycloValue col = *this;
  CycloValue zeta = root_power(order_, 1);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) a[i][j] = col.coeffs_[i];
    col *= zeta;
  }
  a[0][m] = 1;
  for (int c = 0; c < m; ++c) {
    int piv = -1;
    for (int r = c; r < m; ++r) {
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw std::logic_error("singular multiplication matrix");
    std::swap(a[c], a[piv]);
    Rational p = a[c][c];
    for (int k = c; k <= m; ++k) a[c][k] /= p;
    for (int r = 0; r < m; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (int k = c; k <= m; ++k) a[r][k] -= f * a[c][k];
    }
  }
  CycloValue out(order_);
  for (int i = 0; i < m; ++i) out.coeffs_[i] = a[i][m];
  return out;
}

CycloValue CycloValue::pow(unsigned long e) const {
  CycloValue result = one(order_);
  CycloValue base = *this;
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

int PureForm::root_order() const {
  if (magnitude == 0) return 1;
  return unit_order / std::gcd(unit_order, unit_exponent);
}

CycloValue PureForm::value(int order) const {
  if (magnitude == 0) return CycloValue(order);
  int field = std::lcm(order, unit_order);
  CycloValue u = CycloValue::root_power(field, static_cast<long long>(unit_exponent) * (field / unit_order), magnitude);
  if (field == order) return u;
  if (order % 2 == 1 && field == 2 * order) {
    // zeta_{2N} = -zeta_N^{(N+1)/2}
    long long e = unit_exponent * (field / unit_order);
    Rational s = (e % 2 == 0) ? magnitude : Rational(-magnitude);
    return CycloValue::root_power(order, e * ((order + 1) / 2), s);
  }
  return u;
}

std::optional<PureForm> CycloValue::pure_form() const {
  PureForm pf;
  pf.unit_order = std::lcm(order_, 2);
  if (is_zero()) {
    pf.magnitude = 0;
    return pf;
  }
  auto m2 = magnitude_sq().as_rational();
  if (!m2) return std::nullopt;
  mpz_class num = m2->get_num(), den = m2->get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  pf.magnitude = Rational(rn, rd);
  pf.magnitude.canonicalize();
  for (int k = 0; k < pf.unit_order; ++k) {
    pf.unit_exponent = k;
    if (pf.value(order_) == *this) return pf;
  }
  return std::nullopt;
}

namespace {

std::string rational_text(const Rational& q) { return q.get_str(); }

}  // namespace

std::string CycloValue::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    std::string term;
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (k == 0) {
      term = rational_text(a);
    } else {
      if (a != 1) term = rational_text(a) + "*";
      term += (k == 1) ? "w" : "w^" + std::to_string(k);
    }
    if (out.empty()) {
      out = neg ? "-" + term : term;
    } else {
      out += (neg ? "-" : "+") + term;
    }
  }
  return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const CycloValue& v) { return os << v.to_string(); }

namespace {

class ValueParser {
 public:
  ValueParser(std::string_view s, int order) : s_(s), order_(order) {}

  CycloValue parse() {
    skip_ws();
    if (pos_ == s_.size()) fail("empty value");
    CycloValue total(order_);
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      total += parse_term(sign);
      first = false;
    }
    return total;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidArgument("bad value '" + std::string(s_) + "': " + why);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool peek_digit() const { return pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9'; }

  mpz_class parse_int() {
    std::size_t start = pos_;
    while (peek_digit()) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  CycloValue parse_term(int sign) {
    Rational coef(sign);
    bool have_coef = false;
    if (peek_digit()) {
      mpz_class num = parse_int();
      mpz_class den = 1;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip_ws();
        den = parse_int();
        if (den == 0) fail("zero denominator");
      }
      coef = Rational(num * sign, den);
      coef.canonicalize();
      have_coef = true;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != 'w') fail("expected 'w' after '*'");
      }
    }
    long long exponent = 0;
    if (pos_ < s_.size() && s_[pos_] == 'w') {
      ++pos_;
      exponent = 1;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        skip_ws();
        exponent = parse_int().get_si();
      }
    } else if (!have_coef) {
      fail("expected a term");
    }
    return CycloValue::root_power(order_, exponent, coef);
  }

  std::string_view s_;
  int order_;
  std::size_t pos_ = 0;
};

}  // namespace

CycloValue CycloValue::parse(std::string_view text, int order) { return ValueParser(text, order).parse(); }

bool CycloLess::operator()(const CycloValue& a, const CycloValue& b) const {
  if (a.order() != b.order()) return a.order() < b.order();
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  for (std::size_t i = 0; i < x.size(); ++i) {
    int c = cmp(x[i], y[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace cspw
