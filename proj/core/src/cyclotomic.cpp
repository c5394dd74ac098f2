#include "forge/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "forge/expr_parser.hpp"

namespace forge {
namespace {

// Exact division by a monic integer polynomial.
std::vector<long long> poly_div_monic(std::vector<long long> a, const std::vector<long long>& b) {
  std::size_t db = b.size() - 1;
  std::vector<long long> q(a.size() - db, 0);
  for (std::size_t k = a.size(); k-- > db;) {
    long long c = a[k];
    q[k - db] = c;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
  }
  return q;
}

std::vector<long long> compute_cyclotomic(int n) {
  std::vector<long long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) num = poly_div_monic(num, compute_cyclotomic(d));
  }
  return num;
}

}  // namespace

const std::vector<long long>& cyclotomic_polynomial(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<long long>> cache;
  if (n <= 0) throw std::invalid_argument("cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  return cache.emplace(n, compute_cyclotomic(n)).first->second;
}

int euler_phi(int n) { return static_cast<int>(cyclotomic_polynomial(n).size()) - 1; }

CycNum::CycNum(int order, Coeffs coeffs) : order_(order), c_(std::move(coeffs)) {
  int phi = euler_phi(order);
  if (static_cast<int>(c_.size()) > phi) {
    std::vector<Rational> raw(c_.begin(), c_.end());
    reduce_raw(raw);
    c_.assign(raw.begin(), raw.end());
  }
  c_.resize(phi);
  collapse();
}

void CycNum::reduce_raw(std::vector<Rational>& raw) const {
  const auto& cp = cyclotomic_polynomial(order_);
  std::size_t phi = cp.size() - 1;
  for (std::size_t k = raw.size(); k-- > phi;) {
    if (raw[k].is_zero()) continue;
    Rational c = raw[k];
    for (std::size_t i = 0; i <= phi; ++i) {
      if (cp[i] != 0) raw[k - phi + i] -= c * Rational(cp[i]);
    }
  }
  if (raw.size() > phi) raw.resize(phi);
}

void CycNum::collapse() {
  if (order_ == 1) return;
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return;
  order_ = 1;
  c_.resize(1);
}

CycNum CycNum::zeta(int order, int power) {
  int p = ((power % order) + order) % order;
  Coeffs raw(p + 1);
  raw[p] = Rational(1);
  return CycNum(order, std::move(raw));
}

CycNum CycNum::parse(std::string_view text, int order) {
  ExprHooks<CycNum> hooks;
  hooks.number = [](const Rational& r) { return CycNum(r); };
  hooks.identifier = [order](std::string_view id) {
    if (id == "z") return CycNum::zeta(order);
    throw ParseError("unknown identifier '" + std::string(id) + "' in cyclotomic literal");
  };
  hooks.divide = [](const CycNum& a, const CycNum& b) { return a / b; };
  hooks.one = [] { return CycNum(1); };
  return parse_expression(text, hooks);
}

bool CycNum::is_zero() const { return order_ == 1 && c_[0].is_zero(); }
bool CycNum::is_one() const { return order_ == 1 && c_[0].is_one(); }
bool CycNum::is_rational() const { return order_ == 1; }

std::string CycNum::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const Rational& c = c_[k];
    if (c.is_zero()) continue;
    std::string mag = (c.sign() < 0 ? -c : c).to_string();
    if (!out.empty()) out += c.sign() < 0 ? "-" : "+";
    else if (c.sign() < 0) out += "-";
    if (k == 0) {
      out += mag;
    } else {
      if (mag != "1") out += mag + "*";
      out += "z";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

int common_order(const CycNum& a, const CycNum& b) {
  if (a.order() == b.order()) return a.order();
  if (a.is_rational()) return b.order();
  if (b.is_rational()) return a.order();
  throw std::invalid_argument("cyclotomic order mismatch: " + std::to_string(a.order()) + " vs " +
                              std::to_string(b.order()));
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

CycNum& CycNum::operator+=(const CycNum& b) {
  if (order_ == b.order_) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += b.c_[k];
    collapse();
    return *this;
  }
  return *this = *this + b;
}

CycNum& CycNum::operator-=(const CycNum& b) {
  if (order_ == b.order_) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= b.c_[k];
    collapse();
    return *this;
  }
  return *this = *this - b;
}

CycNum operator+(const CycNum& a, const CycNum& b) {
  if (a.order_ == b.order_) {
    CycNum r = a;
    r += b;
    return r;
  }
  if (a.is_rational()) {
    CycNum r = b;
    r.c_[0] += a.c_[0];
    return r;
  }
  if (b.is_rational()) {
    CycNum r = a;
    r.c_[0] += b.c_[0];
    return r;
  }
  common_order(a, b);
  return a;  // unreachable
}

CycNum operator-(const CycNum& a, const CycNum& b) { return a + (-b); }

CycNum operator*(const CycNum& a, const CycNum& b) {
  if (a.is_rational()) {
    if (a.c_[0].is_one()) return b;
    CycNum r = b;
    for (auto& c : r.c_) c = a.c_[0] * c;
    r.collapse();
    return r;
  }
  if (b.is_rational()) return b * a;
  common_order(a, b);
  std::vector<Rational> raw(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (!b.c_[j].is_zero()) raw[i + j] += a.c_[i] * b.c_[j];
    }
  }
  CycNum r;
  r.order_ = a.order_;
  r.reduce_raw(raw);
  r.c_.assign(raw.begin(), raw.end());
  r.collapse();
  return r;
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (is_rational()) return CycNum(c_[0].inverse());
  // Solve (multiplication-by-this) x = 1 by Gaussian elimination.
  std::size_t n = c_.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  CycNum col = *this;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) m[i][k] = col.coeff(i);
    col = col * CycNum::zeta(order_);
  }
  m[0][n] = Rational(1);
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t piv = p;
    while (piv < n && m[piv][p].is_zero()) ++piv;
    if (piv == n) throw std::domain_error("singular cyclotomic element");
    std::swap(m[p], m[piv]);
    Rational inv = m[p][p].inverse();
    for (auto& v : m[p]) v *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == p || m[i][p].is_zero()) continue;
      Rational f = m[i][p];
      for (std::size_t j = p; j <= n; ++j) m[i][j] -= f * m[p][j];
    }
  }
  Coeffs x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return CycNum(order_, std::move(x));
}

CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }

CycNum CycNum::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNum r(1);
  CycNum base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

CycNum CycNum::conj_power(int k) const {
  if (is_rational()) return *this;
  CycNum r;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) r += CycNum(c_[i]) * CycNum::zeta(order_, static_cast<int>(i) * k);
  }
  return r;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.order_ != b.order_) return false;
  for (std::size_t k = 0; k < a.c_.size(); ++k)
    if (a.c_[k] != b.c_[k]) return false;
  return true;
}

bool operator<(const CycNum& a, const CycNum& b) {
  if (a.order_ != b.order_) return a.order_ < b.order_;
  for (std::size_t k = 0; k < a.c_.size(); ++k) {
    if (a.c_[k] != b.c_[k]) return a.c_[k] < b.c_[k];
  }
  return false;
}

std::size_t CycNum::hash() const {
  std::size_t h = static_cast<std::size_t>(order_);
  for (const auto& c : c_) h = h * 1315423911u ^ c.hash();
  return h;
}

}  // namespace forge
