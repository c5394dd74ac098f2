#include "forge/scalar.hpp"

#include <stdexcept>

#include "forge/expr_parser.hpp"

namespace forge {

Scalar::Scalar(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("division by zero");
  reduce();
}

void Scalar::reduce() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.is_constant()) {
    if (!den_.is_one()) {
      num_ = num_.scaled(den_.constant_value().inverse());
      den_ = Poly(1);
    }
    return;
  }
  Poly g = gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = *num_.divide_exact(g);
    den_ = *den_.divide_exact(g);
  }
  CycNum lc = den_.leading_coeff();
  if (!lc.is_one()) {
    CycNum inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

void Scalar::reduce_monic() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  CycNum lc = den_.leading_coeff();
  if (den_.is_constant()) {
    num_ = num_.scaled(lc.inverse());
    den_ = Poly(1);
  } else if (!lc.is_one()) {
    CycNum inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

Scalar Scalar::parse(std::string_view text, int order) {
  ExprHooks<Scalar> hooks;
  hooks.number = [](const Rational& r) { return Scalar(r); };
  hooks.identifier = [order](std::string_view id) {
    if (id == "z") return Scalar(CycNum::zeta(order));
    int v = param_var_index(id);
    if (v < 0) throw ParseError("unknown identifier '" + std::string(id) + "' in scalar literal");
    return Scalar::param(v);
  };
  hooks.divide = [](const Scalar& a, const Scalar& b) { return a / b; };
  hooks.one = [] { return Scalar(1); };
  return parse_expression(text, hooks);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  Scalar r;
  r.num_ = den_;
  r.den_ = num_;
  r.reduce();
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar r;
  if (a.den_.is_one() && b.den_.is_one()) {
    r.num_ = a.num_ + b.num_;
    return r;
  }
  if (a.den_.is_one() || b.den_.is_one() || a.den_ == b.den_) {
    const Poly& d = a.den_.is_one() ? b.den_ : a.den_;
    r.num_ = (a.den_ == d ? a.num_ : a.num_ * d) + (b.den_ == d ? b.num_ : b.num_ * d);
    r.den_ = d;
    if (a.den_ == b.den_) r.reduce();  // otherwise already coprime
    return r;
  }
  // Henrici: only the shared part of the denominators can cancel.
  Poly g = gcd(a.den_, b.den_);
  if (g.is_one()) {
    r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
    r.den_ = a.den_ * b.den_;
    r.reduce_monic();
    return r;
  }
  Poly ad = *a.den_.divide_exact(g);
  Poly bd = *b.den_.divide_exact(g);
  Poly n = a.num_ * bd + b.num_ * ad;
  Poly h = gcd(n, g);
  if (!h.is_one()) {
    n = *n.divide_exact(h);
    g = *g.divide_exact(h);
  }
  r.num_ = std::move(n);
  r.den_ = ad * bd * g;
  r.reduce_monic();
  return r;
}

Scalar& Scalar::operator+=(const Scalar& b) {
  if (den_.is_one() && b.den_.is_one()) {
    num_ += b.num_;
    return *this;
  }
  return *this = *this + b;
}

Scalar& Scalar::operator-=(const Scalar& b) {
  if (den_.is_one() && b.den_.is_one()) {
    num_ -= b.num_;
    return *this;
  }
  return *this = *this - b;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar r;
  if (a.den_.is_one() && b.den_.is_one()) {
    r.num_ = a.num_ * b.num_;
    return r;
  }
  if (a.is_zero() || b.is_zero()) return r;
  // Henrici: cancel across the two fractions, each already reduced.
  Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  Poly g1 = gcd(an, bd);
  if (!g1.is_one()) {
    an = *an.divide_exact(g1);
    bd = *bd.divide_exact(g1);
  }
  Poly g2 = gcd(bn, ad);
  if (!g2.is_one()) {
    bn = *bn.divide_exact(g2);
    ad = *ad.divide_exact(g2);
  }
  r.num_ = an * bn;
  r.den_ = ad * bd;
  r.reduce_monic();
  return r;
}

Scalar operator*(const Scalar& a, const CycNum& b) {
  Scalar r = a;
  r.num_ = a.num_.scaled(b);
  if (r.num_.is_zero()) r.den_ = Poly(1);
  return r;
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

Scalar Scalar::substitute(int var, const Scalar& value) const {
  // Horner evaluation in the field keeps the result reduced.
  auto eval = [&](const Poly& p) {
    auto cs = p.coeffs_in(var);
    Scalar r;
    for (std::size_t k = cs.size(); k-- > 0;) r = r * value + Scalar(cs[k]);
    return r;
  };
  return eval(num_) / eval(den_);
}

std::string Scalar::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.terms().size() > 1) n = "(" + n + ")";
  return n + "/(" + den_.to_string() + ")";
}

std::string Scalar::to_factor_string() const {
  std::string s = to_string();
  if (den_.is_one() && num_.terms().size() <= 1) return s;
  return "(" + s + ")";
}

bool operator<(const Scalar& a, const Scalar& b) {
  if (a.num_ != b.num_) return a.num_ < b.num_;
  return a.den_ < b.den_;
}

Scalar Scalar::derivative(int var) const {
  Poly dn = num_.derivative(var);
  Poly dd = den_.derivative(var);
  if (dd.is_zero()) return Scalar(dn, den_);
  return Scalar(dn * den_ - num_ * dd, den_ * den_);
}

}  // namespace forge
