#include "forge/xpoly.hpp"

#include <stdexcept>
#include <vector>

#include "forge/format.hpp"

namespace forge {

XPoly::XPoly(const Scalar& c) {
  if (!c.is_zero()) terms_.emplace(MultiIndex(), c);
}

XPoly XPoly::monomial(MultiIndex m, const Scalar& c) {
  XPoly p;
  p.add_term(m, c);
  return p;
}

XPoly XPoly::linear(const CycVector& form) {
  XPoly p;
  for (std::size_t k = 0; k < form.size(); ++k) p.add_term(MultiIndex::unit(static_cast<int>(k)), Scalar(form[k]));
  return p;
}

Scalar XPoly::coefficient(MultiIndex m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

int XPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total());
  return d;
}

int XPoly::degree_in(int var) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

void XPoly::add_term(MultiIndex m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

XPoly XPoly::operator-() const {
  XPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

XPoly& XPoly::operator+=(const XPoly& b) {
  for (const auto& [m, c] : b.terms_) add_term(m, c);
  return *this;
}

XPoly& XPoly::operator-=(const XPoly& b) {
  for (const auto& [m, c] : b.terms_) add_term(m, -c);
  return *this;
}

XPoly operator+(const XPoly& a, const XPoly& b) {
  XPoly r = a;
  r += b;
  return r;
}

XPoly operator-(const XPoly& a, const XPoly& b) {
  XPoly r = a;
  r -= b;
  return r;
}

XPoly operator*(const XPoly& a, const XPoly& b) {
  XPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
  return r;
}

XPoly operator*(const Scalar& c, const XPoly& a) {
  XPoly r;
  if (c.is_zero()) return r;
  for (const auto& [m, v] : a.terms_) r.terms_.emplace(m, c * v);
  return r;
}

XPoly XPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  XPoly r(Scalar(1)), base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

XPoly XPoly::derivative(int var) const {
  XPoly r;
  for (const auto& [m, c] : terms_) {
    int e = m[var];
    if (!e) continue;
    r.add_term(m - MultiIndex::unit(var), c * Scalar(e));
  }
  return r;
}

XPoly XPoly::derivative(MultiIndex beta) const {
  XPoly r;
  for (const auto& [m, c] : terms_) {
    if (!leq(beta, m)) continue;
    long long f = 1;
    for (int i = 0; i < MultiIndex::kMaxVars; ++i)
      for (int k = 0; k < beta[i]; ++k) f *= m[i] - k;
    r.add_term(m - beta, c * Scalar(f));
  }
  return r;
}

XPoly XPoly::truncate(int k) const {
  XPoly r;
  for (const auto& [m, c] : terms_)
    if (m.total() <= k) r.terms_.emplace(m, c);
  return r;
}

XPoly XPoly::linear_substitute(const Matrix& m) const {
  std::vector<XPoly> images;
  for (int j = 0; j < m.rows(); ++j) images.push_back(linear(m.row(j)));
  return compose(images);
}

XPoly XPoly::compose(const std::vector<XPoly>& images, int truncate_degree) const {
  std::vector<std::vector<XPoly>> powers(images.size());
  auto power = [&](int j, int e) -> const XPoly& {
    auto& cache = powers[j];
    if (cache.empty()) cache.push_back(XPoly(Scalar(1)));
    while (static_cast<int>(cache.size()) <= e) {
      XPoly next = cache.back() * images[j];
      cache.push_back(truncate_degree >= 0 ? next.truncate(truncate_degree) : next);
    }
    return cache[e];
  };
  XPoly r;
  for (const auto& [m, c] : terms_) {
    XPoly term(c);
    for (std::size_t j = 0; j < images.size(); ++j) {
      if (!m[static_cast<int>(j)]) continue;
      term = term * power(static_cast<int>(j), m[static_cast<int>(j)]);
      if (truncate_degree >= 0) term = term.truncate(truncate_degree);
    }
    r += term;
  }
  return r;
}

std::optional<XPoly> XPoly::divide_linear(const CycVector& form) const {
  int p = -1;
  for (std::size_t k = 0; k < form.size(); ++k) {
    if (!form[k].is_zero()) {
      p = static_cast<int>(k);
      break;
    }
  }
  if (p < 0) throw std::invalid_argument("division by the zero linear form");
  if (is_zero()) return XPoly();
  // form = lead * (x_p - a) with a linear in the other variables.
  Scalar lead_inv = Scalar(form[p].inverse());
  XPoly a;
  for (std::size_t k = 0; k < form.size(); ++k)
    if (static_cast<int>(k) != p) a.add_term(MultiIndex::unit(static_cast<int>(k)), -Scalar(form[k]) * lead_inv);
  int d = degree_in(p);
  std::vector<XPoly> f(d + 1);
  for (const auto& [m, c] : terms_) {
    MultiIndex rest = m;
    rest.set(p, 0);
    f[m[p]].add_term(rest, c);
  }
  if (d == 0) return std::nullopt;
  std::vector<XPoly> q(d);
  q[d - 1] = f[d];
  for (int k = d - 1; k >= 1; --k) q[k - 1] = f[k] + a * q[k];
  XPoly rem = f[0] + a * q[0];
  if (!rem.is_zero()) return std::nullopt;
  XPoly out;
  for (int k = 0; k < d; ++k)
    for (const auto& [m, c] : q[k].terms_) out.add_term(m + MultiIndex::unit(p, k), c * lead_inv);
  return out;
}

XPoly XPoly::map_coefficients(const std::function<Scalar(const Scalar&)>& f) const {
  XPoly r;
  for (const auto& [m, c] : terms_) r.add_term(m, f(c));
  return r;
}

std::string XPoly::to_string(int dim, const std::string& prefix) const {
  std::vector<std::pair<Scalar, std::string>> parts;
  std::vector<std::pair<MultiIndex, Scalar>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    if (x.first.total() != y.first.total()) return x.first.total() > y.first.total();
    return y.first < x.first;
  });
  for (const auto& [m, c] : sorted) parts.emplace_back(c, m.to_string(prefix, dim));
  return join_terms(parts);
}

bool operator<(const XPoly& a, const XPoly& b) {
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.terms_.end() && ib != b.terms_.end();
}

}  // namespace forge
