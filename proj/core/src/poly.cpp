#include "forge/poly.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace forge {

std::string param_var_name(int var) {
  if (var == kVarT) return "t";
  if (var == kVarTau) return "tau";
  if (var > 0 && var < kVarTau) return "c" + std::to_string(var);
  throw std::out_of_range("parameter variable index");
}

int param_var_index(std::string_view name) {
  if (name == "t") return kVarT;
  if (name == "tau") return kVarTau;
  if (name.size() == 2 && name[0] == 'c' && name[1] >= '1' && name[1] <= '6') return name[1] - '0';
  return -1;
}

namespace mono {

Mono var(int v, int e) {
  if (e < 0 || e > kMaxParamDegree) throw std::overflow_error("parameter degree too large");
  return (static_cast<Mono>(e) << 56) | (static_cast<Mono>(e) << (7 * (7 - v)));
}

Mono mul(Mono a, Mono b) {
  if (total(a) + total(b) > kMaxParamDegree) throw std::overflow_error("parameter degree too large");
  return a + b;
}

bool divides(Mono a, Mono b) {
  if (total(a) > total(b)) return false;
  for (int v = 0; v < kNumParamVars; ++v)
    if (exp(a, v) > exp(b, v)) return false;
  return true;
}

}  // namespace mono

Poly::Poly(const CycNum& c) {
  if (!c.is_zero()) terms_.emplace_back(0, c);
}

Poly Poly::var(int v, int e) {
  Poly p;
  p.terms_.emplace_back(mono::var(v, e), CycNum(1));
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  Poly p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second.is_zero()) out.pop_back();
  terms_ = std::move(out);
}

CycNum Poly::constant_value() const {
  if (terms_.empty()) return CycNum(0);
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_[0].second;
}

int Poly::degree_in(int v) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, mono::exp(t.first, v));
  return d;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.terms_.empty()) return b;
  if (b.terms_.empty()) return a;
  Poly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first > b.terms_[j].first)) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || b.terms_[j].first > a.terms_[i].first) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      CycNum s = a.terms_[i].second + b.terms_[j].second;
      if (!s.is_zero()) r.terms_.emplace_back(a.terms_[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.terms_.empty() || b.terms_.empty()) return Poly();
  if (b.is_constant()) return a.scaled(b.terms_[0].second);
  if (a.is_constant()) return b.scaled(a.terms_[0].second);
  Poly r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) r.terms_.emplace_back(mono::mul(x.first, y.first), x.second * y.second);
  r.normalize();
  return r;
}

Poly Poly::scaled(const CycNum& c) const {
  if (c.is_zero()) return Poly();
  if (c.is_one()) return *this;
  Poly r = *this;
  for (auto& t : r.terms_) t.second = t.second * c;
  return r;
}

std::vector<Poly> Poly::coeffs_in(int v) const {
  std::vector<Poly> out(degree_in(v) + 1);
  std::vector<std::vector<Term>> buckets(out.size());
  for (const auto& t : terms_) {
    int e = mono::exp(t.first, v);
    buckets[e].emplace_back(t.first - mono::var(v, e), t.second);
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = from_terms(std::move(buckets[k]));
  return out;
}

Poly Poly::from_coeffs(int v, const std::vector<Poly>& coeffs) {
  std::vector<Term> all;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Mono shift = mono::var(v, static_cast<int>(k));
    for (const auto& t : coeffs[k].terms_) all.emplace_back(mono::mul(t.first, shift), t.second);
  }
  return from_terms(std::move(all));
}

Poly Poly::derivative(int v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    int e = mono::exp(t.first, v);
    if (e == 0) continue;
    out.emplace_back(t.first - mono::var(v, 1), t.second * CycNum(e));
  }
  return from_terms(std::move(out));
}

Poly Poly::substitute(int v, const Poly& value) const {
  auto cs = coeffs_in(v);
  Poly r;
  for (std::size_t k = cs.size(); k-- > 0;) r = r * value + cs[k];
  return r;
}

CycNum Poly::evaluate(const std::vector<CycNum>& values) const {
  CycNum r(0);
  for (const auto& t : terms_) {
    CycNum m = t.second;
    for (int v = 0; v < kNumParamVars; ++v) {
      int e = mono::exp(t.first, v);
      if (e > 0) m = m * values.at(v).pow(e);
    }
    r += m;
  }
  return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& b) const {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (b.is_constant()) return scaled(b.terms_[0].second.inverse());
  Poly r = *this;
  std::vector<Term> q;
  CycNum inv = b.leading_coeff().inverse();
  Mono lb = b.leading_mono();
  while (!r.is_zero()) {
    Mono lr = r.leading_mono();
    if (!mono::divides(lb, lr)) return std::nullopt;
    Term qt(mono::div(lr, lb), r.leading_coeff() * inv);
    Poly step;
    step.terms_.reserve(b.terms_.size());
    for (const auto& t : b.terms_) step.terms_.emplace_back(t.first + qt.first, t.second * qt.second);
    r = r - step;
    q.push_back(std::move(qt));
  }
  return from_terms(std::move(q));
}

Poly Poly::monic() const {
  if (is_zero() || leading_coeff().is_one()) return *this;
  return scaled(leading_coeff().inverse());
}

namespace {

std::string mono_string(Mono m) {
  std::string out;
  for (int v = 0; v < kNumParamVars; ++v) {
    int e = mono::exp(m, v);
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += param_var_name(v);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    bool neg = c.is_rational() && c.rational_part().sign() < 0;
    CycNum mag = neg ? -c : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string cs = mag.to_string();
    if (!mag.is_rational()) cs = "(" + cs + ")";
    if (m == 0) {
      out += cs;
    } else {
      if (!mag.is_one()) out += cs + "*";
      out += mono_string(m);
    }
  }
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
  }
  return true;
}

bool operator<(const Poly& a, const Poly& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.terms_[i].first != b.terms_[i].first) return a.terms_[i].first < b.terms_[i].first;
    if (a.terms_[i].second != b.terms_[i].second) return a.terms_[i].second < b.terms_[i].second;
  }
  return a.terms_.size() < b.terms_.size();
}

std::size_t Poly::hash() const {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) h = (h * 1000003u) ^ std::hash<Mono>{}(t.first) ^ (t.second.hash() << 1);
  return h;
}

namespace {

// Common variable of least degree; keeps the remainder sequence short.
int main_var(const Poly& a, const Poly& b) {
  int best = -1, best_deg = 0;
  for (int v = 0; v < kNumParamVars; ++v) {
    int da = a.degree_in(v), db = b.degree_in(v);
    if (da == 0 || db == 0) continue;
    int d = std::max(da, db);
    if (best < 0 || d < best_deg) {
      best = v;
      best_deg = d;
    }
  }
  return best;
}

Poly eval_except(const Poly& p, int keep, const std::array<long long, kNumParamVars>& point) {
  Poly r = p;
  for (int v = 0; v < kNumParamVars; ++v) {
    if (v != keep && r.has_var(v)) r = r.substitute(v, Poly(point[v]));
  }
  return r;
}

Poly content_in(const Poly& p, int v) {
  Poly g;
  for (const auto& c : p.coeffs_in(v)) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

// Pseudo-remainder of a by b with respect to v.
Poly prem(Poly a, const Poly& b, int v) {
  int db = b.degree_in(v);
  auto bc = b.coeffs_in(v);
  const Poly& lb = bc.back();
  while (!a.is_zero() && a.degree_in(v) >= db) {
    int da = a.degree_in(v);
    Poly la = a.coeffs_in(v).back();
    a = lb * a - la * Poly::var(v, da - db) * b;
  }
  return a;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a == b) return a.monic();
  int v = main_var(a, b);
  if (v < 0) return Poly(1);  // a common factor would share a variable
  Poly ca = content_in(a, v);
  Poly cb = content_in(b, v);
  Poly pa = a.divide_exact(ca)->monic();
  Poly pb = b.divide_exact(cb)->monic();
  Poly c = gcd(ca, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);

  // Degree bound from a univariate image at a point where the leading
  // coefficients survive.
  const Poly la = pa.coeffs_in(v).back();
  const Poly lb = pb.coeffs_in(v).back();
  std::array<long long, kNumParamVars> point{};
  int bound = -1;
  bool multivariate = false;
  for (int w = 0; w < kNumParamVars; ++w)
    if (w != v && (pa.has_var(w) || pb.has_var(w))) multivariate = true;
  for (int attempt = 0; multivariate && attempt < 8 && bound < 0; ++attempt) {
    for (int w = 0; w < kNumParamVars; ++w) point[w] = 2 + ((w * 7 + attempt * 13 + 3) % 29);
    if (eval_except(la, v, point).is_zero() || eval_except(lb, v, point).is_zero()) continue;
    bound = gcd(eval_except(pa, v, point), eval_except(pb, v, point)).degree_in(v);
  }
  if (bound == 0) return c.monic();
  if (bound == pb.degree_in(v) && pa.divide_exact(pb)) return (c * pb).monic();

  for (;;) {
    Poly r = prem(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      pb = Poly(1);
      break;
    }
    pa = std::move(pb);
    pb = r.divide_exact(content_in(r, v))->monic();
  }
  return (c * pb).monic();
}

}  // namespace forge
