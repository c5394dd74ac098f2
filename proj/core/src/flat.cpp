#include "forge/flat.hpp"

#include <algorithm>
#include <stdexcept>

#include "forge/poly.hpp"

namespace forge::jets {

namespace {

Scalar at_tau_zero(const Scalar& s) { return s.substitute(kVarTau, Scalar(0)); }

XPoly tau() { return XPoly(Scalar::param(kVarTau)); }

std::vector<std::vector<XPoly>> jacobian_of(const std::vector<XPoly>& map) {
  int n = static_cast<int>(map.size());
  std::vector<std::vector<XPoly>> j(n, std::vector<XPoly>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) j[r][c] = map[r].derivative(c);
  return j;
}

// d/dy^alpha expressed in x, for y = phi(x) with Jacobian jac, known mod m^{work - |alpha| + 1}.
class PulledPartials {
 public:
  PulledPartials(const std::vector<std::vector<XPoly>>& jac, int work) : n_(static_cast<int>(jac.size())), work_(work) {
    auto inv = invert_series_matrix(jac, work);
    for (int i = 0; i < n_; ++i) {
      JetDiffOp e(n_, work);
      for (int j = 0; j < n_; ++j)
        for (const auto& [m, c] : inv[j][i].terms()) e.add_term(m, MultiIndex::unit(j), c);
      e_.push_back(std::move(e));
    }
  }

  const JetDiffOp& power(MultiIndex alpha) {
    auto it = cache_.find(alpha);
    if (it != cache_.end()) return it->second;
    JetDiffOp r;
    if (alpha.is_zero()) {
      r = JetDiffOp::function(n_, work_, XPoly(Scalar(1)));
    } else {
      int i = alpha.first_nonzero();
      r = e_[i] * power(alpha - MultiIndex::unit(i));
    }
    return cache_.emplace(alpha, std::move(r)).first->second;
  }

 private:
  int n_;
  int work_;
  std::vector<JetDiffOp> e_;
  std::map<MultiIndex, JetDiffOp> cache_;
};

std::vector<MultiIndex> operator_symbols(const JetDiffOp& d) {
  std::vector<MultiIndex> out;
  for (const auto& [k, c] : d.terms())
    if (out.empty() || out.back() != k.second) out.push_back(k.second);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Chart Chart::at(const std::vector<Scalar>& basepoint, const std::vector<XPoly>& psi) {
  if (basepoint.size() != psi.size()) throw std::invalid_argument("chart basepoint and map size mismatch");
  Chart c;
  for (std::size_t j = 0; j < psi.size(); ++j) c.map.push_back(XPoly(basepoint[j]) + psi[j]);
  return c;
}

Chart Chart::at_start() const {
  Chart c;
  for (const auto& p : map) c.map.push_back(p.map_coefficients(at_tau_zero));
  return c;
}

std::vector<XPoly> Chart::velocity() const {
  std::vector<XPoly> v;
  for (const auto& p : map)
    v.push_back(p.map_coefficients([](const Scalar& s) { return at_tau_zero(s.derivative(kVarTau)); }));
  return v;
}

std::vector<Scalar> Chart::basepoint() const {
  std::vector<Scalar> z;
  for (const auto& p : map) z.push_back(p.constant_term());
  return z;
}

JetDiffOp taylor_of_operator(const JetDiffOp& d, const Chart& chart, int order) {
  int n = chart.vars();
  if (d.vars() != n) throw std::invalid_argument("operator and chart dimension mismatch");
  if (order < 0) throw std::invalid_argument("jet order must be non-negative");
  int work = order + std::max(d.differential_order(), 0);
  PulledPartials partials(jacobian_of(chart.map), work);
  JetDiffOp out(n, order);
  for (MultiIndex alpha : operator_symbols(d)) {
    XPoly a = d.coefficient_poly(alpha).compose(chart.map, work);
    out = out + JetDiffOp::function(n, work, a) * partials.power(alpha);
  }
  return out.truncated(order);
}

ResidualReport taylor_multiplicativity_check(const JetDiffOp& d1, const JetDiffOp& d2, const Chart& chart, int order) {
  int big = d1.order() + d2.order() + std::max(d1.differential_order(), 0) + 1;
  JetDiffOp lifted1(d1.vars(), big), lifted2(d2.vars(), big);
  for (const auto& [k, c] : d1.terms()) lifted1.add_term(k.first, k.second, c);
  for (const auto& [k, c] : d2.terms()) lifted2.add_term(k.first, k.second, c);
  JetDiffOp product = lifted1 * lifted2;
  JetDiffOp t1 = taylor_of_operator(d1, chart, order);
  JetDiffOp t2 = taylor_of_operator(d2, chart, order + std::max(t1.differential_order(), 0));
  JetDiffOp t12 = taylor_of_operator(product, chart, order);
  return {(t12 - t1 * t2).truncated(order)};
}

VectorField maurer_cartan_value(const Chart& path, int order) {
  int n = path.vars();
  Chart start = path.at_start();
  auto inv = invert_series_matrix(jacobian_of(start.map), order);
  auto vel = path.velocity();
  std::vector<JetPoly> comps;
  for (int j = 0; j < n; ++j) {
    XPoly w;
    for (int i = 0; i < n; ++i) w -= inv[j][i] * vel[i];
    comps.emplace_back(n, order, w);
  }
  return VectorField(n, order, std::move(comps));
}

ResidualReport flatness_check(const JetDiffOp& d, const Chart& path, int order) {
  int m = std::max(d.differential_order(), 0);
  JetDiffOp s = taylor_of_operator(d, path, order + 1);
  JetDiffOp ds = s.map_coefficients([](const Scalar& c) { return at_tau_zero(c.derivative(kVarTau)); });
  JetDiffOp s0 = s.map_coefficients(at_tau_zero);
  JetDiffOp omega = JetDiffOp::from_field(maurer_cartan_value(path, order + m));
  return {(ds + commutator(omega, s0)).truncated(order)};
}

std::vector<Chart> auto_paths(const std::vector<Scalar>& basepoint, const std::vector<XPoly>& psi) {
  int n = static_cast<int>(psi.size());
  std::vector<Chart> out;
  Chart base = Chart::at(basepoint, psi);
  for (int r = 0; r < n; ++r) {
    Chart c = base;
    c.map[r] += tau();
    out.push_back(std::move(c));
  }
  auto flow = [&](const XPoly& vf, int j) {
    std::vector<XPoly> images;
    for (int k = 0; k < n; ++k) images.push_back(k == j ? XPoly::var(k) + tau() * vf : XPoly::var(k));
    std::vector<XPoly> composed;
    for (const auto& p : psi) composed.push_back(p.compose(images));
    return Chart::at(basepoint, composed);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.push_back(flow(XPoly::var(i), j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.push_back(flow(XPoly::var(i).pow(2), j));
  return out;
}

std::vector<ConnectionSample> translation_frame(const std::vector<XPoly>& psi, int order) {
  int n = static_cast<int>(psi.size());
  std::vector<ConnectionSample> frame;
  for (int r = 0; r < n; ++r) {
    Chart path = Chart::at(std::vector<Scalar>(n), psi);
    path.map[r] += tau();
    frame.push_back({maurer_cartan_value(path, order)});
  }
  return frame;
}

XPoly CoefficientFamily::coefficient(MultiIndex alpha, MultiIndex beta) const {
  auto it = f.find({alpha, beta});
  return it == f.end() ? XPoly() : it->second;
}

void CoefficientFamily::add(MultiIndex alpha, MultiIndex beta, const XPoly& p) {
  if (p.is_zero()) return;
  auto [it, fresh] = f.emplace(Key{alpha, beta}, p);
  if (!fresh) {
    it->second += p;
    if (it->second.is_zero()) f.erase(it);
  }
}

CoefficientFamily CoefficientFamily::normalized() const {
  CoefficientFamily r{vars, order, {}};
  for (const auto& [k, p] : f)
    if (!p.is_zero()) r.f.emplace(k, p);
  return r;
}

JetDiffOp CoefficientFamily::evaluate(const std::vector<Scalar>& z) const {
  if (static_cast<int>(z.size()) != vars) throw std::invalid_argument("basepoint dimension mismatch");
  std::vector<XPoly> images(z.begin(), z.end());
  JetDiffOp op(vars, order);
  for (const auto& [k, p] : f) op.add_term(k.second, k.first, p.compose(images).constant_term());
  return op;
}

std::string CoefficientFamily::to_string() const {
  std::string out;
  for (const auto& [k, p] : f) {
    if (p.is_zero()) continue;
    std::string a = k.first.to_string("d", vars), b = k.second.to_string("x", vars);
    out += "f[" + (a.empty() ? "1" : a) + "; " + (b.empty() ? "1" : b) + "] = " + p.to_string(vars, "z") + "\n";
  }
  return out;
}

bool operator==(const CoefficientFamily& a, const CoefficientFamily& b) {
  return a.vars == b.vars && a.order == b.order && a.normalized().f == b.normalized().f;
}

CoefficientFamily taylor_family(const JetDiffOp& d, const std::vector<XPoly>& psi, int order) {
  int n = static_cast<int>(psi.size());
  if (2 * n > MultiIndex::kMaxVars) throw std::invalid_argument("symbolic basepoint needs at most 4 coordinates");
  if (d.vars() != n) throw std::invalid_argument("operator and chart dimension mismatch");
  int work = order + std::max(d.differential_order(), 0);
  std::vector<XPoly> images;
  for (int j = 0; j < n; ++j) images.push_back(XPoly::var(n + j) + psi[j]);
  PulledPartials partials(jacobian_of(psi), work);
  CoefficientFamily out{n, order, {}};
  for (MultiIndex alpha : operator_symbols(d)) {
    // a_alpha(z + psi(x)) = sum_b c_b(z) x^b
    std::map<MultiIndex, XPoly> split;
    XPoly pulled = d.coefficient_poly(alpha).compose(images);
    for (const auto& [m, c] : pulled.terms()) {
      MultiIndex xs, zs;
      for (int j = 0; j < n; ++j) {
        xs.set(j, m[j]);
        zs.set(j, m[n + j]);
      }
      if (xs.total() <= order) split[xs].add_term(zs, c);
    }
    for (const auto& [k, p] : partials.power(alpha).terms()) {
      const auto& [beta, gamma] = k;
      for (const auto& [b, cz] : split)
        if (b.total() + beta.total() <= order) out.add(gamma, b + beta, p * cz);
    }
  }
  return out;
}

CoefficientFamily reconstruct_coefficients(const CoefficientFamily& seeds, const std::vector<ConnectionSample>& frame,
                                           int max_differential_order, int order, RecursionOptions options) {
  int n = seeds.vars;
  if (static_cast<int>(frame.size()) != n) throw std::invalid_argument("frame must have one sample per coordinate");
  for (const auto& s : frame)
    if (s.xi.vars() != n || s.xi.order() < order + max_differential_order)
      throw std::invalid_argument("connection samples must be known to order K + max differential order");
  ScalarMatrix xi0(n, std::vector<Scalar>(n));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j < n; ++j) xi0[r][j] = frame[r].xi.component(j).coefficient(MultiIndex());
  ScalarMatrix inv = inverse(xi0);

  CoefficientFamily out{n, order, {}};
  for (const auto& [k, p] : seeds.f)
    if (k.second.is_zero() && k.first.total() <= max_differential_order) out.add(k.first, k.second, p);

  auto alphas = jet_monomials(n, max_differential_order);
  auto mus = jet_monomials(n, order + max_differential_order);
  for (int level = 0; level < order; ++level) {
    for (MultiIndex a : alphas) {
      for_each_index(n, level, [&](MultiIndex b) {
        if (b.total() != level) return;
        std::vector<XPoly> rhs(n);
        for (int r = 0; r < n; ++r) {
          XPoly& v = rhs[r];
          v = Scalar(options.derivative_sign) * out.coefficient(a, b).derivative(r);
          for (MultiIndex mu : mus) {
            if (mu.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
              Scalar x = frame[r].xi.component(j).coefficient(mu);
              if (x.is_zero()) continue;
              MultiIndex shifted = b + MultiIndex::unit(j);
              if (leq(mu, shifted)) v -= (x * Scalar(b[j] - mu[j] + 1)) * out.coefficient(a, shifted - mu);
            }
          }
          for (int j = 0; j < n; ++j) {
            if (a[j] < 1) continue;
            for (MultiIndex mu : mus) {
              Scalar x = frame[r].xi.component(j).coefficient(mu);
              if (x.is_zero()) continue;
              for_each_index(n, mu.total(), [&](MultiIndex g) {
                if (g.is_zero() || !leq(g, mu) || !leq(mu - g, b)) return;
                if (options.gamma == GammaRange::TargetBound && !leq(g, a)) return;
                MultiIndex src = a + g - MultiIndex::unit(j);
                if (src.total() > max_differential_order) return;
                long long binom = factorial_of(src) / (factorial_of(g) * factorial_of(src - g));
                long long falling = factorial_of(mu) / factorial_of(mu - g);
                v += (x * Scalar(binom * falling)) * out.coefficient(src, b - (mu - g));
              });
            }
          }
        }
        for (int j = 0; j < n; ++j) {
          MultiIndex target = b + MultiIndex::unit(j);
          if (target.first_nonzero() != j) continue;
          XPoly y;
          for (int r = 0; r < n; ++r) y += inv[j][r] * rhs[r];
          out.add(a, target, Scalar(Rational(1, b[j] + 1)) * y);
        }
      });
    }
  }
  return out;
}

}  // namespace forge::jets
