#include "forge/groups.hpp"

#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace forge::groups {

int Group::find(const Matrix& m) const {
  auto it = lookup.find(m.hash());
  if (it == lookup.end()) return -1;
  for (int idx : it->second)
    if (elements[idx] == m) return idx;
  return -1;
}

std::size_t default_group_cap() {
  if (const char* env = std::getenv("FORGE_MAX_GROUP")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 10000;
}

namespace {

void finish_group(Group& g) {
  int n = g.size();
  g.table.assign(n, std::vector<int>(n, -1));
  g.inverse_of.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int p = g.find(g.elements[a] * g.elements[b]);
      if (p < 0) throw std::logic_error("group enumeration is not closed");
      g.table[a][b] = p;
      if (p == 0) g.inverse_of[a] = b;
    }
  }
  g.class_of.assign(n, -1);
  g.class_count = 0;
  for (int x = 0; x < n; ++x) {
    if (g.class_of[x] >= 0) continue;
    for (int h = 0; h < n; ++h) g.class_of[g.mul(g.mul(h, x), g.inv(h))] = g.class_count;
    ++g.class_count;
  }
}

}  // namespace

Group enumerate_group(const std::vector<Matrix>& generators, int cyclotomic_order, std::size_t cap,
                      std::string name) {
  if (generators.empty()) throw std::invalid_argument("group needs at least one generator");
  Group g;
  g.name = std::move(name);
  g.cyclotomic_order = cyclotomic_order;
  g.dim = generators[0].rows();
  for (const auto& m : generators) {
    if (m.rows() != g.dim || m.cols() != g.dim) throw std::invalid_argument("generator has wrong shape");
    if (m.rank() != g.dim) throw std::invalid_argument("generator is not invertible");
  }
  auto add = [&](const Matrix& m) {
    if (g.find(m) >= 0) return false;
    g.lookup[m.hash()].push_back(g.size());
    g.elements.push_back(m);
    return true;
  };
  add(Matrix::identity(g.dim));
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (const auto& gen : generators) {
      if (add(g.elements[cur] * gen)) {
        if (g.elements.size() > cap)
          throw std::runtime_error("group enumeration exceeded cap of " + std::to_string(cap) +
                                   " elements (group possibly infinite)");
        queue.push_back(g.size() - 1);
      }
    }
  }
  for (const auto& m : generators) g.generators.push_back(g.find(m));
  finish_group(g);
  return g;
}

Subgroup generated_subgroup(const Group& g, const std::vector<int>& generator_indices) {
  std::vector<Matrix> gens;
  for (int i : generator_indices) gens.push_back(g.matrix(i));
  if (gens.empty()) gens.push_back(g.matrix(0));
  Subgroup sub{enumerate_group(gens, g.cyclotomic_order, static_cast<std::size_t>(g.size()), g.name + "-sub"), {}};
  for (const auto& m : sub.group.elements) sub.embedding.push_back(g.find(m));
  return sub;
}

std::pair<CycVector, CycVector> normalize_root_coroot(const CycVector& root_raw, const CycVector& coroot_raw) {
  std::size_t lead = 0;
  while (lead < root_raw.size() && root_raw[lead].is_zero()) ++lead;
  if (lead == root_raw.size()) throw std::logic_error("zero root vector");
  CycVector root = root_raw;
  CycNum inv = root_raw[lead].inverse();
  for (auto& x : root) x = x * inv;
  CycNum pairing = dot(coroot_raw, root);
  if (pairing.is_zero()) throw std::logic_error("root and coroot pair to zero");
  CycVector coroot = coroot_raw;
  CycNum scale = CycNum(2) / pairing;
  for (auto& x : coroot) x = x * scale;
  return {root, coroot};
}

std::optional<CycNum> row_eigenvalue(const Matrix& a, const CycVector& alpha) {
  CycVector v = a.apply_row(alpha);
  std::size_t i = 0;
  while (i < alpha.size() && alpha[i].is_zero()) ++i;
  if (i == alpha.size()) return std::nullopt;
  CycNum mu = v[i] / alpha[i];
  for (std::size_t k = 0; k < alpha.size(); ++k)
    if (v[k] != mu * alpha[k]) return std::nullopt;
  return mu;
}

namespace {

std::pair<CycVector, CycNum> normalize_form(const CycVector& f) {
  std::size_t i = 0;
  while (i < f.size() && f[i].is_zero()) ++i;
  if (i == f.size()) throw std::logic_error("zero linear form");
  CycNum k = f[i];
  CycNum inv = k.inverse();
  CycVector out = f;
  for (auto& x : out) x = x * inv;
  return {out, k};
}

}  // namespace

ReflectionSystem find_reflections(const Group& g) {
  ReflectionSystem rs;
  rs.reflection_index.assign(g.size(), -1);
  Matrix id = Matrix::identity(g.dim);
  std::map<int, int> class_ids;  // group conjugacy class -> reflection class
  for (int e = 1; e < g.size(); ++e) {
    Matrix d = id - g.matrix(e);
    if (d.rank() != 1) continue;
    CycVector root_raw, coroot_raw;
    for (int c = 0; c < g.dim && root_raw.empty(); ++c) {
      CycVector col = d.col(c);
      for (const auto& x : col)
        if (!x.is_zero()) {
          root_raw = col;
          break;
        }
    }
    for (int r = 0; r < g.dim && coroot_raw.empty(); ++r) {
      CycVector row = d.row(r);
      for (const auto& x : row)
        if (!x.is_zero()) {
          coroot_raw = row;
          break;
        }
    }
    ReflectionData rd;
    rd.element = e;
    std::tie(rd.root, rd.coroot) = normalize_root_coroot(root_raw, coroot_raw);
    CycVector image = g.matrix(e).apply(rd.root);
    std::size_t lead = 0;
    while (rd.root[lead].is_zero()) ++lead;
    rd.lambda_vee = image[lead] / rd.root[lead];
    rd.lambda = rd.lambda_vee.inverse();
    auto mu = row_eigenvalue(g.inverse_matrix(e), rd.coroot);
    if (!mu || *mu != rd.lambda) throw std::logic_error("reflection eigen-data inconsistent");
    auto [form, kappa] = normalize_form(rd.coroot);
    rd.kappa = kappa;
    int h = -1;
    for (std::size_t k = 0; k < rs.hyperplanes.size(); ++k)
      if (rs.hyperplanes[k].form == form) h = static_cast<int>(k);
    if (h < 0) {
      h = static_cast<int>(rs.hyperplanes.size());
      rs.hyperplanes.push_back({form});
    }
    rd.hyperplane = h;
    auto [it, fresh] = class_ids.emplace(g.class_of[e], static_cast<int>(class_ids.size()));
    (void)fresh;
    rd.class_id = it->second;
    rs.reflection_index[e] = static_cast<int>(rs.reflections.size());
    rs.reflections.push_back(std::move(rd));
  }
  rs.class_count = static_cast<int>(class_ids.size());
  rs.hyperplane_action.assign(g.size(), {});
  for (int e = 0; e < g.size(); ++e) {
    for (const auto& hp : rs.hyperplanes) {
      auto [form, k] = normalize_form(g.inverse_matrix(e).apply_row(hp.form));
      int target = -1;
      for (std::size_t j = 0; j < rs.hyperplanes.size(); ++j)
        if (rs.hyperplanes[j].form == form) target = static_cast<int>(j);
      if (target < 0) throw std::logic_error("hyperplane arrangement not group-stable");
      rs.hyperplane_action[e].emplace_back(target, k);
    }
  }
  return rs;
}

std::vector<Matrix> centralizer_lie_basis(const Group& h) {
  int l = h.dim;
  std::vector<int> gens = h.generators;
  if (gens.empty()) gens.push_back(0);
  Matrix system(static_cast<int>(gens.size()) * l * l, l * l);
  int row = 0;
  for (int gi : gens) {
    const Matrix& m = h.matrix(gi);
    for (int r = 0; r < l; ++r) {
      for (int c = 0; c < l; ++c, ++row) {
        // (A M - M A)(r, c)
        for (int k = 0; k < l; ++k) {
          system(row, r * l + k) += m(k, c);
          system(row, k * l + c) -= m(r, k);
        }
      }
    }
  }
  std::vector<Matrix> basis;
  for (const auto& v : system.nullspace()) {
    Matrix a(l, l);
    for (int i = 0; i < l * l; ++i) a(i / l, i % l) = v[i];
    basis.push_back(std::move(a));
  }
  return basis;
}

namespace {

CycNum json_entry(const nlohmann::json& j, int order) {
  if (j.is_string()) return CycNum::parse(j.get<std::string>(), order);
  if (j.is_number_integer()) return CycNum(j.get<long long>());
  throw std::invalid_argument("matrix entry must be a string or integer");
}

}  // namespace

Group parse_group_config(const std::string& json_text, const std::string& name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid group config: ") + e.what());
  }
  if (!j.is_object() || !j.contains("generators") || !j.contains("dim"))
    throw std::invalid_argument("group config needs 'dim' and 'generators'");
  int order = j.value("cyclotomic_order", 1);
  int dim = j.at("dim").get<int>();
  if (order <= 0 || dim <= 0) throw std::invalid_argument("group config: order and dim must be positive");
  std::vector<Matrix> gens;
  for (const auto& gj : j.at("generators")) {
    if (!gj.is_array() || static_cast<int>(gj.size()) != dim)
      throw std::invalid_argument("generator must have 'dim' rows");
    std::vector<CycVector> rows;
    for (const auto& rj : gj) {
      if (!rj.is_array() || static_cast<int>(rj.size()) != dim)
        throw std::invalid_argument("generator rows must have 'dim' entries");
      CycVector row;
      for (const auto& e : rj) row.push_back(json_entry(e, order));
      rows.push_back(std::move(row));
    }
    gens.push_back(Matrix::from_rows(rows));
  }
  std::string nm = j.value("name", name);
  return enumerate_group(gens, order, default_group_cap(), nm);
}

Group load_group_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open group config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string stem = path;
  auto slash = stem.find_last_of('/');
  if (slash != std::string::npos) stem = stem.substr(slash + 1);
  auto dot = stem.find_last_of('.');
  if (dot != std::string::npos) stem = stem.substr(0, dot);
  return parse_group_config(ss.str(), stem);
}

std::string group_config_json(const Group& g) {
  nlohmann::ordered_json j;
  j["name"] = g.name;
  j["cyclotomic_order"] = g.cyclotomic_order;
  j["dim"] = g.dim;
  j["generators"] = nlohmann::ordered_json::array();
  for (int gi : g.generators) {
    nlohmann::ordered_json m = nlohmann::ordered_json::array();
    for (int r = 0; r < g.dim; ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int c = 0; c < g.dim; ++c) row.push_back(g.matrix(gi)(r, c).to_string());
      m.push_back(row);
    }
    j["generators"].push_back(m);
  }
  return j.dump(2);
}

namespace {

struct BuiltinSpec {
  const char* name;
  int order;
  std::vector<std::vector<std::vector<const char*>>> gens;
};

const std::vector<BuiltinSpec>& builtin_specs() {
  static const std::vector<BuiltinSpec> specs = {
      {"Z2", 2, {{{"-1"}}}},
      {"Z3", 3, {{{"z"}}}},
      {"Z4", 4, {{{"z"}}}},
      {"S2", 1, {{{"0", "1"}, {"1", "0"}}}},
      {"S3", 1, {{{"0", "1", "0"}, {"1", "0", "0"}, {"0", "0", "1"}}, {{"1", "0", "0"}, {"0", "0", "1"}, {"0", "1", "0"}}}},
      {"Z2_GL2", 2, {{{"1", "0"}, {"0", "-1"}}}},
      {"Z2_GL3", 2, {{{"-1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}}},
      {"PM_GL2", 2, {{{"-1", "0"}, {"0", "-1"}}}},
  };
  return specs;
}

}  // namespace

std::vector<std::string> builtin_group_names() {
  std::vector<std::string> names;
  for (const auto& s : builtin_specs()) names.emplace_back(s.name);
  return names;
}

std::optional<Group> builtin_group(const std::string& name) {
  for (const auto& s : builtin_specs()) {
    if (name != s.name) continue;
    std::vector<Matrix> gens;
    for (const auto& gm : s.gens) {
      std::vector<CycVector> rows;
      for (const auto& r : gm) {
        CycVector row;
        for (const char* e : r) row.push_back(CycNum::parse(e, s.order));
        rows.push_back(std::move(row));
      }
      gens.push_back(Matrix::from_rows(rows));
    }
    return enumerate_group(gens, s.order, default_group_cap(), s.name);
  }
  return std::nullopt;
}

Group resolve_group(const std::string& spec) {
  if (auto g = builtin_group(spec)) return *g;
  return load_group_config(spec);
}

}  // namespace forge::groups
