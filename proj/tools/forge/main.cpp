#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "forge/dunkl.hpp"
#include "forge/flat.hpp"
#include "forge/groups.hpp"
#include "forge/sampling.hpp"
#include "forge/suites.hpp"
#include "report.hpp"

namespace {

using namespace forge;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

// Bad user input; reported with exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string vector_string(const CycVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

groups::Group load_group(const std::string& spec) {
  try {
    return groups::resolve_group(spec);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

rca::AlgebraPtr algebra_for(const groups::Group& g, bool t_one) {
  int classes = groups::find_reflections(g).class_count;
  return rca::Algebra::create(g, t_one ? rca::Params::t_one(classes) : rca::Params::symbolic(classes));
}

struct Common {
  std::vector<std::string> groups;
  std::optional<int> order;
  std::optional<int> samples;
  unsigned seed = 0;
  std::string json;
  bool timings = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--group", c.groups, "Builtin group name or JSON config path (repeatable)");
  cmd->add_option("--order", c.order, "Degree or truncation order K");
  cmd->add_option("--samples", c.samples, "Number of random samples");
  cmd->add_option("--seed", c.seed, "Seed for randomized checks")->capture_default_str();
  cmd->add_option("--json", c.json, "Write the JSON report to this path");
  cmd->add_flag("--timings", c.timings, "Include elapsed times in reports");
}

int emit(const std::vector<suites::SuiteReport>& reports, const Common& c) {
  auto j = cli::report_json(reports, c.seed, c.timings);
  if (c.json.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(c.json);
    if (!out) throw ConfigError("cannot write " + c.json);
    out << j.dump(2) << "\n";
    std::cout << cli::report_text(reports, c.timings);
  }
  return cli::all_ok(reports) ? kExitPass : kExitFail;
}

suites::Options options_from(const Common& c) {
  suites::Options o;
  for (const auto& g : c.groups) load_group(g);
  o.groups = c.groups;
  o.seed = c.seed;
  o.order = c.order;
  o.samples = c.samples;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in rational Cherednik algebras and their localizations"};
  app.set_version_flag("--version", std::string(suites::kVersion));
  app.require_subcommand(1);
  std::function<int()> action;

  // group
  auto* group = app.add_subcommand("group", "Reflection group configs")->require_subcommand(1);
  auto* group_list = group->add_subcommand("list", "List builtin groups");
  group_list->callback([&] {
    action = [] {
      for (const auto& name : groups::builtin_group_names()) {
        auto g = *groups::builtin_group(name);
        std::printf("%-8s dim %d, order %d, %d reflection classes\n", name.c_str(), g.dim, g.size(),
                    groups::find_reflections(g).class_count);
      }
      return kExitPass;
    };
  });
  std::string def_name, def_out;
  int def_order = 1;
  std::vector<std::string> def_gens;
  auto* group_define = group->add_subcommand("define", "Enumerate a group from generator matrices and print its config");
  group_define->add_option("--name", def_name, "Group name")->required();
  group_define->add_option("--cyclotomic-order", def_order, "Entries lie in Q(zeta_N)")->capture_default_str();
  group_define->add_option("--gen", def_gens, "Generator as a JSON matrix, entries like \"z^2\" or \"-1/2\"")
      ->required()
      ->delimiter('\x01')  // keep JSON brackets and commas intact
      ->allow_extra_args(false);
  group_define->add_option("--out", def_out, "Write the config here instead of stdout");
  group_define->callback([&] {
    action = [&] {
      nlohmann::ordered_json j;
      j["name"] = def_name;
      j["cyclotomic_order"] = def_order;
      j["generators"] = nlohmann::ordered_json::array();
      int dim = -1;
      for (const auto& text : def_gens) {
        auto m = nlohmann::ordered_json::parse(text, nullptr, false);
        if (m.is_discarded() || !m.is_array()) throw ConfigError("generator is not a JSON matrix: " + text);
        if (dim >= 0 && static_cast<int>(m.size()) != dim) throw ConfigError("generators differ in size");
        dim = static_cast<int>(m.size());
        j["generators"].push_back(m);
      }
      j["dim"] = dim;
      groups::Group g;
      try {
        g = groups::parse_group_config(j.dump(), def_name);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
      std::string text = groups::group_config_json(g) + "\n";
      if (def_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream(def_out) << text;
        std::printf("%s: order %d\n", def_out.c_str(), g.size());
      }
      return kExitPass;
    };
  });
  std::string refl_group;
  auto* group_refl = group->add_subcommand("reflections", "Reflections with roots, coroots and eigenvalues");
  group_refl->add_option("--group", refl_group, "Builtin group name or JSON config path")->required();
  group_refl->callback([&] {
    action = [&] {
      auto g = load_group(refl_group);
      auto rs = groups::find_reflections(g);
      auto alg = algebra_for(g, false);
      std::printf("%s: order %d, %zu reflections, %d classes\n", g.name.c_str(), g.size(), rs.reflections.size(),
                  rs.class_count);
      for (const auto& r : rs.reflections)
        std::printf("%s  c%d  lambda %s  root %s  coroot %s\n", alg->group_label(r.element).c_str(), r.class_id + 1,
                    r.lambda.to_string().c_str(), vector_string(r.root).c_str(), vector_string(r.coroot).c_str());
      return kExitPass;
    };
  });

  // rca
  auto* rca_cmd = app.add_subcommand("rca", "Rational Cherednik algebra arithmetic")->require_subcommand(1);
  std::string mul_group, mul_a, mul_b;
  bool mul_t_one = false;
  auto* rca_mul = rca_cmd->add_subcommand("mul", "Normal form of a product");
  rca_mul->add_option("--group", mul_group, "Builtin group name or JSON config path")->required();
  rca_mul->add_option("--a", mul_a, "Left factor, e.g. \"u1\"")->required();
  rca_mul->add_option("--b", mul_b, "Right factor, e.g. \"y1\"")->required();
  rca_mul->add_flag("--t-one", mul_t_one, "Set t = 1");
  rca_mul->callback([&] {
    action = [&] {
      auto alg = algebra_for(load_group(mul_group), mul_t_one);
      rca::Element a, b;
      try {
        a = rca::Element::parse(alg, mul_a);
        b = rca::Element::parse(alg, mul_b);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      std::cout << (a * b).to_string() << "\n";
      return kExitPass;
    };
  });

  // dunkl
  auto* dunkl_cmd = app.add_subcommand("dunkl", "Dunkl operators")->require_subcommand(1);
  std::string dk_group, dk_element, dk_function;
  auto* dunkl_show = dunkl_cmd->add_subcommand("show", "Print D_1..D_n");
  dunkl_show->add_option("--group", dk_group, "Builtin group name or JSON config path")->required();
  dunkl_show->callback([&] {
    action = [&] {
      dunkl::DunklEmbedding emb(algebra_for(load_group(dk_group), true));
      for (int i = 0; i < emb.algebra()->dim(); ++i) std::printf("D%d = %s\n", i + 1, emb.dunkl(i).to_string().c_str());
      return kExitPass;
    };
  });
  auto* dunkl_apply = dunkl_cmd->add_subcommand("apply", "Image of an element under the Dunkl embedding");
  dunkl_apply->add_option("--group", dk_group, "Builtin group name or JSON config path")->required();
  dunkl_apply->add_option("--element", dk_element, "Element of H_{1,c}, e.g. \"u1*y1\"")->required();
  dunkl_apply->add_option("--to", dk_function, "Apply the operator to this function of x1..xn");
  dunkl_apply->callback([&] {
    action = [&] {
      dunkl::DunklEmbedding emb(algebra_for(load_group(dk_group), true));
      dunkl::LocalizedOp op;
      dunkl::LocalizedCoeff f;
      try {
        op = emb.theta(rca::Element::parse(emb.algebra(), dk_element));
        if (!dk_function.empty()) f = dunkl::LocalizedCoeff::parse(emb.localization(), dk_function);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      std::cout << (dk_function.empty() ? op.to_string() : op.apply(f).to_string()) << "\n";
      return kExitPass;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Run verification suites")->require_subcommand(1);
  Common common;
  int codim = 0, base_dim = 2, slice_n = 2;
  std::string orders;
  std::string ind_g, ind_h, ind_a = "C[x]/(x^3)";
  auto simple = [&](const std::string& name, const std::string& help) {
    auto* cmd = verify->add_subcommand(name, help);
    add_common(cmd, common);
    cmd->callback([&, name] { action = [&, name] { return emit(suites::run(name, options_from(common)), common); }; });
    return cmd;
  };
  simple("pbw", "Associativity of the PBW normal form");
  simple("dunkl-commute", "Commutativity of Dunkl operators");
  simple("dunkl-embed", "Multiplicativity of the Dunkl embedding");
  simple("jets", "Taylor expansion, flat-section recursion and jet dimensions");

  auto* verify_hc = verify->add_subcommand("hc", "phi_c, the correction-term lemma and the factorization of sigma");
  add_common(verify_hc, common);
  verify_hc->add_option("--codim", codim, "Dimension l of the representation of H, checked against the group");
  verify_hc->add_option("--base-dim", base_dim, "Dimension of the base for semidirect elements")->capture_default_str();
  verify_hc->callback([&] {
    action = [&] {
      auto o = options_from(common);
      if (codim > 0)
        for (const auto& g : o.groups)
          if (load_group(g).dim != codim) throw ConfigError(g + " does not act on C^" + std::to_string(codim));
      if (base_dim < 1) throw ConfigError("--base-dim must be positive");
      o.base_dim = base_dim;
      return emit(suites::hc(o), common);
    };
  });

  auto* verify_gluing = verify->add_subcommand("gluing", "Slice model of the gluing conditions");
  add_common(verify_gluing, common);
  verify_gluing->add_option("--n", slice_n, "Dimension of the slice C^{n-1} x C")->capture_default_str();
  verify_gluing->add_option("--orders", orders, "Truncation orders kx,ky");
  verify_gluing->callback([&] {
    action = [&] {
      auto o = options_from(common);
      o.groups.clear();
      o.slice_dim = slice_n;
      if (common.groups.size() > 1) throw ConfigError("gluing takes one cyclic group");
      if (!common.groups.empty()) {
        auto g = load_group(common.groups.front());
        if (g.dim != 1) throw ConfigError("gluing needs a cyclic group acting on C");
        o.slice_order = g.size();
      }
      if (!orders.empty()) {
        auto parts = split(orders, ',');
        if (parts.size() != 2) throw ConfigError("--orders takes kx,ky");
        try {
          o.kx = std::stoi(parts[0]);
          o.ky = std::stoi(parts[1]);
        } catch (const std::exception&) {
          throw ConfigError("--orders takes two integers");
        }
      }
      try {
        return emit(suites::gluing(o), common);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    };
  });

  auto* verify_ind = verify->add_subcommand("induction", "Turull and Puig induction");
  add_common(verify_ind, common);
  verify_ind->add_option("--G", ind_g, "Group G");
  verify_ind->add_option("--H", ind_h, "Subgroup H, matched by order and element orders");
  verify_ind->add_option("--A", ind_a, "\"C\" or \"C[x]/(x^n)\"")->capture_default_str();
  verify_ind->callback([&] {
    action = [&] {
      auto o = options_from(common);
      if (ind_g.empty() != ind_h.empty()) throw ConfigError("--G and --H go together");
      if (!ind_g.empty()) o.pairs = {{ind_g, ind_h}};
      o.algebra = ind_a;
      try {
        return emit(suites::induction(o), common);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    };
  });

  auto* verify_all = verify->add_subcommand("all", "Every suite with its defaults");
  verify_all->add_option("--seed", common.seed, "Seed for randomized checks")->capture_default_str();
  verify_all->add_option("--json", common.json, "Write the JSON report to this path");
  verify_all->add_flag("--timings", common.timings, "Include elapsed times in reports");
  verify_all->callback([&] {
    action = [&] {
      suites::Options o;
      o.seed = common.seed;
      return emit(suites::run_all(o), common);
    };
  });

  // jets
  auto* jets_cmd = app.add_subcommand("jets", "Jet calculus")->require_subcommand(1);
  int fc_dim = 1, fc_order = 3;
  std::string fc_op, fc_paths = "auto", fc_base, fc_psi;
  unsigned fc_seed = 0;
  auto* flat_check = jets_cmd->add_subcommand("flat-check", "Flatness of the Taylor section along paths of charts");
  flat_check->add_option("--dim", fc_dim, "Dimension m")->capture_default_str();
  flat_check->add_option("--order", fc_order, "Truncation order K")->capture_default_str();
  flat_check->add_option("--op", fc_op, "Operator such as \"x1^2*d1\"")->required();
  flat_check->add_option("--paths", fc_paths, "\"auto\" or a number of seeded random paths")->capture_default_str();
  flat_check->add_option("--basepoint", fc_base, "Comma-separated basepoint, default 0");
  flat_check->add_option("--psi", fc_psi, "Semicolon-separated chart components, default x_i");
  flat_check->add_option("--seed", fc_seed, "Seed for random paths")->capture_default_str();
  flat_check->callback([&] {
    action = [&] {
      if (fc_dim < 1 || fc_dim > 4 || fc_order < 0) throw ConfigError("--dim must be in 1..4 and --order nonnegative");
      jets::JetDiffOp d;
      std::vector<Scalar> base(fc_dim, Scalar(0));
      std::vector<XPoly> psi;
      try {
        d = jets::JetDiffOp::parse(fc_dim, 40, fc_op);
        if (!fc_base.empty()) {
          auto parts = split(fc_base, ',');
          if (static_cast<int>(parts.size()) != fc_dim) throw ConfigError("--basepoint needs " + std::to_string(fc_dim) + " entries");
          for (int i = 0; i < fc_dim; ++i) base[i] = Scalar::parse(parts[i]);
        }
        if (fc_psi.empty()) {
          for (int i = 0; i < fc_dim; ++i) psi.push_back(XPoly::var(i));
        } else {
          for (const auto& p : split(fc_psi, ';')) psi.push_back(jets::JetDiffOp::parse(fc_dim, 40, p).coefficient_poly(MultiIndex()));
          if (static_cast<int>(psi.size()) != fc_dim) throw ConfigError("--psi needs " + std::to_string(fc_dim) + " components");
        }
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      std::vector<jets::Chart> paths;
      if (fc_paths == "auto") {
        paths = jets::auto_paths(base, psi);
      } else {
        int count = 0;
        try {
          count = std::stoi(fc_paths);
        } catch (const std::exception&) {
          throw ConfigError("--paths takes \"auto\" or a count");
        }
        std::mt19937 rng(fc_seed);
        for (int i = 0; i < count; ++i) {
          jets::Chart c = jets::Chart::at(base, psi);
          for (int j = 0; j < fc_dim; ++j) c.map[j] += XPoly(Scalar::param(kVarTau)) * sampling::random_poly(rng, fc_dim, 2, 0, 2);
          paths.push_back(std::move(c));
        }
      }
      int failures = 0;
      for (std::size_t i = 0; i < paths.size(); ++i) {
        jets::ResidualReport r;
        try {
          r = jets::flatness_check(d, paths[i], fc_order);
        } catch (const std::domain_error& e) {
          throw ConfigError(e.what());
        }
        std::printf("%s path %zu", r.ok() ? "PASS" : "FAIL", i + 1);
        for (const auto& m : paths[i].map) std::printf("  %s", m.to_string(fc_dim).c_str());
        std::printf("\n");
        if (!r.ok()) {
          ++failures;
          std::printf("  residual %s\n", r.residual.to_string().c_str());
        }
      }
      return failures ? kExitFail : kExitPass;
    };
  });

  // report
  std::string report_path;
  auto* report = app.add_subcommand("report", "Summarize a JSON report");
  report->add_option("path", report_path, "Report written by verify --json")->required();
  report->callback([&] {
    action = [&] {
      std::ifstream in(report_path);
      if (!in) throw ConfigError("cannot open " + report_path);
      auto j = nlohmann::json::parse(in, nullptr, false);
      if (j.is_discarded() || !j.contains("suites")) throw ConfigError(report_path + " is not a forge report");
      bool ok = true;
      for (const auto& s : j["suites"])
        for (const auto& c : s["checks"]) {
          bool pass = c.value("status", "") == "pass";
          ok = ok && pass;
          std::printf("%s %s %s %s\n", pass ? "PASS" : "FAIL", s.value("suite", "").c_str(), s.value("group", "").c_str(),
                      c.value("name", "").c_str());
        }
      return ok ? kExitPass : kExitFail;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  try {
    return action();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "forge: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "forge: %s\n", e.what());
    return kExitFail;
  }
}
