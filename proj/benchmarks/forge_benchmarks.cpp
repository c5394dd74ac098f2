#include <benchmark/benchmark.h>

#include <random>

#include "forge/gluing.hpp"
#include "forge/hc.hpp"
#include "forge/induction.hpp"
#include "forge/sampling.hpp"

using namespace forge;

namespace {

const char* kGroups[] = {"Z2", "Z3", "S2", "S3"};

rca::AlgebraPtr t_one(const std::string& name) {
  auto g = groups::resolve_group(name);
  return rca::Algebra::create(g, rca::Params::t_one(groups::find_reflections(g).class_count));
}

void BM_PbwProduct(benchmark::State& state) {
  auto alg = rca::Algebra::create_symbolic(groups::resolve_group(kGroups[state.range(0)]));
  std::mt19937 rng(1);
  std::vector<rca::Element> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(sampling::random_element(alg, rng, 3));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xs[i % 64] * xs[(i + 1) % 64]);
    ++i;
  }
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_PbwProduct)->DenseRange(0, 3);

void BM_DunklTheta(benchmark::State& state) {
  auto alg = t_one(kGroups[state.range(0)]);
  dunkl::DunklEmbedding emb(alg);
  std::mt19937 rng(2);
  std::vector<rca::Element> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(sampling::random_element(alg, rng, 2));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(emb.theta(xs[i++ % 64]));
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_DunklTheta)->DenseRange(0, 3);

void BM_DunklCommutator(benchmark::State& state) {
  dunkl::DunklEmbedding emb(t_one("S3"));
  for (auto _ : state) benchmark::DoNotOptimize(dunkl::commutator(emb.dunkl(0), emb.dunkl(1)));
}
BENCHMARK(BM_DunklCommutator);

void BM_TaylorOfOperator(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  auto d = jets::JetDiffOp::parse(2, 40, "x1^2*d2 + x2*d1^2 - 3*x1*x2");
  auto chart = jets::Chart::at({Scalar(1), Scalar(-1)}, {XPoly::var(0) + XPoly::var(0) * XPoly::var(1), XPoly::var(1) - XPoly::var(0).pow(2)});
  for (auto _ : state) benchmark::DoNotOptimize(jets::taylor_of_operator(d, chart, order));
}
BENCHMARK(BM_TaylorOfOperator)->DenseRange(2, 5);

void BM_Factorization(benchmark::State& state) {
  auto alg = t_one("Z2_GL3");
  dunkl::DunklEmbedding emb(alg);
  auto basis = groups::centralizer_lie_basis(alg->group());
  std::mt19937 rng(3);
  auto e = sampling::random_semidirect(basis, rng, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(hc::verify_factorization(emb, e));
}
BENCHMARK(BM_Factorization);

void BM_CheckGluing(benchmark::State& state) {
  auto model = gluing::SliceModel::create(2, 2);
  auto d = model.parse("y2^3*u2^2 + c1*u1*u2");
  for (auto _ : state) benchmark::DoNotOptimize(gluing::check_gluing(model, d, 4, 4));
}
BENCHMARK(BM_CheckGluing);

void BM_PuigInduce(benchmark::State& state) {
  auto cs = induction::CosetSystem::from_names("S3", "S2");
  auto a = induction::smash_product(induction::with_determinant_action(induction::parse_algebra("C[x]/(x^3)"), cs.h_ptr()));
  for (auto _ : state) benchmark::DoNotOptimize(induction::puig_induce(a, cs));
}
BENCHMARK(BM_PuigInduce);

}  // namespace
BENCHMARK_MAIN();
