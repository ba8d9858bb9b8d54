#include <benchmark/benchmark.h>

#include <random>

#include "diffeocalc/cohomology.hpp"
#include "diffeocalc/connection.hpp"
#include "diffeocalc/derham.hpp"
#include "diffeocalc/expr_parser.hpp"

using namespace diffeocalc;

namespace {

GluedSpace wedge_two_planes() {
  std::vector<EuclideanPiece> pieces{{"X1", 2, {"x1", "y1"}}, {"X2", 2, {"x2", "y2"}}};
  WedgePoint w{"w0",
               {{"X1", {Rational(0), Rational(0)}}, {"X2", {Rational(0), Rational(0)}}}};
  return GluedSpace(std::move(pieces), {w});
}

ScalarExpr dense_poly(int degree) {
  ScalarExpr acc;
  const ScalarExpr x = ScalarExpr::variable("x");
  const ScalarExpr y = ScalarExpr::variable("y");
  for (int i = 0; i <= degree; ++i)
    for (int j = 0; i + j <= degree; ++j)
      acc += ScalarExpr(Rational(i + 1, j + 1)) * x.pow(static_cast<unsigned>(i)) *
             y.pow(static_cast<unsigned>(j));
  return acc;
}

void BM_scalar_product(benchmark::State& state) {
  const ScalarExpr a = dense_poly(static_cast<int>(state.range(0)));
  const ScalarExpr b = dense_poly(static_cast<int>(state.range(0))) +
                       ScalarExpr::exp_of(parse_expr("x*y"));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_scalar_product)->Arg(4)->Arg(8);

void BM_differentiate(benchmark::State& state) {
  const ScalarExpr e =
      dense_poly(static_cast<int>(state.range(0))) * ScalarExpr::exp_of(parse_expr("x*y"));
  for (auto _ : state) benchmark::DoNotOptimize(e.differentiate("x"));
}
BENCHMARK(BM_differentiate)->Arg(4)->Arg(8);

void BM_christoffel_exp_metric(benchmark::State& state) {
  const GluedSpace s({{"P", 2, {"x", "y"}}}, {});
  FibreBilinearForm g(2);
  g.set(0, 0, ScalarExpr(1));
  g.set(1, 1, parse_expr("exp(x*y)"));
  const PieceCotangentMetric m{"P", g};
  for (auto _ : state) benchmark::DoNotOptimize(christoffel(s, m));
}
BENCHMARK(BM_christoffel_exp_metric);

void BM_cohomology_rank(benchmark::State& state) {
  const GluedSpace s = wedge_two_planes();
  const unsigned D = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cohomology_dims(s, 1, D).dim_H);
}
BENCHMARK(BM_cohomology_rank)->Arg(3)->Arg(4)->Arg(5);

void BM_koszul_route(benchmark::State& state) {
  const GluedSpace s = wedge_two_planes();
  for (auto _ : state) benchmark::DoNotOptimize(cohomology_dim_via_koszul(s, 1, 4));
}
BENCHMARK(BM_koszul_route);

void BM_derham_apply(benchmark::State& state) {
  const GluedSpace s = wedge_two_planes();
  std::vector<PieceCotangentMetric> metrics;
  std::vector<ChristoffelData> gammas;
  for (const EuclideanPiece& p : s.pieces()) {
    metrics.push_back(PieceCotangentMetric::standard(p));
    gammas.push_back(christoffel(s, metrics.back()));
  }
  const GluedPseudoMetric g = induced_metric(s, metrics);
  const GluedConnection conn = glued_connection(s, gammas);

  GluedSection sec;
  for (const EuclideanPiece& p : s.pieces()) {
    ExtElement v(p.dim);
    v.add_term(MultiIndex(), parse_expr(p.coords[0] + "^3"));
    v.add_term(MultiIndex({0}), parse_expr(p.coords[0] + "*" + p.coords[1]));
    v.add_term(MultiIndex({0, 1}), parse_expr(p.coords[1] + "^2"));
    sec.components[p.id] = v;
  }
  for (auto _ : state) benchmark::DoNotOptimize(derham_apply(s, sec, g, conn));
}
BENCHMARK(BM_derham_apply);

}  // namespace

BENCHMARK_MAIN();
