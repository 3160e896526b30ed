#include <benchmark/benchmark.h>

#include "squeeze/convex_pipeline.hpp"
#include "squeeze/domain.hpp"
#include "squeeze/frame.hpp"
#include "squeeze/image_geometry.hpp"
#include "squeeze/qmc.hpp"
#include "squeeze/strict_pipeline.hpp"

namespace {

using namespace squeeze;

ConvexDomain bench_ellipsoid() {
  CMat q = CMat::Zero(2, 2);
  q(0, 0) = cplx(1.0, 0.0);
  q(0, 1) = cplx(0.2, 0.1);
  q(1, 0) = std::conj(q(0, 1));
  q(1, 1) = cplx(0.5, 0.0);
  return ConvexDomain(HermitianEllipsoid{CVec::Zero(2), q}, CVec::Zero(2));
}

CVec bench_point() {
  CVec q(2);
  q << cplx(0.31, -0.12), cplx(-0.05, 0.27);
  return q;
}

void BM_RayExit(benchmark::State& state) {
  const auto dom = bench_ellipsoid();
  const CVec q = bench_point();
  const auto dirs = qmc::sphere_directions(4, 256, 7, 0);
  std::size_t i = 0;
  for (auto _ : state) {
    CVec w(2);
    const RVec& d = dirs[i++ % dirs.size()];
    w << cplx(d[0], d[1]), cplx(d[2], d[3]);
    benchmark::DoNotOptimize(dom.ray_exit(q, w));
  }
}
BENCHMARK(BM_RayExit);

void BM_FrameBuild(benchmark::State& state) {
  const auto dom = bench_ellipsoid();
  const CVec q = bench_point();
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_frame(dom, q, 1));
  }
}
BENCHMARK(BM_FrameBuild);

void BM_ChainApply(benchmark::State& state) {
  const auto dom = bench_ellipsoid();
  const auto chain = build_convex_chain(dom, bench_point());
  CVec z = bench_point();
  for (auto _ : state) {
    benchmark::DoNotOptimize(chain.apply(z));
  }
}
BENCHMARK(BM_ChainApply);

void BM_InnerRadius(benchmark::State& state) {
  const auto dom = bench_ellipsoid();
  const auto chain = build_convex_chain(dom, bench_point());
  RadiusOptions opts;
  opts.directions = 512;
  for (auto _ : state) {
    benchmark::DoNotOptimize(inner_radius(chain, dom, opts).value);
  }
}
BENCHMARK(BM_InnerRadius);

void BM_StrictChain(benchmark::State& state) {
  const auto dom = bench_ellipsoid();
  CVec q(2);
  q << cplx(0.9, 0.0), cplx(0.0, 0.0);
  const auto contact = contact_data(dom, q);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_strict_chain(dom, contact).size());
  }
}
BENCHMARK(BM_StrictChain);

}  // namespace

BENCHMARK_MAIN();
