// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "tdg/assembly.hpp"
#include "tdg/experiments.hpp"
#include "tdg/linalg.hpp"
#include "tdg/stepper.hpp"

namespace {

using namespace tdg;

void bm_assemble_mechanical_1d(benchmark::State& state) {
  const Mesh mesh = Mesh::interval(1.0, static_cast<int>(state.range(0)));
  const MaterialParams p = DimensionlessParams{4.0, 0.2, 0.0}.to_material();
  const SlabLayout layout = SlabLayout::mechanical(mesh, 0.0, 0.01);
  for (auto _ : state) {
    SparseMatrix a = assemble_mechanical_matrix(layout, p);
    benchmark::DoNotOptimize(a.vals.data());
  }
}
BENCHMARK(bm_assemble_mechanical_1d)->Arg(200)->Arg(1000);

void bm_assemble_monolithic_2d(benchmark::State& state) {
  const Pulse2DCase pc;
  Mesh mesh = Mesh::quad(-1, 1, -1, 1, static_cast<int>(state.range(0)),
                         static_cast<int>(state.range(0)));
  const MaterialParams p = pc.material();
  const SlabLayout layout = SlabLayout::monolithic(mesh, 0.0, 0.01);
  for (auto _ : state) {
    SparseMatrix a = assemble_monolithic_matrix(layout, p);
    benchmark::DoNotOptimize(a.vals.data());
  }
}
BENCHMARK(bm_assemble_monolithic_2d)->Arg(16)->Arg(50);

void bm_band_factorization_2d(benchmark::State& state) {
  Pulse2DCase pc;
  pc.grid = static_cast<int>(state.range(0));
  const Mesh mesh = pc.make_mesh();
  const MaterialParams p = pc.material();
  const SlabLayout layout = SlabLayout::thermal(mesh, 0.0, pc.dt);
  LinearSystem sys;
  sys.matrix = assemble_thermal_matrix(layout, p);
  sys.rhs.assign(layout.n_dofs(), 0.0);
  const LinearSystem red =
      apply_dirichlet(sys, layout, std::vector<double>(layout.n_dofs(), 0.0));
  for (auto _ : state) {
    BandedLU lu(red.matrix);
    benchmark::DoNotOptimize(&lu);
  }
}
BENCHMARK(bm_band_factorization_2d)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void bm_laser_slab_step(benchmark::State& state) {
  LaserCase lc;
  lc.h = 1.0 / static_cast<double>(state.range(0));
  const Mesh mesh = Mesh::interval(lc.length, static_cast<int>(state.range(0)));
  SlabStepper stepper(mesh, lc.material(), Scheme::LieTrotter, lc.loads());
  StateVector prev = StateVector::zeros(mesh);
  // warm the factorization cache, then time steady-state slab advances
  prev = stepper.step(prev, 0.0, lc.h);
  double t = lc.h;
  for (auto _ : state) {
    prev = stepper.step(prev, t, t + lc.h);
    t += lc.h;
  }
}
BENCHMARK(bm_laser_slab_step)->Arg(200)->Arg(1000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
