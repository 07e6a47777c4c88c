#include <benchmark/benchmark.h>

#include <random>

#include <belyi/ansatz.hpp>
#include <belyi/lattice.hpp>
#include <belyi/roots.hpp>
#include <belyi/triple.hpp>

using namespace belyi;

namespace {

BelyiAnsatz paper_shape() {
  return build_ansatz(profile_from_cycle_types(parse_cycle_type("1^12 2^132"),
                                               parse_cycle_type("3^92"),
                                               parse_cycle_type("1^3 7^39")));
}

std::vector<Complex> random_point(const BelyiAnsatz& a, mpfr_prec_t bits) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<Complex> x;
  x.reserve(static_cast<size_t>(a.unknowns));
  for (int i = 0; i < a.unknowns; ++i)
    x.emplace_back(Real::from_double(u(rng), bits), Real::from_double(u(rng), bits));
  return x;
}

ZMat scrambled_identity(int dim, int shears) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> row(0, dim - 1);
  std::uniform_int_distribution<int> val(-40, 40);
  ZMat b(static_cast<size_t>(dim), std::vector<mpz_class>(static_cast<size_t>(dim), 0));
  for (int i = 0; i < dim; ++i) b[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  for (int s = 0; s < shears; ++s) {
    int i = row(rng), j = row(rng);
    if (i == j) continue;
    mpz_class c = val(rng);
    for (int k = 0; k < dim; ++k)
      b[static_cast<size_t>(i)][static_cast<size_t>(k)] +=
          c * b[static_cast<size_t>(j)][static_cast<size_t>(k)];
  }
  return b;
}

CPoly random_poly(int degree, mpfr_prec_t bits) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> c(-50, 50);
  CPoly p;
  p.reserve(static_cast<size_t>(degree) + 1);
  for (int i = 0; i < degree; ++i)
    p.push_back(Complex(Real(c(rng), bits), Real(0L, bits)));
  p.push_back(Complex(Real(1, bits), Real(0L, bits)));
  return p;
}

}  // namespace

static void BM_residual_paper_shape(benchmark::State& state) {
  const mpfr_prec_t bits = state.range(0);
  BelyiAnsatz a = paper_shape();
  std::vector<Complex> x = random_point(a, bits);
  for (auto _ : state) {
    auto r = residual(a, x, bits);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_residual_paper_shape)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_jacobian_paper_shape(benchmark::State& state) {
  const mpfr_prec_t bits = state.range(0);
  BelyiAnsatz a = paper_shape();
  std::vector<Complex> x = random_point(a, bits);
  for (auto _ : state) {
    auto J = jacobian(a, x, bits);
    benchmark::DoNotOptimize(J);
  }
}
BENCHMARK(BM_jacobian_paper_shape)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_lll_reduce(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  ZMat basis = scrambled_identity(dim, 20 * dim);
  for (auto _ : state) {
    auto r = lll_reduce(basis);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_lll_reduce)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_find_roots(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  CPoly p = random_poly(degree, 256);
  for (auto _ : state) {
    auto r = find_roots(p, 256);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_find_roots)->Arg(12)->Arg(36)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
