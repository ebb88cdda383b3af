#include <benchmark/benchmark.h>

#include <qbl/borel.hpp>
#include <qbl/contour.hpp>
#include <qbl/qde.hpp>
#include <qbl/specfun.hpp>

using namespace qbl;
namespace sf = qbl::specfun;

static void BM_HankelRecipGamma(benchmark::State& state)
{
    contour::HankelContour hc;
    Real tol = pow(Real(10), -10);
    Complex z(Real(5) / 2);
    auto f = [&](const Complex& lam) { return exp((Complex(1) - z) * log(lam)); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(contour::hankel_integral(f, hc, tol));
    }
}
BENCHMARK(BM_HankelRecipGamma)->Unit(benchmark::kMillisecond);

static void BM_CyclicFrameBlowup(benchmark::State& state)
{
    auto data = qde::qde_blowup_data(1, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qde::cyclic_frame(data));
    }
}
BENCHMARK(BM_CyclicFrameBlowup)->Unit(benchmark::kMillisecond);

static void BM_DeriveMasterOde(benchmark::State& state)
{
    auto data = qde::qde_blowup_data(1, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qde::derive_master_ode(data));
    }
}
BENCHMARK(BM_DeriveMasterOde)->Unit(benchmark::kMillisecond);

static void BM_BorelBasis(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(qde::blowup_borel_basis(static_cast<unsigned>(state.range(0))));
    }
}
BENCHMARK(BM_BorelBasis)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_EkEval(benchmark::State& state)
{
    Complex zl = log(Complex(Real(1) / 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::ek_eval(2, zl));
    }
}
BENCHMARK(BM_EkEval)->Unit(benchmark::kMicrosecond);

static void BM_LogGammaParabola(benchmark::State& state)
{
    Complex s(Real(-12), Real(7));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::log_gamma(s));
    }
}
BENCHMARK(BM_LogGammaParabola)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
