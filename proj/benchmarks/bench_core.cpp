#include <benchmark/benchmark.h>

#include <random>

#include "mva/kernels.hpp"
#include "mva/npmle.hpp"
#include "mva/posterior.hpp"
#include "mva/simgen.hpp"

namespace {

mva::FeatureSummary synthetic_summary(std::size_t p, int dof) {
    std::mt19937_64 rng(12345);
    std::gamma_distribution<double> chi(dof / 2.0, 2.0);
    std::uniform_real_distribution<double> sigma(0.5, 6.0);
    std::normal_distribution<double> z(0.0, 0.4);

    mva::FeatureSummary s;
    s.pooled_var.resize(p);
    s.x_diff.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        s.pooled_var[j] = sigma(rng) * chi(rng) / dof;
        s.x_diff[j] = z(rng);
    }
    s.mean_g1.assign(p, 0.0);
    s.mean_g2.assign(p, 0.0);
    s.n1 = s.n2 = 25;
    s.dof = dof;
    s.var_scale = 0.08;
    return s;
}

void BM_LogLikelihoodMatrixV(benchmark::State& state) {
    const auto p = static_cast<std::size_t>(state.range(0));
    const mva::FeatureSummary s = synthetic_summary(p, 48);
    const auto grid = mva::build_variance_grid(s.pooled_var, 100);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mva::log_likelihood_matrix_v(s, grid));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p * grid.size()));
}
BENCHMARK(BM_LogLikelihoodMatrixV)->Arg(1000)->Arg(10000);

void BM_SolveMixtureWeights(benchmark::State& state) {
    const auto p = static_cast<std::size_t>(state.range(0));
    const mva::FeatureSummary s = synthetic_summary(p, 48);
    const auto grid = mva::build_variance_grid(s.pooled_var, 100);
    const mva::Matrix log_lik = mva::log_likelihood_matrix_v(s, grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mva::solve_mixture_weights(log_lik, {}));
    }
}
BENCHMARK(BM_SolveMixtureWeights)->Arg(1000)->Arg(10000);

void BM_FitMeanMixing(benchmark::State& state) {
    const auto p = static_cast<std::size_t>(state.range(0));
    const mva::FeatureSummary s = synthetic_summary(p, 48);
    const mva::DiscreteMixing f = mva::fit_variance_mixing(s, {});
    for (auto _ : state) {
        benchmark::DoNotOptimize(mva::fit_mean_mixing(s, f, {}));
    }
}
BENCHMARK(BM_FitMeanMixing)->Arg(1000)->Arg(5000);

void BM_EstimateAll(benchmark::State& state) {
    const auto p = static_cast<std::size_t>(state.range(0));
    const mva::FeatureSummary s = synthetic_summary(p, 48);
    const mva::DiscreteMixing f = mva::fit_variance_mixing(s, {});
    const mva::DiscreteMixing g = mva::fit_mean_mixing(s, f, {});
    for (auto _ : state) {
        benchmark::DoNotOptimize(mva::estimate_all(s, f, g));
    }
}
BENCHMARK(BM_EstimateAll)->Arg(1000)->Arg(5000);

void BM_FitMva(benchmark::State& state) {
    mva::ScenarioSpec spec;
    spec.p = static_cast<std::size_t>(state.range(0));
    spec.n1_train = spec.n2_train = 25;
    spec.n1_test = spec.n2_test = 2;
    spec.variance_law = mva::VarianceLaw::uniform(1.0, 9.0);
    spec.seed = 7;
    const mva::Dataset ds = mva::gen_dataset(spec, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mva::fit_mva(ds.train, {}));
    }
}
BENCHMARK(BM_FitMva)->Arg(2000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
