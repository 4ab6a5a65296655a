#include "mva/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mva/errors.hpp"
#include "mva/numeric.hpp"

namespace mva {

namespace {

constexpr std::size_t signal_block = 100;

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string trimmed_number(double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') {
        s.pop_back();
    }
    return s;
}

} // namespace

VarianceLaw VarianceLaw::two_point(double base, double delta, double bulk) {
    VarianceLaw law;
    law.kind = Kind::two_point;
    law.base = base;
    law.delta = delta;
    law.bulk = bulk;
    return law;
}

VarianceLaw VarianceLaw::beta_scaled(double beta_shape) {
    VarianceLaw law;
    law.kind = Kind::beta_scaled;
    law.beta_shape = beta_shape;
    return law;
}

VarianceLaw VarianceLaw::inv_gamma(double ig_shape) {
    VarianceLaw law;
    law.kind = Kind::inv_gamma;
    law.ig_shape = ig_shape;
    return law;
}

VarianceLaw VarianceLaw::uniform(double lo, double hi) {
    VarianceLaw law;
    law.kind = Kind::uniform;
    law.lo = lo;
    law.hi = hi;
    return law;
}

void VarianceLaw::validate() const {
    switch (kind) {
    case Kind::two_point:
        if (!(base > 0.0) || !(bulk > 0.0)) {
            throw validation_error("two_point law: base and bulk variances must be positive");
        }
        if (!(delta > 0.0) || !(delta < 1.0)) {
            throw validation_error("two_point law: delta must lie in (0, 1)");
        }
        return;
    case Kind::beta_scaled:
        if (!(beta_shape > 0.0)) {
            throw validation_error("beta_scaled law: shape must be positive");
        }
        return;
    case Kind::inv_gamma:
        if (!(ig_shape > 0.0)) {
            throw validation_error("inv_gamma law: shape must be positive");
        }
        return;
    case Kind::uniform:
        if (!(lo > 0.0) || !(hi > lo)) {
            throw validation_error("uniform law: requires 0 < lo < hi");
        }
        return;
    }
    throw std::logic_error("VarianceLaw: unknown kind");
}

std::string VarianceLaw::tag() const {
    switch (kind) {
    case Kind::two_point:
        return "two_point:" + trimmed_number(base) + ":" + trimmed_number(delta) + ":" + trimmed_number(bulk);
    case Kind::beta_scaled:
        return "beta:" + trimmed_number(beta_shape);
    case Kind::inv_gamma:
        return "invgamma:" + trimmed_number(ig_shape);
    case Kind::uniform:
        return "uniform:" + trimmed_number(lo) + ":" + trimmed_number(hi);
    }
    throw std::logic_error("VarianceLaw: unknown kind");
}

void ScenarioSpec::validate() const {
    if (p == 0) {
        throw validation_error("scenario: p must be positive");
    }
    if (n1_train < 2 || n2_train < 2) {
        throw validation_error("scenario: each training class needs at least 2 samples");
    }
    if (n1_test == 0 || n2_test == 0) {
        throw validation_error("scenario: test split sizes must be positive");
    }
    if (replicates < 1) {
        throw validation_error("scenario: replicates must be positive");
    }
    variance_law.validate();
}

std::string ScenarioSpec::id() const {
    const std::string mean = mean_structure == MeanStructure::sparse ? "sparse" : "nonsparse";
    return mean + "_" + variance_law.tag() + "_p" + std::to_string(p) + "_tr" + std::to_string(n1_train) + "-" +
           std::to_string(n2_train) + "_te" + std::to_string(n1_test) + "-" + std::to_string(n2_test) + "_s" +
           std::to_string(seed);
}

std::mt19937_64 replicate_rng(std::uint64_t seed, std::uint64_t replicate, std::uint64_t stream) {
    std::uint64_t s = mix64(seed);
    s = mix64(s ^ (replicate * 0xd1b54a32d192ed03ULL + 1));
    s = mix64(s ^ (stream * 0x2545f4914f6cdd1dULL + 1));
    return std::mt19937_64(s);
}

std::pair<std::vector<double>, std::vector<double>> gen_means(const ScenarioSpec& spec, std::mt19937_64& rng) {
    spec.validate();
    const std::size_t block = std::min(spec.p, signal_block);
    std::vector<double> mu1(spec.p, 0.0);
    std::vector<double> mu2(spec.p, 0.0);
    std::fill(mu1.begin(), mu1.begin() + static_cast<std::ptrdiff_t>(block), 1.0);
    if (spec.mean_structure == MeanStructure::non_sparse) {
        std::normal_distribution<double> noise(0.0, 0.1);
        for (std::size_t j = block; j < spec.p; ++j) {
            mu1[j] = noise(rng);
        }
    }
    return {std::move(mu1), std::move(mu2)};
}

std::vector<double> gen_variances(const ScenarioSpec& spec, std::mt19937_64& rng) {
    spec.validate();
    std::vector<double> out(spec.p);
    const VarianceLaw& law = spec.variance_law;
    switch (law.kind) {
    case VarianceLaw::Kind::two_point: {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (double& v : out) {
            v = u(rng) < law.delta ? law.base : law.bulk;
        }
        break;
    }
    case VarianceLaw::Kind::beta_scaled: {
        std::gamma_distribution<double> g1(5.0, 1.0);
        std::gamma_distribution<double> g2(law.beta_shape, 1.0);
        for (double& v : out) {
            const double a = g1(rng);
            const double b = g2(rng);
            v = 5.0 * a / (a + b);
        }
        break;
    }
    case VarianceLaw::Kind::inv_gamma: {
        std::gamma_distribution<double> g(law.ig_shape, 1.0);
        for (double& v : out) {
            v = 10.0 / g(rng);
        }
        break;
    }
    case VarianceLaw::Kind::uniform: {
        std::uniform_real_distribution<double> u(law.lo, law.hi);
        for (double& v : out) {
            v = u(rng);
        }
        break;
    }
    }
    for (double& v : out) {
        if (!(v > 0.0)) {
            v = std::numeric_limits<double>::min(); // guards underflow in extreme draws
        }
    }
    return out;
}

namespace {

LabeledMatrix draw_split(const Truth& truth, std::size_t n1, std::size_t n2, std::mt19937_64& rng) {
    const std::size_t p = truth.sigma2.size();
    LabeledMatrix out;
    out.rows = n1 + n2;
    out.cols = p;
    out.values.resize(out.rows * p);
    out.labels.resize(out.rows);
    std::vector<double> sd(p);
    for (std::size_t j = 0; j < p; ++j) {
        sd[j] = std::sqrt(truth.sigma2[j]);
    }
    std::normal_distribution<double> z(0.0, 1.0);
    for (std::size_t i = 0; i < out.rows; ++i) {
        const bool first = i < n1;
        out.labels[i] = first ? 1 : 2;
        const auto& mu = first ? truth.mu1 : truth.mu2;
        for (std::size_t j = 0; j < p; ++j) {
            out.at(i, j) = mu[j] + sd[j] * z(rng);
        }
    }
    return out;
}

} // namespace

Dataset gen_dataset(const ScenarioSpec& spec, int replicate) {
    spec.validate();
    const auto rep = static_cast<std::uint64_t>(replicate);
    auto mean_rng = replicate_rng(spec.seed, rep, 0);
    auto var_rng = replicate_rng(spec.seed, rep, 1);
    auto train_rng = replicate_rng(spec.seed, rep, 2);
    auto test_rng = replicate_rng(spec.seed, rep, 3);

    Dataset ds;
    auto [mu1, mu2] = gen_means(spec, mean_rng);
    ds.truth.mu1 = std::move(mu1);
    ds.truth.mu2 = std::move(mu2);
    ds.truth.sigma2 = gen_variances(spec, var_rng);
    ds.train = draw_split(ds.truth, spec.n1_train, spec.n2_train, train_rng);
    ds.test = draw_split(ds.truth, spec.n1_test, spec.n2_test, test_rng);
    return ds;
}

EvalReport run_monte_carlo(const ScenarioSpec& spec, const std::vector<Method>& methods,
                           const SolverConfig& config) {
    spec.validate();
    std::vector<Method> distinct;
    for (Method m : methods) {
        if (std::find(distinct.begin(), distinct.end(), m) == distinct.end()) {
            distinct.push_back(m);
        }
    }
    if (distinct.empty()) {
        throw validation_error("run_monte_carlo: no methods requested");
    }

    EvalReport report;
    report.scenario_id = spec.id();
    report.records.reserve(static_cast<std::size_t>(spec.replicates) * distinct.size());

    const double n_train = static_cast<double>(spec.n1_train + spec.n2_train);
    const std::pair<double, double> priors{static_cast<double>(spec.n1_train) / n_train,
                                           static_cast<double>(spec.n2_train) / n_train};

    for (int r = 1; r <= spec.replicates; ++r) {
        const Dataset ds = gen_dataset(spec, r);
        for (Method m : distinct) {
            FittedModel model;
            switch (m) {
            case Method::MVA:
                model = fit_mva(ds.train, config);
                break;
            case Method::NB:
                model = fit_naive_bayes(ds.train);
                break;
            case Method::ORACLE:
                model = oracle_model(ds.truth.mu1, ds.truth.mu2, ds.truth.sigma2, priors);
                break;
            }
            report.records.push_back({m, r, misclassification_rate(model, ds.test)});
        }
    }

    for (Method m : distinct) {
        std::vector<double> rates;
        rates.reserve(static_cast<std::size_t>(spec.replicates));
        for (const auto& rec : report.records) {
            if (rec.method == m) {
                rates.push_back(rec.misclassification);
            }
        }
        const auto [mean, sd] = mean_sd(rates);
        report.aggregates.push_back({m, mean, sd});
    }
    return report;
}

} // namespace mva
