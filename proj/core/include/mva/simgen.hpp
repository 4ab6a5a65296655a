#ifndef MVA_SIMGEN_HPP
#define MVA_SIMGEN_HPP

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mva/classifier.hpp"
#include "mva/stats.hpp"

namespace mva {

enum class MeanStructure { sparse, non_sparse };

// Law of the per-feature variances sigma2_j.
struct VarianceLaw {
    enum class Kind { two_point, beta_scaled, inv_gamma, uniform };
    Kind kind = Kind::uniform;

    double base = 1.0;   // two_point: value drawn with probability delta
    double delta = 0.005;
    double bulk = 6.0;   // two_point: the remaining mass

    double beta_shape = 1.5; // beta_scaled: 5 * Beta(5, beta_shape)
    double ig_shape = 2.0;   // inv_gamma: shape, scale fixed at 10

    double lo = 1.0; // uniform bounds
    double hi = 9.0;

    static VarianceLaw two_point(double base, double delta, double bulk);
    static VarianceLaw beta_scaled(double beta_shape);
    static VarianceLaw inv_gamma(double ig_shape);
    static VarianceLaw uniform(double lo, double hi);

    void validate() const;
    std::string tag() const; // e.g. "two_point:1:0.005:6", comma-free for CSV ids
};

// One complete data-generating regime: class 1 carries the signal block of
// min(p, 100) unit mean differences, class 2 means are zero, features are
// independent Gaussians with variances drawn from the law.
struct ScenarioSpec {
    std::size_t p = 10000;
    std::size_t n1_train = 25;
    std::size_t n2_train = 25;
    std::size_t n1_test = 100;
    std::size_t n2_test = 100;
    MeanStructure mean_structure = MeanStructure::sparse;
    VarianceLaw variance_law;
    int replicates = 500;
    std::uint64_t seed = 0;

    void validate() const;
    std::string id() const;
};

struct Truth {
    std::vector<double> mu1;
    std::vector<double> mu2;
    std::vector<double> sigma2;
};

struct Dataset {
    LabeledMatrix train;
    LabeledMatrix test;
    Truth truth;
};

// Deterministic per-(seed, replicate, stream) generator, so a replicate's
// data depends only on (seed, replicate) and never on which methods run.
std::mt19937_64 replicate_rng(std::uint64_t seed, std::uint64_t replicate, std::uint64_t stream);

std::pair<std::vector<double>, std::vector<double>> gen_means(const ScenarioSpec& spec, std::mt19937_64& rng);
std::vector<double> gen_variances(const ScenarioSpec& spec, std::mt19937_64& rng);
Dataset gen_dataset(const ScenarioSpec& spec, int replicate);

struct EvalRecord {
    Method method;
    int replicate; // 1-based
    double misclassification;
};

struct MethodAggregate {
    Method method;
    double mean = 0.0;
    double sd = 0.0; // sample sd over replicates; 0 when replicates < 2
};

struct EvalReport {
    std::string scenario_id;
    std::vector<EvalRecord> records; // replicate-major, methods in call order
    std::vector<MethodAggregate> aggregates;
};

// Per replicate: fresh dataset, each method fit on the train split and scored
// on the test split; the oracle rule uses the generating truth with the
// training class proportions as priors.
EvalReport run_monte_carlo(const ScenarioSpec& spec, const std::vector<Method>& methods,
                           const SolverConfig& config = {});

} // namespace mva

#endif
