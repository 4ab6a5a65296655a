#ifndef MVA_CLASSIFIER_HPP
#define MVA_CLASSIFIER_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mva/matrix.hpp"
#include "mva/npmle.hpp"
#include "mva/posterior.hpp"
#include "mva/stats.hpp"

namespace mva {

enum class Method { MVA, NB, ORACLE };

std::string method_name(Method m);
Method parse_method(const std::string& name); // case-insensitive; throws validation_error

// A fitted linear rule delta(x) = sum_j a_j x_j + a0 - log_prior_odds,
// classifying to 1 when delta >= 0. Invariants, exact by construction:
//   coefficients[j] = mu_hat[j] / sigma2_hat[j]
//   intercept       = -1/2 * sum_j coefficients[j] * (mean_g1[j] + mean_g2[j])
struct FittedModel {
    Method method = Method::MVA;
    std::size_t p = 0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    int dof = 0;            // kernel constants of the training sample
    double var_scale = 0.0; // (0 for oracle models)
    std::vector<double> coefficients;
    double intercept = 0.0;
    double log_prior_odds = 0.0; // log(pi2 / pi1)
    std::vector<double> mu_hat;
    std::vector<double> sigma2_hat;
    DiscreteMixing f_hat; // empty for NB and oracle models
    DiscreteMixing g_hat;
};

struct FitDiagnostics {
    SolverResult variance_solve;
    SolverResult mean_solve;
};

// The mean- and variance-adaptive rule: sufficient statistics, NPMLE of the
// two mixing distributions, posterior-mean plug-in, then the linear
// coefficients. Class priors are the training class proportions.
FittedModel fit_mva(const LabeledMatrix& data, const SolverConfig& config = {},
                    FitDiagnostics* diagnostics = nullptr);

// Baseline: sample mean differences over pooled variances, the latter clamped
// below by the variance floor.
FittedModel fit_naive_bayes(const LabeledMatrix& data);

// Linear score of one observation; throws validation_error on a length
// mismatch. predict returns 1 iff score >= 0, else 2.
double score(const FittedModel& model, std::span<const double> x);
int predict(const FittedModel& model, std::span<const double> x);

std::vector<double> score_rows(const FittedModel& model, const Matrix& x);
std::vector<int> predict_rows(const FittedModel& model, const Matrix& x);

// Fraction of rows whose predicted label differs from the stored label.
double misclassification_rate(const FittedModel& model, const LabeledMatrix& data);

// The optimal rule under known per-feature truths (simulation only):
//   delta = sum_j (x_j - (mu1_j + mu2_j)/2) (mu1_j - mu2_j) / sigma2_j - log(pi2/pi1).
FittedModel oracle_model(std::span<const double> mu1, std::span<const double> mu2,
                         std::span<const double> sigma2, std::pair<double, double> priors);
std::pair<double, int> oracle_rule(std::span<const double> mu1, std::span<const double> mu2,
                                   std::span<const double> sigma2, std::pair<double, double> priors,
                                   std::span<const double> x);

} // namespace mva

#endif
