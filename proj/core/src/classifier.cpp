#include "mva/classifier.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "mva/errors.hpp"

namespace mva {

std::string method_name(Method m) {
    switch (m) {
    case Method::MVA:
        return "MVA";
    case Method::NB:
        return "NB";
    case Method::ORACLE:
        return "ORACLE";
    }
    throw std::logic_error("method_name: unknown method");
}

Method parse_method(const std::string& name) {
    std::string up(name);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
    if (up == "MVA") {
        return Method::MVA;
    }
    if (up == "NB") {
        return Method::NB;
    }
    if (up == "ORACLE") {
        return Method::ORACLE;
    }
    throw validation_error("unknown method '" + name + "' (expected mva, nb, or oracle)");
}

namespace {

// Shared tail of every fit: coefficients, intercept identity, prior odds.
void finish_linear_rule(FittedModel& model, std::span<const double> mean_g1, std::span<const double> mean_g2) {
    const std::size_t p = model.mu_hat.size();
    model.coefficients.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        model.coefficients[j] = model.mu_hat[j] / model.sigma2_hat[j];
    }
    double a0 = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        a0 += model.coefficients[j] * (mean_g1[j] + mean_g2[j]);
    }
    model.intercept = -0.5 * a0;
}

} // namespace

FittedModel fit_mva(const LabeledMatrix& data, const SolverConfig& config, FitDiagnostics* diagnostics) {
    const FeatureSummary summary = summarize(data);

    FittedModel model;
    model.method = Method::MVA;
    model.p = summary.dim();
    model.n1 = summary.n1;
    model.n2 = summary.n2;
    model.dof = summary.dof;
    model.var_scale = summary.var_scale;

    model.f_hat = fit_variance_mixing(summary, config, diagnostics ? &diagnostics->variance_solve : nullptr);
    model.g_hat = fit_mean_mixing(summary, model.f_hat, config, diagnostics ? &diagnostics->mean_solve : nullptr);

    PosteriorEstimates est = estimate_all(summary, model.f_hat, model.g_hat);
    model.mu_hat = std::move(est.mu_hat);
    model.sigma2_hat = std::move(est.sigma2_hat);
    model.log_prior_odds = std::log(static_cast<double>(summary.n2) / static_cast<double>(summary.n1));
    finish_linear_rule(model, summary.mean_g1, summary.mean_g2);
    return model;
}

FittedModel fit_naive_bayes(const LabeledMatrix& data) {
    const FeatureSummary summary = summarize(data);
    const double floor = variance_floor(summary.pooled_var);
    if (floor == 0.0) {
        throw validation_error("fit_naive_bayes: every pooled variance is zero");
    }

    FittedModel model;
    model.method = Method::NB;
    model.p = summary.dim();
    model.n1 = summary.n1;
    model.n2 = summary.n2;
    model.dof = summary.dof;
    model.var_scale = summary.var_scale;
    model.mu_hat = summary.x_diff;
    model.sigma2_hat.resize(model.p);
    for (std::size_t j = 0; j < model.p; ++j) {
        model.sigma2_hat[j] = std::max(summary.pooled_var[j], floor);
    }
    model.log_prior_odds = std::log(static_cast<double>(summary.n2) / static_cast<double>(summary.n1));
    finish_linear_rule(model, summary.mean_g1, summary.mean_g2);
    return model;
}

double score(const FittedModel& model, std::span<const double> x) {
    if (x.size() != model.p) {
        throw validation_error("score: observation has " + std::to_string(x.size()) + " features, model expects " +
                               std::to_string(model.p));
    }
    double dot = 0.0;
    for (std::size_t j = 0; j < model.p; ++j) {
        dot += model.coefficients[j] * x[j];
    }
    return dot + model.intercept - model.log_prior_odds;
}

int predict(const FittedModel& model, std::span<const double> x) {
    return score(model, x) >= 0.0 ? 1 : 2;
}

std::vector<double> score_rows(const FittedModel& model, const Matrix& x) {
    std::vector<double> out(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i) {
        out[i] = score(model, x.row(i));
    }
    return out;
}

std::vector<int> predict_rows(const FittedModel& model, const Matrix& x) {
    std::vector<int> out(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i) {
        out[i] = predict(model, x.row(i));
    }
    return out;
}

double misclassification_rate(const FittedModel& model, const LabeledMatrix& data) {
    if (data.rows == 0) {
        throw validation_error("misclassification_rate: empty evaluation data");
    }
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < data.rows; ++i) {
        if (predict(model, data.row(i)) != data.labels[i]) {
            ++wrong;
        }
    }
    return static_cast<double>(wrong) / static_cast<double>(data.rows);
}

FittedModel oracle_model(std::span<const double> mu1, std::span<const double> mu2,
                         std::span<const double> sigma2, std::pair<double, double> priors) {
    const std::size_t p = mu1.size();
    if (mu2.size() != p || sigma2.size() != p) {
        throw validation_error("oracle_model: mu1, mu2, sigma2 must have equal length");
    }
    if (!(priors.first > 0.0) || !(priors.second > 0.0)) {
        throw std::invalid_argument("oracle_model: priors must be positive");
    }
    for (double s : sigma2) {
        if (!(s > 0.0)) {
            throw std::invalid_argument("oracle_model: sigma2 must be positive");
        }
    }

    FittedModel model;
    model.method = Method::ORACLE;
    model.p = p;
    model.mu_hat.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        model.mu_hat[j] = mu1[j] - mu2[j];
    }
    model.sigma2_hat.assign(sigma2.begin(), sigma2.end());
    model.log_prior_odds = std::log(priors.second / priors.first);
    finish_linear_rule(model, mu1, mu2);
    return model;
}

std::pair<double, int> oracle_rule(std::span<const double> mu1, std::span<const double> mu2,
                                   std::span<const double> sigma2, std::pair<double, double> priors,
                                   std::span<const double> x) {
    const FittedModel model = oracle_model(mu1, mu2, sigma2, priors);
    const double delta = score(model, x);
    return {delta, delta >= 0.0 ? 1 : 2};
}

} // namespace mva
