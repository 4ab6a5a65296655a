// Command-line surface for the MVA linear discriminant toolkit: fit, predict,
// simulation benchmarks, fitted-density export, feature screening, and LOOCV.

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mva/mva.hpp"
#include "mva/numeric.hpp"
#include "mva/parallel.hpp"

namespace {

mva::VarianceLaw parse_varlaw(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::string rest = text.substr(colon + 1);
        std::size_t start = 0;
        while (start <= rest.size()) {
            const auto comma = rest.find(',', start);
            const std::string tok = rest.substr(start, comma == std::string::npos ? comma : comma - start);
            try {
                std::size_t used = 0;
                args.push_back(std::stod(tok, &used));
                if (used != tok.size()) {
                    throw std::invalid_argument(tok);
                }
            } catch (const std::exception&) {
                throw mva::validation_error("--varlaw: malformed parameter '" + tok + "' in '" + text + "'");
            }
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
    }

    const auto want = [&](std::size_t n, const char* usage) {
        if (args.size() != n) {
            throw mva::validation_error(std::string("--varlaw: expected ") + usage + ", got '" + text + "'");
        }
    };
    if (name == "two_point") {
        want(3, "two_point:base,delta,bulk");
        return mva::VarianceLaw::two_point(args[0], args[1], args[2]);
    }
    if (name == "beta") {
        want(1, "beta:shape");
        return mva::VarianceLaw::beta_scaled(args[0]);
    }
    if (name == "invgamma") {
        want(1, "invgamma:shape");
        return mva::VarianceLaw::inv_gamma(args[0]);
    }
    if (name == "uniform") {
        want(1, "uniform:hi");
        return mva::VarianceLaw::uniform(1.0, args[0]);
    }
    throw mva::validation_error("--varlaw: unknown law '" + name +
                                "' (expected two_point:..., beta:..., invgamma:..., uniform:...)");
}

void add_solver_flags(CLI::App* cmd, mva::SolverConfig& solver) {
    cmd->add_option("--k-grid", solver.grid_size_variance, "Variance grid size K")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--l-grid", solver.grid_size_mean, "Mean grid size L")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--tol", solver.rel_tol, "Relative objective tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-iters", solver.max_iters, "Iteration cap for the weight solver")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void print_solve(const char* label, const mva::SolverResult& res) {
    std::cout << label << ": " << res.iterations << " iterations, objective "
              << mva::format_double(res.objective) << (res.converged ? "" : " (iteration cap reached)")
              << "\n";
}

int run_fit(const std::string& input, const std::string& output, const std::string& method,
            const mva::SolverConfig& solver) {
    const mva::LabeledMatrix data = mva::read_labeled_csv_file(input);
    mva::FittedModel model;
    mva::FitDiagnostics diag;
    if (method == "nb") {
        model = mva::fit_naive_bayes(data);
    } else {
        model = mva::fit_mva(data, solver, &diag);
    }
    mva::save_model(model, output);
    std::cout << "p: " << model.p << "\n"
              << "n1: " << model.n1 << "\n"
              << "n2: " << model.n2 << "\n";
    if (method != "nb") {
        print_solve("variance solve", diag.variance_solve);
        print_solve("mean solve", diag.mean_solve);
    }
    std::cout << "model written to " << output << "\n";
    return 0;
}

int run_predict(const std::string& model_path, const std::string& data_path, const std::string& output) {
    const mva::FittedModel model = mva::load_model(model_path);
    const mva::FeatureTable table = mva::read_feature_table_file(data_path);
    if (table.values.cols != model.p) {
        throw mva::validation_error(data_path + ": has " + std::to_string(table.values.cols) +
                                    " features, model expects " + std::to_string(model.p));
    }
    const std::vector<double> scores = mva::score_rows(model, table.values);
    std::vector<int> labels(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        labels[i] = scores[i] >= 0.0 ? 1 : 2;
    }
    mva::write_predictions_csv(scores, labels, output);
    std::cout << scores.size() << " predictions written to " << output << "\n";
    return 0;
}

int run_bench(const mva::ScenarioSpec& spec, const std::vector<std::string>& method_names,
              const mva::SolverConfig& solver, const std::string& prefix) {
    std::vector<mva::Method> methods;
    methods.reserve(method_names.size());
    for (const auto& name : method_names) {
        methods.push_back(mva::parse_method(name));
    }
    const mva::EvalReport report = mva::run_monte_carlo(spec, methods, solver);
    const std::string rep_path = prefix + "_replicates.csv";
    const std::string agg_path = prefix + "_aggregate.csv";
    mva::write_eval_replicates_csv(report, rep_path);
    mva::write_eval_aggregate_csv(report, agg_path);
    std::cout << "scenario: " << report.scenario_id << "\n";
    for (const auto& agg : report.aggregates) {
        std::cout << mva::method_name(agg.method) << ": mean " << mva::format_double(agg.mean) << ", sd "
                  << mva::format_double(agg.sd) << "\n";
    }
    std::cout << "replicate rates written to " << rep_path << "\n"
              << "aggregates written to " << agg_path << "\n";
    return 0;
}

int run_density(const std::string& model_path, const std::string& output, int grid_points, double v_max) {
    const mva::FittedModel model = mva::load_model(model_path);
    if (model.f_hat.support.empty()) {
        throw mva::validation_error(model_path + ": model has no fitted variance mixing (was it fit with nb?)");
    }
    model.f_hat.validate(true);
    const mva::KernelContext ctx(model.dof, model.var_scale);
    if (v_max <= 0.0) {
        // Cover the bulk: largest support point plus a few chi-square sds.
        v_max = model.f_hat.support.back() * (1.0 + 8.0 / std::sqrt(static_cast<double>(model.dof)));
    }
    const std::vector<double> grid = mva::linspace(0.0, v_max, static_cast<std::size_t>(grid_points));
    std::vector<double> density(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        density[i] = mva::marginal_density_v(grid[i], model.f_hat, ctx);
    }
    mva::write_density_csv(grid, density, output);
    std::cout << grid.size() << " density samples written to " << output << "\n";
    return 0;
}

int run_screen(const std::string& input, double alpha, const std::string& output) {
    const mva::LabeledMatrix data = mva::read_labeled_csv_file(input);
    const mva::ScreeningResult res = mva::t_test_screen(data, alpha);
    const std::vector<std::string> names =
        data.feature_names.empty() ? mva::default_feature_names(data.cols) : data.feature_names;
    mva::write_screening_csv(res, names, output);
    std::cout << "kept " << res.kept_indices.size() << " of " << data.cols << " features at alpha "
              << mva::format_double(alpha) << "\n"
              << "screening table written to " << output << "\n";
    return 0;
}

int run_loocv(const std::string& input, const mva::LoocvOptions& options) {
    const mva::LabeledMatrix data = mva::read_labeled_csv_file(input);
    const mva::LoocvResult res = mva::loocv(data, options);
    std::cout << "loocv misclassification rate: " << mva::format_double(res.rate) << " ("
              << res.completed_folds << " folds";
    if (res.skipped_folds > 0) {
        std::cout << ", " << res.skipped_folds << " skipped";
    }
    std::cout << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mean- and variance-adaptive linear discriminant toolkit"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = hardware default)");

    std::string input;
    std::string model_path;
    std::string output;
    std::string method = "mva";
    mva::SolverConfig solver;

    auto* fit = app.add_subcommand("fit", "Fit a classifier from a labeled CSV");
    fit->add_option("input", input, "Training CSV (first column 'label')")->required();
    fit->add_option("-o,--output", output, "Model file path")->capture_default_str()->default_val("model.mva");
    fit->add_option("--method", method, "mva or nb")
        ->check(CLI::IsMember({"mva", "nb"}))
        ->capture_default_str();
    add_solver_flags(fit, solver);

    auto* predict = app.add_subcommand("predict", "Score and label new observations");
    predict->add_option("model", model_path, "Model file from 'fit'")->required();
    predict->add_option("data", input, "CSV of observations (label column optional, ignored)")->required();
    predict->add_option("-o,--output", output, "Predictions CSV")->default_val("predictions.csv");

    mva::ScenarioSpec spec;
    spec.p = 10000;
    spec.replicates = 500;
    std::string mean_structure = "sparse";
    std::string varlaw_text = "uniform:9";
    std::size_t train_per_class = 25;
    std::size_t test_per_class = 100;
    std::vector<std::string> method_names{"mva", "nb", "oracle"};
    std::string prefix = "bench";

    auto* bench = app.add_subcommand("bench", "Monte-Carlo misclassification benchmark");
    bench->add_option("--p", spec.p, "Feature dimension")->check(CLI::PositiveNumber)->capture_default_str();
    bench->add_option("--train-per-class", train_per_class, "Training samples per class")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--test-per-class", test_per_class, "Test samples per class")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--mean", mean_structure, "sparse or nonsparse")
        ->check(CLI::IsMember({"sparse", "nonsparse"}))
        ->capture_default_str();
    bench->add_option("--varlaw", varlaw_text,
                      "two_point:base,delta,bulk | beta:shape | invgamma:shape | uniform:hi")
        ->capture_default_str();
    bench->add_option("--reps", spec.replicates, "Replicates")->check(CLI::PositiveNumber)->capture_default_str();
    bench->add_option("--seed", spec.seed, "RNG seed")->capture_default_str();
    bench->add_option("--methods", method_names, "Comma-separated subset of mva,nb,oracle")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("-o,--out", prefix, "Output prefix for <prefix>_replicates.csv / _aggregate.csv")
        ->capture_default_str();
    add_solver_flags(bench, solver);

    int grid_points = 200;
    double v_max = 0.0;
    auto* density = app.add_subcommand("density", "Export the fitted marginal density of pooled variances");
    density->add_option("model", model_path, "Model file from 'fit'")->required();
    density->add_option("-o,--output", output, "Curve CSV (columns v, density)")->default_val("density.csv");
    density->add_option("--grid-points", grid_points, "Number of curve samples")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    density->add_option("--v-max", v_max, "Upper end of the v range (0 = automatic)");

    double alpha = 0.2;
    auto* screen = app.add_subcommand("screen", "Two-sample t-test feature screening");
    screen->add_option("input", input, "Labeled CSV")->required();
    screen->add_option("--alpha", alpha, "Significance level")->capture_default_str();
    screen->add_option("-o,--output", output, "Screening CSV (feature,t,p,kept)")->default_val("screening.csv");

    mva::LoocvOptions loocv_options;
    bool global_screen = false;
    bool no_screen = false;
    bool scale = false;
    auto* loocv = app.add_subcommand("loocv", "Leave-one-out cross-validated misclassification rate");
    loocv->add_option("input", input, "Labeled CSV")->required();
    loocv->add_option("--method", method, "mva or nb")
        ->check(CLI::IsMember({"mva", "nb"}))
        ->capture_default_str();
    loocv->add_option("--alpha", loocv_options.alpha, "Screening significance level")->capture_default_str();
    loocv->add_flag("--scale", scale, "Apply train-fitted min-max scaling inside each fold");
    loocv->add_flag("--global-screen", global_screen, "Screen once on the full data instead of per fold");
    loocv->add_flag("--no-screen", no_screen, "Skip the t-test screening step");
    add_solver_flags(loocv, solver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    mva::set_max_threads(threads);
    try {
        if (fit->parsed()) {
            return run_fit(input, output, method, solver);
        }
        if (predict->parsed()) {
            return run_predict(model_path, input, output);
        }
        if (bench->parsed()) {
            spec.n1_train = spec.n2_train = train_per_class;
            spec.n1_test = spec.n2_test = test_per_class;
            spec.mean_structure =
                mean_structure == "sparse" ? mva::MeanStructure::sparse : mva::MeanStructure::non_sparse;
            spec.variance_law = parse_varlaw(varlaw_text);
            return run_bench(spec, method_names, solver, prefix);
        }
        if (density->parsed()) {
            return run_density(model_path, output, grid_points, v_max);
        }
        if (screen->parsed()) {
            return run_screen(input, alpha, output);
        }
        if (loocv->parsed()) {
            loocv_options.method = method == "nb" ? mva::Method::NB : mva::Method::MVA;
            loocv_options.solver = solver;
            loocv_options.screen = !no_screen;
            loocv_options.screen_per_fold = !global_screen;
            loocv_options.min_max = scale;
            return run_loocv(input, loocv_options);
        }
    } catch (const mva::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
