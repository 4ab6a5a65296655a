#include "mva/model_io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "mva/errors.hpp"
#include "mva/io_util.hpp"
#include "mva/numeric.hpp"

namespace mva {

namespace {

void append_array(std::string& out, const std::string& key, std::span<const double> values) {
    out += key;
    out += ':';
    for (double v : values) {
        out += ' ';
        out += format_double(v);
    }
    out += '\n';
}

double parse_double_strict(const std::string& token, const std::string& context) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || token.empty()) {
        throw validation_error(context + ": malformed number '" + token + "'");
    }
    return v;
}

class KeyValueDoc {
public:
    KeyValueDoc(std::istream& in, std::string source) : source_(std::move(source)) {
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty()) {
                continue;
            }
            const auto colon = line.find(':');
            if (colon == std::string::npos) {
                throw validation_error(source_ + ": expected 'key: value', got '" + line + "'");
            }
            fields_[line.substr(0, colon)] = line.substr(colon + 1);
        }
    }

    const std::string& raw(const std::string& key) const {
        const auto it = fields_.find(key);
        if (it == fields_.end()) {
            throw validation_error(source_ + ": missing field '" + key + "'");
        }
        return it->second;
    }

    double number(const std::string& key) const {
        std::istringstream ss(raw(key));
        std::string token;
        ss >> token;
        return parse_double_strict(token, source_ + ", field '" + key + "'");
    }

    std::string word(const std::string& key) const {
        std::istringstream ss(raw(key));
        std::string token;
        ss >> token;
        return token;
    }

    std::vector<double> array(const std::string& key) const {
        std::istringstream ss(raw(key));
        std::vector<double> out;
        std::string token;
        while (ss >> token) {
            out.push_back(parse_double_strict(token, source_ + ", field '" + key + "'"));
        }
        return out;
    }

private:
    std::string source_;
    std::map<std::string, std::string> fields_;
};

std::size_t to_count(double v, const std::string& what) {
    if (!(v >= 0.0) || v != std::floor(v)) {
        throw validation_error(what + " must be a nonnegative integer");
    }
    return static_cast<std::size_t>(v);
}

} // namespace

std::string serialize_model(const FittedModel& model) {
    std::string out;
    out += "format_version: 1\n";
    out += "method: " + method_name(model.method) + "\n";
    out += "p: " + std::to_string(model.p) + "\n";
    out += "n1: " + std::to_string(model.n1) + "\n";
    out += "n2: " + std::to_string(model.n2) + "\n";
    out += "dof: " + std::to_string(model.dof) + "\n";
    out += "var_scale: " + format_double(model.var_scale) + "\n";
    out += "intercept: " + format_double(model.intercept) + "\n";
    out += "log_prior_odds: " + format_double(model.log_prior_odds) + "\n";
    append_array(out, "coefficients", model.coefficients);
    append_array(out, "mu_hat", model.mu_hat);
    append_array(out, "sigma2_hat", model.sigma2_hat);
    append_array(out, "f_support", model.f_hat.support);
    append_array(out, "f_weights", model.f_hat.weights);
    append_array(out, "g_support", model.g_hat.support);
    append_array(out, "g_weights", model.g_hat.weights);
    return out;
}

FittedModel parse_model(std::istream& in, const std::string& source_name) {
    const KeyValueDoc doc(in, source_name);
    const double version = doc.number("format_version");
    if (version != 1.0) {
        throw validation_error(source_name + ": unsupported format_version " + doc.word("format_version"));
    }

    FittedModel model;
    model.method = parse_method(doc.word("method"));
    model.p = to_count(doc.number("p"), source_name + ": p");
    model.n1 = to_count(doc.number("n1"), source_name + ": n1");
    model.n2 = to_count(doc.number("n2"), source_name + ": n2");
    model.dof = static_cast<int>(doc.number("dof"));
    model.var_scale = doc.number("var_scale");
    model.intercept = doc.number("intercept");
    model.log_prior_odds = doc.number("log_prior_odds");
    model.coefficients = doc.array("coefficients");
    model.mu_hat = doc.array("mu_hat");
    model.sigma2_hat = doc.array("sigma2_hat");
    model.f_hat.support = doc.array("f_support");
    model.f_hat.weights = doc.array("f_weights");
    model.g_hat.support = doc.array("g_support");
    model.g_hat.weights = doc.array("g_weights");

    if (model.coefficients.size() != model.p || model.mu_hat.size() != model.p ||
        model.sigma2_hat.size() != model.p) {
        throw validation_error(source_name + ": coefficient arrays do not match p");
    }
    if (model.f_hat.support.size() != model.f_hat.weights.size() ||
        model.g_hat.support.size() != model.g_hat.weights.size()) {
        throw validation_error(source_name + ": mixing support/weight lengths differ");
    }
    return model;
}

void save_model(const FittedModel& model, const std::string& path) {
    write_file_atomic(path, serialize_model(model));
}

FittedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw validation_error("cannot open model file '" + path + "'");
    }
    return parse_model(in, path);
}

} // namespace mva
