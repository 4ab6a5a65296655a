#include "mva/csv.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mva/errors.hpp"
#include "mva/io_util.hpp"
#include "mva/numeric.hpp"

namespace mva {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            return out;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

double parse_number(const std::string& token, const std::string& source, std::size_t line_no) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size()) {
        throw validation_error(source + ", line " + std::to_string(line_no) + ": malformed number '" + token +
                               "'");
    }
    return v;
}

} // namespace

std::vector<std::vector<std::string>> read_csv_rows(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        rows.push_back(split_line(line));
    }
    return rows;
}

FeatureTable read_feature_table(std::istream& in, const std::string& source_name) {
    std::string line;
    std::size_t line_no = 0;

    // Header. Blank leading lines are skipped.
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        header = split_line(line);
        break;
    }
    if (header.empty()) {
        throw validation_error(source_name + ": missing header row");
    }

    FeatureTable table;
    table.has_label_column = header.front() == "label";
    const std::size_t first_feature = table.has_label_column ? 1 : 0;
    table.feature_names.assign(header.begin() + static_cast<std::ptrdiff_t>(first_feature), header.end());
    const std::size_t p = table.feature_names.size();
    table.values.cols = p;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_line(line);
        if (fields.size() != header.size()) {
            throw validation_error(source_name + ", line " + std::to_string(line_no) + ": expected " +
                                   std::to_string(header.size()) + " fields, got " +
                                   std::to_string(fields.size()));
        }
        if (table.has_label_column) {
            const double y = parse_number(fields[0], source_name, line_no);
            if (y != std::floor(y)) {
                throw validation_error(source_name + ", line " + std::to_string(line_no) +
                                       ": label must be an integer, got '" + fields[0] + "'");
            }
            table.labels.push_back(static_cast<int>(y));
        }
        for (std::size_t j = 0; j < p; ++j) {
            table.values.data.push_back(parse_number(fields[first_feature + j], source_name, line_no));
        }
        ++table.values.rows;
    }
    return table;
}

FeatureTable read_feature_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw validation_error("cannot open '" + path + "'");
    }
    return read_feature_table(in, path);
}

LabeledMatrix read_labeled_csv(std::istream& in, const std::string& source_name) {
    FeatureTable table = read_feature_table(in, source_name);
    if (!table.has_label_column) {
        throw validation_error(source_name + ": first column must be 'label'");
    }
    LabeledMatrix data;
    data.rows = table.values.rows;
    data.cols = table.values.cols;
    data.values = std::move(table.values.data);
    data.labels = std::move(table.labels);
    data.feature_names = std::move(table.feature_names);
    return data;
}

LabeledMatrix read_labeled_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw validation_error("cannot open '" + path + "'");
    }
    return read_labeled_csv(in, path);
}

std::vector<std::string> default_feature_names(std::size_t p) {
    std::vector<std::string> names;
    names.reserve(p);
    for (std::size_t j = 1; j <= p; ++j) {
        names.push_back("f" + std::to_string(j));
    }
    return names;
}

void write_labeled_csv(const LabeledMatrix& data, const std::string& path) {
    const std::vector<std::string> names =
        data.feature_names.empty() ? default_feature_names(data.cols) : data.feature_names;
    std::string out = "label";
    for (const auto& n : names) {
        out += ',';
        out += n;
    }
    out += '\n';
    for (std::size_t i = 0; i < data.rows; ++i) {
        out += std::to_string(data.labels[i]);
        const auto row = data.row(i);
        for (double v : row) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    write_file_atomic(path, out);
}

void write_predictions_csv(std::span<const double> scores, std::span<const int> labels,
                           const std::string& path) {
    std::string out = "row,score,label\n";
    for (std::size_t i = 0; i < scores.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += format_double(scores[i]);
        out += ',';
        out += std::to_string(labels[i]);
        out += '\n';
    }
    write_file_atomic(path, out);
}

void write_eval_replicates_csv(const EvalReport& report, const std::string& path) {
    std::string out = "scenario_id,method,replicate,misclassification\n";
    for (const auto& rec : report.records) {
        out += report.scenario_id;
        out += ',';
        out += method_name(rec.method);
        out += ',';
        out += std::to_string(rec.replicate);
        out += ',';
        out += format_double(rec.misclassification);
        out += '\n';
    }
    write_file_atomic(path, out);
}

void write_eval_aggregate_csv(const EvalReport& report, const std::string& path) {
    std::string out = "scenario_id,method,mean,sd\n";
    for (const auto& agg : report.aggregates) {
        out += report.scenario_id;
        out += ',';
        out += method_name(agg.method);
        out += ',';
        out += format_double(agg.mean);
        out += ',';
        out += format_double(agg.sd);
        out += '\n';
    }
    write_file_atomic(path, out);
}

void write_screening_csv(const ScreeningResult& result, std::span<const std::string> feature_names,
                         const std::string& path) {
    if (feature_names.size() != result.t_stats.size()) {
        throw validation_error("write_screening_csv: feature name count mismatch");
    }
    std::string out = "feature,t,p,kept\n";
    std::size_t next_kept = 0;
    for (std::size_t j = 0; j < feature_names.size(); ++j) {
        const bool kept = next_kept < result.kept_indices.size() && result.kept_indices[next_kept] == j;
        if (kept) {
            ++next_kept;
        }
        out += feature_names[j];
        out += ',';
        out += format_double(result.t_stats[j]);
        out += ',';
        out += format_double(result.p_values[j]);
        out += ',';
        out += kept ? '1' : '0';
        out += '\n';
    }
    write_file_atomic(path, out);
}

void write_density_csv(std::span<const double> v, std::span<const double> density, const std::string& path) {
    if (v.size() != density.size()) {
        throw validation_error("write_density_csv: column length mismatch");
    }
    std::string out = "v,density\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += format_double(v[i]);
        out += ',';
        out += format_double(density[i]);
        out += '\n';
    }
    write_file_atomic(path, out);
}

} // namespace mva
