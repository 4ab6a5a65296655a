#ifndef MVA_CSV_HPP
#define MVA_CSV_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mva/matrix.hpp"
#include "mva/preprocess.hpp"
#include "mva/simgen.hpp"
#include "mva/stats.hpp"

namespace mva {

// Comma-separated numeric table with a header row. When the first header cell
// is `label` the column holds integer class labels and the rest are features.
struct FeatureTable {
    bool has_label_column = false;
    Matrix values;
    std::vector<int> labels; // parallel to rows when has_label_column
    std::vector<std::string> feature_names;
};

FeatureTable read_feature_table(std::istream& in, const std::string& source_name);
FeatureTable read_feature_table_file(const std::string& path);

// Raw rows through the same tokenizer the typed readers use (comma split,
// whitespace trim, CRLF and blank-line tolerant). Every CSV this library
// emits reads back rectangular through this.
std::vector<std::vector<std::string>> read_csv_rows(std::istream& in);

// Requires the label column; structural problems raise validation_error with
// the offending line number.
LabeledMatrix read_labeled_csv(std::istream& in, const std::string& source_name);
LabeledMatrix read_labeled_csv_file(const std::string& path);

std::vector<std::string> default_feature_names(std::size_t p); // f1..fp
void write_labeled_csv(const LabeledMatrix& data, const std::string& path);

// Report writers; every file is written atomically with 17-significant-digit
// numbers, so reruns are byte-identical.
void write_predictions_csv(std::span<const double> scores, std::span<const int> labels,
                           const std::string& path);
void write_eval_replicates_csv(const EvalReport& report, const std::string& path);
void write_eval_aggregate_csv(const EvalReport& report, const std::string& path);
void write_screening_csv(const ScreeningResult& result, std::span<const std::string> feature_names,
                         const std::string& path);
void write_density_csv(std::span<const double> v, std::span<const double> density, const std::string& path);

} // namespace mva

#endif
