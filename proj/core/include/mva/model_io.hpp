#ifndef MVA_MODEL_IO_HPP
#define MVA_MODEL_IO_HPP

#include <iosfwd>
#include <string>

#include "mva/classifier.hpp"

namespace mva {

// Self-describing `key: value` text document, one key per line, arrays as
// space-separated decimals with 17 significant digits (so every finite value
// round-trips bit-exactly). First line is `format_version: 1`.
std::string serialize_model(const FittedModel& model);
FittedModel parse_model(std::istream& in, const std::string& source_name);

void save_model(const FittedModel& model, const std::string& path); // atomic (temp then rename)
FittedModel load_model(const std::string& path);

} // namespace mva

#endif
