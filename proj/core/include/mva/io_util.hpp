#ifndef MVA_IO_UTIL_HPP
#define MVA_IO_UTIL_HPP

#include <string>

namespace mva {

// Writes content to a sibling temp file, then renames over path.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace mva

#endif
