#ifndef MVA_ERRORS_HPP
#define MVA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mva {

// Input data fails a documented precondition: bad labels, class counts,
// non-finite values, malformed files, shape mismatches, degenerate data.
// The CLI maps this to exit code 2; other exceptions map to 1.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mva

#endif
