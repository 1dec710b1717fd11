#pragma once

#include <stdexcept>
#include <string>

namespace volcp {

// Precondition or configuration violation (bad argument, out-of-range option).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input data that cannot be processed (too short, malformed, inconsistent).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File-system or parse failure at the I/O boundary.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw ParameterError(msg);
}

inline void require_data(bool ok, const std::string& msg) {
    if (!ok) throw DataError(msg);
}

}  // namespace detail
}  // namespace volcp
