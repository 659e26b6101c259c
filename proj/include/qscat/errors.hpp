#ifndef QSCAT_ERRORS_HPP
#define QSCAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qscat {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad user input: malformed config, out-of-range parameters.
class config_error : public error {
public:
    explicit config_error(const std::string& msg) : error(msg) {}
};

/// A numerical contract was violated (invariant breach, failed solve).
class numeric_error : public error {
public:
    explicit numeric_error(const std::string& msg) : error(msg) {}
};

/// A contour deformation would cross a singularity of a state or
/// observable continuation, or the input is not continuable at all.
class analyticity_error : public error {
public:
    explicit analyticity_error(const std::string& msg) : error(msg) {}
};

} // namespace qscat

#endif
