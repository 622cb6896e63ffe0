#ifndef CONEGREEN_ERRORS_HPP
#define CONEGREEN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conegreen {

// Bad input: malformed files, violated invariants, broken preconditions.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// An iteration failed to converge or a computed certificate is unusable.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace conegreen

#endif
