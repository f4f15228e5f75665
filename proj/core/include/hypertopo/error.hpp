#pragma once

#include <stdexcept>
#include <string>

namespace hypertopo {

/// Bad user input: malformed spec, invalid parameters, unknown keys.
class spec_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A builder was asked for more nodes than the resource guard allows.
class resource_limit_error : public std::length_error {
public:
    using std::length_error::length_error;
};

/// The requested graph cannot be produced (disconnected, mismatched domains).
class construction_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine failed to converge or produced an invalid result.
class numeric_error : public std::runtime_error {
public:
    numeric_error(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace hypertopo
