#pragma once

#include <stdexcept>
#include <string>

namespace cotransport {

// Invalid or inconsistent scenario/model description.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Failure while advancing a simulation or solving a controller step.
class RuntimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace cotransport
