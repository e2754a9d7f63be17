#pragma once

#include <stdexcept>
#include <string>

namespace edgefed {

/// Invalid user input: bad config values, out-of-range parameters.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Broken internal invariant. Seeing one of these means a bug in the simulator.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace edgefed
