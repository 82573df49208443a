#pragma once

#include <stdexcept>

namespace hsrm {

// Raised for configuration-file problems: parse failures, unknown fields,
// and domain violations. The CLI maps it to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hsrm
