#pragma once

#include <stdexcept>
#include <string>

namespace fht {

// Thrown when a computation would exceed a configured size cap
// (ball enumeration, convolution support growth, truncation size).
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fht
