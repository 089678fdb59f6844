#pragma once

#include <stdexcept>
#include <string>

namespace pwmlab {

// Every throw carries the module it originated in so the CLI can emit a
// machine-readable error record.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& message)
        : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

[[noreturn]] inline void fail(const char* module, const std::string& message) {
    throw Error(module, message);
}

} // namespace pwmlab
