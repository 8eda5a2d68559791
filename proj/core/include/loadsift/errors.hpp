#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace loadsift {

/// How the CLI maps a failure to an exit code: usage problems exit with 1,
/// data/model problems with 2.
enum class ErrorClass { usage, data };

/// Every failure in the library carries a stable kebab-case cause slug so the
/// CLI can emit a single machine-readable line (`error: <cause>: <detail>`).
class Error : public std::runtime_error {
public:
    Error(std::string cause, const std::string& detail,
          ErrorClass cls = ErrorClass::data)
        : std::runtime_error(cause + ": " + detail),
          cause_(std::move(cause)),
          class_(cls) {}

    const std::string& cause() const noexcept { return cause_; }
    ErrorClass error_class() const noexcept { return class_; }

private:
    std::string cause_;
    ErrorClass class_;
};

[[noreturn]] inline void fail(std::string cause, const std::string& detail,
                              ErrorClass cls = ErrorClass::data) {
    throw Error(std::move(cause), detail, cls);
}

} // namespace loadsift
