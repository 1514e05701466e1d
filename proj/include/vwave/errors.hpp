#pragma once

#include <stdexcept>
#include <string>

namespace vwave {

enum class ErrorKind {
    Usage,
    Validation,
    WindowExceeded,
    ClassBreach,
    DomainOfDependence,
    SourceAssembly,
    Contraction,
    Reconstruction,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Process exit status used by the command line front end.
int exit_code(ErrorKind kind) noexcept;

const char* to_string(ErrorKind kind) noexcept;

}  // namespace vwave
