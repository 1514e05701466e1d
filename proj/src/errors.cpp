#include "vwave/errors.hpp"

namespace vwave {

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Usage: return 2;
        case ErrorKind::Validation:
        case ErrorKind::WindowExceeded: return 3;
        case ErrorKind::ClassBreach:
        case ErrorKind::DomainOfDependence:
        case ErrorKind::SourceAssembly:
        case ErrorKind::Contraction: return 4;
        case ErrorKind::Reconstruction: return 5;
    }
    return 1;
}

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Usage: return "usage";
        case ErrorKind::Validation: return "validation";
        case ErrorKind::WindowExceeded: return "window";
        case ErrorKind::ClassBreach: return "class-breach";
        case ErrorKind::DomainOfDependence: return "domain-of-dependence";
        case ErrorKind::SourceAssembly: return "source-assembly";
        case ErrorKind::Contraction: return "contraction";
        case ErrorKind::Reconstruction: return "reconstruction";
    }
    return "unknown";
}

}  // namespace vwave
