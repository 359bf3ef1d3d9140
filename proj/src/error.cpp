#include "sphull/error.hpp"

namespace sphull {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Validation: return "validation";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::ClassMismatch: return "class_mismatch";
        case ErrorKind::Moment: return "moment";
        case ErrorKind::Pole: return "pole";
        case ErrorKind::Quadrature: return "quadrature";
        case ErrorKind::Degeneracy: return "degeneracy";
        case ErrorKind::UnsupportedScale: return "unsupported_scale";
        case ErrorKind::InsufficientData: return "insufficient_data";
        case ErrorKind::NotGumbel: return "not_gumbel";
        case ErrorKind::Join: return "join";
        case ErrorKind::Io: return "io";
        case ErrorKind::Diagnostic: return "diagnostic";
    }
    return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace sphull
