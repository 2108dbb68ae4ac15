#include "adaptdet/error.hpp"

namespace adaptdet {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::definiteness: return "definiteness error";
        case ErrorKind::rank: return "rank error";
        case ErrorKind::dimension: return "dimension error";
        case ErrorKind::parameter: return "parameter error";
        case ErrorKind::geometry: return "geometry error";
        case ErrorKind::insufficient_training: return "insufficient training";
        case ErrorKind::infeasible: return "infeasible";
        case ErrorKind::domain: return "domain error";
        case ErrorKind::unsupported: return "unsupported";
        case ErrorKind::insufficient_trials: return "insufficient trials";
        case ErrorKind::contract: return "contract violation";
        case ErrorKind::io: return "I/O error";
        case ErrorKind::config: return "configuration error";
    }
    return "error";
}

}  // namespace adaptdet
