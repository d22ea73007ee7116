#include "mn/tri.hpp"

#include "mn/errors.hpp"

namespace mn {

std::string to_string(Tri t) {
    switch (t) {
        case Tri::holds: return "holds";
        case Tri::fails: return "fails";
        default: return "unknown";
    }
}

std::string to_string(TorsionState t) {
    switch (t) {
        case TorsionState::zero: return "zero";
        case TorsionState::nonzero: return "nonzero";
        default: return "unknown";
    }
}

Tri tri_from_string(std::string_view s) {
    if (s == "holds" || s == "yes" || s == "true") return Tri::holds;
    if (s == "fails" || s == "no" || s == "false") return Tri::fails;
    if (s == "unknown") return Tri::unknown;
    throw data_error("invalid three-valued state: " + std::string(s));
}

TorsionState torsion_from_string(std::string_view s) {
    if (s == "zero") return TorsionState::zero;
    if (s == "nonzero") return TorsionState::nonzero;
    if (s == "unknown") return TorsionState::unknown;
    throw data_error("invalid torsion state: " + std::string(s));
}

} // namespace mn
