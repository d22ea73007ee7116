#pragma once

#include <string>
#include <string_view>

namespace mn {

/// Three-valued truth state for facts that may be unsettled.
enum class Tri { holds, fails, unknown };

/// Whitehead-torsion state: only vanishing is ever asserted positively.
enum class TorsionState { zero, nonzero, unknown };

std::string to_string(Tri t);
std::string to_string(TorsionState t);
Tri tri_from_string(std::string_view s);
TorsionState torsion_from_string(std::string_view s);

} // namespace mn
