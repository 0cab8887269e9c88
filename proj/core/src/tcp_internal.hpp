#pragma once

// Internal helpers shared between the solvers and the level-set probe.

#include <optional>

#include "tcpkit/tcp.hpp"

namespace tcpkit::detail {

// Guesses the zero-slack set from an iterate and drives the on-support
// slacks to zero by Newton; returns a candidate with x >= -tol off the
// guess rejected.
std::optional<Vec> complementarity_polish(const TCPInstance& inst, const Vec& x, double tol);

}  // namespace tcpkit::detail
