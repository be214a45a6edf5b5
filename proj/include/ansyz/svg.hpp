#pragma once

#include <string>

namespace ansyz::svg {

// Byte-deterministic SVG renderings of the standing figures: the base with
// its walls, the thimble lifts on the cut-open cylinder with the fiber over
// zero marked, and the fiber-index stacks of the wrapped generators.
std::string plot_base(int n);
std::string plot_thimbles(int n, long k_max);
std::string plot_wrapping(int n, long w);

} // namespace ansyz::svg
