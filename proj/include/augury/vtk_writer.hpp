#pragma once

#include "augury/integrator.hpp"

#include <string>

namespace augury {

// Legacy ASCII unstructured-grid snapshot: current coordinates, tetrahedra,
// nodal velocity vectors, and body ids. Byte-stable for identical states.
void write_snapshot(const SimState& state, const std::string& path);

}  // namespace augury
