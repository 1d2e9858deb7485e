#pragma once

#include <iosfwd>
#include <string>

#include "mildflow/field.hpp"

namespace mildflow {

// Text spectral dump, used for test fixtures and `mildflow corpus`.
//
//   # mildflow-spectral v1
//   grid <dim> <n> <L>
//   components <c> divergence_free <0|1>
//   component <j>
//   <m1> <m2> <m3> <re> <im>      one line per nonzero coefficient
//   ...
//
// Modes are signed lattice indices (m3 = 0 in 2D); values are printed with
// 17 significant digits so a dump reloads bit-exactly.

void write_spectral_dump(std::ostream& os, const VectorField& u);
VectorField read_spectral_dump(std::istream& is);

void save_spectral_dump(const std::string& path, const VectorField& u);
VectorField load_spectral_dump(const std::string& path);

}  // namespace mildflow
