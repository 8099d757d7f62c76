#pragma once

// Umbrella header: exact Reidemeister torsion of based complexes, circle-valued
// Morse data, orbit zeta functions, cyclic-cover homology, Novikov-ring
// invariants, and the verification harnesses tying them together.

#include "torsionlab/complex.hpp"
#include "torsionlab/cover.hpp"
#include "torsionlab/io.hpp"
#include "torsionlab/laurent.hpp"
#include "torsionlab/matrix.hpp"
#include "torsionlab/morse.hpp"
#include "torsionlab/novikov.hpp"
#include "torsionlab/numeric.hpp"
#include "torsionlab/orbits.hpp"
#include "torsionlab/rational_function.hpp"
#include "torsionlab/series.hpp"
#include "torsionlab/smith.hpp"
#include "torsionlab/unit_class.hpp"
#include "torsionlab/verify.hpp"

namespace torsionlab {
inline constexpr const char* library_version = "1.0.0";
}
