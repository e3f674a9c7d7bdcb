#pragma once

#include "rsym/presentation.hpp"

namespace rsym {

// <x, y | x^2, y^m, (xy)^n> over C2 * Cm
PreprocessResult triangle_group(int m, int n);

// <x, y | x^2, y^3, (xy)^m, (xyxY)^n> over C2 * C3
PreprocessResult two_three_group(int m, int n);

// Free product of the given factors with no relators yet; letters are
// looked up by name in the returned table.
FreeProductSpec c2_cm_spec(int m);
FreeProductSpec free_group_spec(int rank);

} // namespace rsym
