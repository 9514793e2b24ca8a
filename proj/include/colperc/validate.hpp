#pragma once

#include <cstdint>
#include <ostream>

namespace colperc {

// Oracle cross-check suite: annulus detector vs winding oracle, Menger flow vs
// cut enumeration, exhaustive small-rectangle duality, and the Russo
// finite-difference identity. Prints one line per check; returns true iff all
// pass. `sample_scale` shrinks the randomized check sizes for smoke runs.
bool run_validation(std::ostream& report, std::uint64_t master_seed = 1,
                    double sample_scale = 1.0);

}  // namespace colperc
