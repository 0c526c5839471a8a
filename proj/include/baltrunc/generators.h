#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "baltrunc/statespace.h"

namespace baltrunc {

/// Named numeric parameters; missing keys take the family default.
///
///   random_stable:      shift (0.5), inputs (1), outputs (1)
///   mass_spring_chain:  mass (1), stiffness (1), damping (0.1)
///   rc_ladder:          resistance (1), capacitance (1)
using GeneratorParams = std::map<std::string, double, std::less<>>;

/// A = G − (ρ(G) + shift)·I with G, B, C standard normal from `seed`.
StateSpaceModel random_stable(int n, int inputs, int outputs, double shift,
                              std::uint64_t seed);

/// `masses` bodies in a line; mass 1 is tied to a wall, each neighbouring
/// pair by a spring and a parallel damper. Force on mass 1 in, position of
/// the last mass out. State (positions, velocities), order 2·masses.
StateSpaceModel mass_spring_chain(int masses, double mass, double stiffness,
                                  double damping);

/// `sections` series-R / shunt-C stages driven by a voltage source; the
/// output is the last node voltage.
StateSpaceModel rc_ladder(int sections, double resistance, double capacitance);

/// Dispatch on kind ∈ {random_stable, mass_spring_chain, rc_ladder}.
StateSpaceModel gen_example(std::string_view kind, int size,
                            const GeneratorParams& params, std::uint64_t seed);

}  // namespace baltrunc
