#pragma once

// Text form of problem data used on the command line.
//   spatial: zero | pow:P | sin:N
//   forcing: zero | const:<spatial> | sep:<spatial>:Q   (f = X(x) t^Q)

#include <string>
#include <string_view>

#include "core/dg_solver.hpp"
#include "core/fem1d.hpp"

namespace fracwave {

/// ArgumentError on malformed text, DomainError when the parsed data is invalid.
SpatialFunctionSpec parse_spatial_spec(std::string_view text);
ForcingSpec parse_forcing_spec(std::string_view text);

}  // namespace fracwave
