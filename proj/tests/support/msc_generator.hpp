#pragma once

#include <random>
#include <string>

namespace fragmentc::testing {

/// Random well-formed chart: instances with send, receive and condition
/// events (conditions may be shared and carry an embedded expression),
/// optional methods, comments, and random whitespace between tokens.
std::string random_chart(std::mt19937& rng);

}  // namespace fragmentc::testing
