#pragma once

// Named weight families: "const", "power:a", "twovalue:u,v", "file:<path>".

#include <string>

#include "bflab/dyadic.hpp"
#include "bflab/planar.hpp"

namespace bflab::weights {

// |x - 1/2|^a (midpoint samples), u on [0,1/2) and v on [1/2,1), or one sample per line.
dyadic::DyadicWeight dyadic_weight(const std::string& spec, int depth);

// |z|^a (the origin sample uses |z| = h/2), u for x < 0 and v for x >= 0, or a field file.
planar::PlanarWeight planar_weight(const std::string& spec, double p, int n, double L = 1.0);

}  // namespace bflab::weights
