#ifndef RELAXPART_RELAXPART_HPP
#define RELAXPART_RELAXPART_HPP

#include "relaxpart/hmetis.hpp"
#include "relaxpart/hypergraph.hpp"
#include "relaxpart/kernel.hpp"
#include "relaxpart/recursive.hpp"
#include "relaxpart/relaxation.hpp"
#include "relaxpart/rounding.hpp"
#include "relaxpart/solver.hpp"
#include "relaxpart/spectral.hpp"

#endif  // RELAXPART_RELAXPART_HPP
