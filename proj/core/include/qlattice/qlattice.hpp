#pragma once

#include "qlattice/bipartite.hpp"
#include "qlattice/chsh.hpp"
#include "qlattice/errors.hpp"
#include "qlattice/hilbert.hpp"
#include "qlattice/lattice.hpp"
#include "qlattice/measurement.hpp"
#include "qlattice/phasespace.hpp"
#include "qlattice/rng.hpp"
#include "qlattice/tolerances.hpp"
