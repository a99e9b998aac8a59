#pragma once
// Randomized invariant suites behind `qlat verify`.

#include "qlat/commands.hpp"

namespace qlat::suites {

void lattice(const RunConfig& cfg, Report& r);
void bipartite(const RunConfig& cfg, Report& r);
void chsh(const RunConfig& cfg, Report& r);
void measurement(const RunConfig& cfg, Report& r);
void phasespace(const RunConfig& cfg, Report& r);

}  // namespace qlat::suites
