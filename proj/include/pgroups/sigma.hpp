#pragma once

#include "pgroups/autgrp.hpp"

namespace pgroups {

struct Classification {
  int d1 = 0;
  int d2 = 0;
  bool is_sigma = false;
  bool is_schur = false;       // d2 == d1
  bool is_schur_sigma = false;
  int dl = 0;
  bool is_metabelian = false;     // dl <= 2
  bool is_non_metabelian = false; // dl >= 3
};

// True iff -identity on G/G' lies in the image of Aut(G) -> GL(2,p). Valid
// because every group in scope has G/G' elementary bicyclic, where G/G' and
// G/Phi(G) coincide; guarded.
bool is_sigma_group(const PcGroup &G, const AutGroup &auts);

Classification classify(const PcGroup &G, const CoverData &cover,
                        const AutGroup &auts);

} // namespace pgroups
