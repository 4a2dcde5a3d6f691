#pragma once

#include "pgroups/structure.hpp"

#include <vector>

namespace pgroups {

// The p-covering group of G: one new central generator of order p per
// non-defining relation of weight <= pclass+1, cut down by the consistency
// equations. The multiplicator M is spanned by the surviving tails (the last
// mu generators of the cover); the nucleus is P_c(cover) <= M.
struct CoverData {
  PcGroup cover;
  int base_ngens = 0;
  int mu = 0;
  int nu = 0;
  // Defining relation of each surviving tail, in base generator indices.
  std::vector<Definition> tail_rel;
  // Nucleus as reduced row-echelon rows over F_p in tail coordinates.
  std::vector<std::vector<std::uint8_t>> nucleus;

  Gen tail_gen(int f) const { return base_ngens + f; }
  // Multiplicator coordinates of a cover element lying in M.
  std::vector<std::uint8_t> m_coords(const NormalWord &w) const;
};

CoverData p_cover(const PcGroup &G);

int relation_rank(const PcGroup &G);
int nuclear_rank(const PcGroup &G);

// Reduced row echelon form over F_p; returns pivot columns.
std::vector<int> rref_mod_p(std::vector<std::vector<std::uint8_t>> &rows,
                            int p);
// Rank of the stacked rows over F_p.
int rank_mod_p(std::vector<std::vector<std::uint8_t>> rows, int p);

} // namespace pgroups
