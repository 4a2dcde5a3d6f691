#include "pgroups/sigma.hpp"

#include "pgroups/artin.hpp"

namespace pgroups {

bool is_sigma_group(const PcGroup &G, const AutGroup &auts) {
  if (abelian_invariants(G) != Partition{{1, 1}})
    throw std::invalid_argument(
        "sigma test supports only G/G' of type (p,p)");
  const int p = G.prime();
  FpMat minusI = FpMat::identity(2, p);
  minusI.at(0, 0) = static_cast<std::uint8_t>(p - 1);
  minusI.at(1, 1) = static_cast<std::uint8_t>(p - 1);
  return auts.top_contains(minusI);
}

Classification classify(const PcGroup &G, const CoverData &cover,
                        const AutGroup &auts) {
  Classification c;
  c.d1 = generator_rank(G);
  c.d2 = cover.mu;
  c.is_sigma = is_sigma_group(G, auts);
  c.is_schur = (c.d2 == c.d1);
  c.is_schur_sigma = c.is_schur && c.is_sigma;
  c.dl = derived_length(G);
  c.is_metabelian = c.dl <= 2;
  c.is_non_metabelian = c.dl >= 3;
  return c;
}

} // namespace pgroups
