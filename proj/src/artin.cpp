#include "pgroups/artin.hpp"

#include <algorithm>
#include <sstream>

namespace pgroups {

std::string ArtinPattern::kappa_str() const {
  std::string s;
  for (int k : kappa)
    s += (k == kTrivialKernel) ? 't' : static_cast<char>('0' + k);
  return s;
}

std::string ArtinPattern::tau_str() const {
  std::ostringstream os;
  for (size_t i = 0; i < tau.size(); ++i) {
    if (i)
      os << ",";
    os << tau[i].str();
  }
  return os.str();
}

std::vector<Span> maximal_subgroups(const PcGroup &G) {
  if (generator_rank(G) != 2)
    throw std::invalid_argument("maximal_subgroups requires generator rank 2");
  const int p = G.prime();
  // the closed Frattini span is shared; each subgroup adds one line
  Span phi = frattini_subgroup(G);
  std::vector<Span> out;
  out.reserve(p + 1);
  auto make = [&](int a, int b) {
    Span H = phi;
    NormalWord v = G.identity();
    if (a)
      G.mul_gen(v, 0, a);
    if (b)
      G.mul_gen(v, 1, b);
    H.add_generator(v);
    return H;
  };
  for (int i = 1; i <= p; ++i)
    out.push_back(make(1, i - 1));
  out.push_back(make(0, 1));
  for (const auto &H : out)
    if (H.log_size() != G.ngens() - 1)
      throw std::logic_error("maximal subgroup has wrong index");
  return out;
}

NormalWord transfer(const PcGroup &G, const Span &H, const NormalWord &g) {
  const int p = G.prime();
  if (!H.contains(g))
    return G.power_of(g, p);
  // transversal generator: any generator outside H
  NormalWord r;
  if (!H.contains(G.generator(0)))
    r = G.generator(0);
  else if (!H.contains(G.generator(1)))
    r = G.generator(1);
  else
    throw std::invalid_argument("transfer needs a proper subgroup");
  // product of the iterated conjugates g^(r^k), k = 0..p-1
  NormalWord rinv = G.inverse(r);
  NormalWord prod = g;
  NormalWord conj = g;
  for (int k = 1; k < p; ++k) {
    NormalWord t = rinv;
    G.mul(t, conj);
    G.mul(t, r);
    conj = std::move(t);
    G.mul(prod, conj);
  }
  if (!H.contains(prod))
    throw std::logic_error("transfer image escaped the subgroup");
  return prod;
}

TransferSlot transfer_slot(const PcGroup &G, const Span &H) {
  // Guard: kernel typing below reads lines of G/G' of type (p,p).
  if (abelian_invariants(G) != Partition{{1, 1}})
    throw std::invalid_argument("transfer kernel typing needs G/G' of type (p,p)");
  return transfer_slot_shared(G, H, commutator_subgroup(G, H, H));
}

TransferSlot transfer_slot_shared(const PcGroup &G, const Span &H,
                                  const Span &Hder_in) {
  const int p = G.prime();
  TransferSlot out;
  out.tau = abelian_invariants(G, H);
  const Span &Hder = Hder_in;
  // transfer is a homomorphism on G/G': two images determine the kernel scan
  NormalWord t1 = transfer(G, H, G.generator(0));
  NormalWord t2 = transfer(G, H, G.generator(1));
  auto in_kernel = [&](int a, int b) {
    NormalWord x = G.power_of(t1, a);
    G.mul(x, G.power_of(t2, b));
    return Hder.contains(x);
  };
  std::vector<std::pair<int, int>> kernel_pts;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      if (!a && !b)
        continue;
      if (in_kernel(a, b))
        kernel_pts.push_back({a, b});
    }
  if (kernel_pts.size() == static_cast<size_t>(p * p - 1)) {
    out.kappa = 0;
  } else if (kernel_pts.empty()) {
    out.kappa = kTrivialKernel;
  } else if (kernel_pts.size() == static_cast<size_t>(p - 1)) {
    // a line; identify the maximal subgroup carrying it
    auto [a, b] = kernel_pts.front();
    if (a != 0) {
      int ainv = 1;
      for (int k = 1; k < p; ++k)
        if (k * a % p == 1)
          ainv = k;
      out.kappa = (b * ainv) % p + 1;
    } else {
      out.kappa = p + 1;
    }
  } else {
    throw std::logic_error("transfer kernel is not a subgroup of (p,p)");
  }
  return out;
}

std::vector<int> transfer_kernel_type(const PcGroup &G) {
  return artin_pattern(G).kappa;
}

ArtinPattern artin_pattern(const PcGroup &G) {
  if (abelian_invariants(G) != Partition{{1, 1}})
    throw std::invalid_argument("transfer kernel typing needs G/G' of type (p,p)");
  const int p = G.prime();
  Span phi = frattini_subgroup(G);
  // derived subgroup of each maximal H = <v, Phi>: the [Phi,Phi] part with
  // its normal closure is shared, only [v, Phi] rows differ
  Span phider(G);
  phider.make_normal();
  {
    auto rows = phi.basis();
    for (size_t a = 1; a < rows.size(); ++a)
      for (size_t b = 0; b < a; ++b)
        phider.add_generator(G.commutator(rows[a], rows[b]));
  }
  ArtinPattern ap;
  auto do_line = [&](int a, int b) {
    NormalWord v = G.identity();
    if (a)
      G.mul_gen(v, 0, a);
    if (b)
      G.mul_gen(v, 1, b);
    Span H = phi;
    H.add_generator(v);
    if (H.log_size() != G.ngens() - 1)
      throw std::logic_error("maximal subgroup has wrong index");
    Span Hder = phider;
    for (const auto &w : phi.basis())
      Hder.add_generator(G.commutator(v, w));
    TransferSlot slot = transfer_slot_shared(G, H, Hder);
    ap.kappa.push_back(slot.kappa);
    ap.tau.push_back(std::move(slot.tau));
  };
  for (int i = 1; i <= p; ++i)
    do_line(1, i - 1);
  do_line(0, 1);
  return ap;
}

ArtinPattern relabel(const ArtinPattern &ap, const std::vector<int> &perm) {
  const size_t m = ap.kappa.size();
  ArtinPattern out;
  out.kappa.assign(m, 0);
  out.tau.assign(m, {});
  for (size_t i = 0; i < m; ++i) {
    int v = ap.kappa[i];
    out.kappa[perm[i]] = (v >= 1) ? perm[v - 1] + 1 : v;
    out.tau[perm[i]] = ap.tau[i];
  }
  out.normalized = false;
  return out;
}

namespace {

// sentinel kernels order after every line label
int kappa_rank(int v, int m) { return v == kTrivialKernel ? m + 2 : v; }

bool pattern_less(const ArtinPattern &a, const ArtinPattern &b) {
  const size_t m = a.kappa.size();
  for (size_t i = 0; i < m; ++i) {
    if (a.tau[i] != b.tau[i])
      return a.tau[i] < b.tau[i];
    int ka = kappa_rank(a.kappa[i], static_cast<int>(m));
    int kb = kappa_rank(b.kappa[i], static_cast<int>(m));
    if (ka != kb)
      return ka < kb;
  }
  return false;
}

void foreach_permutation(size_t m,
                         const std::function<void(const std::vector<int> &)> &fn) {
  std::vector<int> perm(m);
  for (size_t i = 0; i < m; ++i)
    perm[i] = static_cast<int>(i);
  do {
    fn(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

} // namespace

ArtinPattern normalize(const ArtinPattern &ap) {
  if (ap.normalized)
    return ap;
  const size_t m = ap.kappa.size();
  ArtinPattern best;
  bool have = false;
  std::vector<int> inv(m);
  foreach_permutation(m, [&](const std::vector<int> &perm) {
    for (size_t i = 0; i < m; ++i)
      inv[perm[i]] = static_cast<int>(i);
    if (have) {
      // lazy comparison against the incumbent, position by position
      int cmp = 0;
      for (size_t pos = 0; pos < m && cmp == 0; ++pos) {
        size_t i = inv[pos];
        if (ap.tau[i] != best.tau[pos]) {
          cmp = ap.tau[i] < best.tau[pos] ? -1 : 1;
          break;
        }
        int v = ap.kappa[i];
        int kv = (v >= 1) ? perm[v - 1] + 1 : v;
        int ka = kappa_rank(kv, static_cast<int>(m));
        int kb = kappa_rank(best.kappa[pos], static_cast<int>(m));
        if (ka != kb)
          cmp = ka < kb ? -1 : 1;
      }
      if (cmp >= 0)
        return;
    }
    best = relabel(ap, perm);
    have = true;
  });
  best.normalized = true;
  return best;
}

bool partition_leq(const Partition &a, const Partition &b) {
  for (size_t i = 0; i < a.parts.size(); ++i) {
    int bi = i < b.parts.size() ? b.parts[i] : 0;
    if (a.parts[i] > bi)
      return false;
  }
  return true;
}

namespace {

// Targets here have the polarized head at position 1 with kernel code 0 or
// 1, one distinguished stabilized slot at position 2 and a constant tail;
// exploit that shape instead of scanning all relabelings.
bool target_is_structured(const PatternTarget &t) {
  const size_t m = t.kappa.size();
  if (m < 3 || (t.kappa[0] != 0 && t.kappa[0] != 1))
    return false;
  for (size_t i = 1; i < m; ++i)
    if (t.kappa[i] != 2)
      return false;
  for (size_t i = 3; i < m; ++i)
    if (!(t.tau[i] == t.tau[2]))
      return false;
  return true;
}

bool matches_structured(const ArtinPattern &ap, const PatternTarget &t,
                        bool exact) {
  const int m = static_cast<int>(ap.kappa.size());
  // relabel i0 -> position 1 and i2 -> position 2; every other component
  // must carry the constant tail value and point its kernel at i2
  for (int i0 = 0; i0 < m; ++i0) {
    bool tau_head_ok = exact ? ap.tau[i0] == t.tau[0]
                             : partition_leq(ap.tau[i0], t.tau[0]);
    if (!tau_head_ok)
      continue;
    int k0 = ap.kappa[i0];
    bool kappa_head_ok;
    if (t.kappa[0] == 0)
      kappa_head_ok = (k0 == 0);
    else
      kappa_head_ok = (k0 == i0 + 1) || (!exact && k0 == 0);
    if (!kappa_head_ok)
      continue;
    for (int i2 = 0; i2 < m; ++i2) {
      if (i2 == i0 || !(ap.tau[i2] == t.tau[1]))
        continue;
      bool ok = true;
      for (int i = 0; i < m && ok; ++i) {
        if (i == i0)
          continue;
        if (ap.kappa[i] != i2 + 1)
          ok = false;
        else if (i != i2 && !(ap.tau[i] == t.tau[2]))
          ok = false;
      }
      if (ok)
        return true;
    }
  }
  return false;
}

bool matches_with(const ArtinPattern &ap, const PatternTarget &t, bool exact) {
  const size_t m = ap.kappa.size();
  if (t.kappa.size() != m || t.tau.size() != m)
    return false;
  if (target_is_structured(t))
    return matches_structured(ap, t, exact);
  bool found = false;
  foreach_permutation(m, [&](const std::vector<int> &perm) {
    if (found)
      return;
    ArtinPattern cand = relabel(ap, perm);
    for (size_t i = 0; i < m; ++i) {
      if (exact || i > 0) {
        if (cand.kappa[i] != t.kappa[i] || cand.tau[i] != t.tau[i])
          return;
      } else {
        if (cand.kappa[i] != t.kappa[i] && cand.kappa[i] != 0)
          return;
        if (!partition_leq(cand.tau[i], t.tau[i]))
          return;
      }
    }
    found = true;
  });
  return found;
}

} // namespace

bool matches_exact(const ArtinPattern &ap, const PatternTarget &target) {
  return matches_with(ap, target, true);
}

bool matches_filter(const ArtinPattern &ap, const PatternTarget &target) {
  return matches_with(ap, target, false);
}

} // namespace pgroups
