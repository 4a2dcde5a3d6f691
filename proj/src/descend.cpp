#include "pgroups/descend.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <stdexcept>
#include <thread>

namespace pgroups {

std::string subspace_key(const SubspaceRows &rows, int mu) {
  std::string k(static_cast<size_t>(rows.size()) * mu, '\0');
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < mu; ++c)
      k[r * mu + c] = static_cast<char>(rows[r][c]);
  return k;
}

SubspaceRows subspace_act(const SubspaceRows &rows, const FpMat &m) {
  SubspaceRows out;
  out.reserve(rows.size());
  for (const auto &r : rows) {
    std::vector<std::uint8_t> v(m.dim, 0);
    for (int i = 0; i < m.dim; ++i) {
      if (!r[i])
        continue;
      for (int j = 0; j < m.dim; ++j)
        v[j] = static_cast<std::uint8_t>((v[j] + r[i] * m.at(i, j)) % m.p);
    }
    out.push_back(std::move(v));
  }
  rref_mod_p(out, m.p);
  return out;
}

std::vector<SubspaceRows> enumerate_subspaces(int mu, int dim, int p) {
  std::vector<SubspaceRows> out;
  if (dim == 0) {
    out.push_back({});
    return out;
  }
  // choose pivot columns lexicographically, then odometer the free entries
  std::vector<int> piv(dim);
  for (int i = 0; i < dim; ++i)
    piv[i] = i;
  auto emit_all = [&]() {
    // free positions: (row r, col c) with c > piv[r], c not a pivot
    std::vector<std::pair<int, int>> free_pos;
    for (int r = 0; r < dim; ++r)
      for (int c = piv[r] + 1; c < mu; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end())
          free_pos.push_back({r, c});
    std::vector<int> digits(free_pos.size(), 0);
    for (;;) {
      SubspaceRows rows(dim, std::vector<std::uint8_t>(mu, 0));
      for (int r = 0; r < dim; ++r)
        rows[r][piv[r]] = 1;
      for (size_t k = 0; k < free_pos.size(); ++k)
        rows[free_pos[k].first][free_pos[k].second] =
            static_cast<std::uint8_t>(digits[k]);
      out.push_back(std::move(rows));
      size_t i = 0;
      while (i < digits.size() && ++digits[i] == p) {
        digits[i] = 0;
        ++i;
      }
      if (i == digits.size())
        break;
      if (digits.empty())
        break;
    }
  };
  for (;;) {
    emit_all();
    // next pivot combination
    int i = dim - 1;
    while (i >= 0 && piv[i] == mu - dim + i)
      --i;
    if (i < 0)
      break;
    ++piv[i];
    for (int k = i + 1; k < dim; ++k)
      piv[k] = piv[k - 1] + 1;
  }
  return out;
}

bool is_allowable(const SubspaceRows &U, const SubspaceRows &nucleus, int mu,
                  int p) {
  SubspaceRows stack = U;
  for (const auto &r : nucleus)
    stack.push_back(r);
  return rank_mod_p(stack, p) == mu;
}

Node Node::root(int p) {
  Node n;
  n.group = std::make_shared<const PcGroup>(elementary_bicyclic(p));
  n.cover = p_cover(*n.group);
  n.auts = root_autgroup(*n.group);
  return n;
}

ActionMats action_matrices(const Node &node) {
  ActionMats m;
  for (const auto &a : node.auts.top_gens())
    m.top.push_back(multiplicator_action(node.cover, a));
  for (const auto &e : node.auts.pcgs())
    m.pcgs.push_back(multiplicator_action(node.cover, e.aut));
  const MatGroup &L = node.auts.top();
  m.top_all.resize(L.size());
  m.top_all[0] = FpMat::identity(node.cover.mu, node.G().prime());
  for (size_t k = 1; k < L.size(); ++k)
    m.top_all[k] = m.top_all[L.parent[k]].mul(m.top[L.via[k]]);
  return m;
}

StepOrbits orbits_of_step(const Node &node, const ActionMats &mats, int step) {
  const int mu = node.cover.mu;
  const int p = node.G().prime();
  StepOrbits out;
  out.step = step;
  if (step < 1 || step > node.cover.nu)
    return out;
  std::vector<SubspaceRows> all = enumerate_subspaces(mu, mu - step, p);
  std::vector<SubspaceRows> allowable;
  for (auto &U : all)
    if (is_allowable(U, node.cover.nucleus, mu, p))
      allowable.push_back(std::move(U));
  out.allowable_count = static_cast<long>(allowable.size());

  std::vector<FpMat> gens;
  {
    FpMat id = FpMat::identity(mu, p);
    for (const auto &m : mats.top)
      if (!(m == id))
        gens.push_back(m);
    for (const auto &m : mats.pcgs)
      if (!(m == id))
        gens.push_back(m);
    if (gens.empty())
      gens.push_back(id);
  }
  std::unordered_map<std::string, int> seen;
  for (const auto &U : allowable) {
    std::string k0 = subspace_key(U, mu);
    if (seen.count(k0))
      continue;
    // BFS orbit
    std::vector<SubspaceRows> frontier{U};
    seen[k0] = static_cast<int>(out.reps.size());
    long size = 1;
    while (!frontier.empty()) {
      std::vector<SubspaceRows> next;
      for (const auto &X : frontier)
        for (const auto &g : gens) {
          SubspaceRows Y = subspace_act(X, g);
          std::string k = subspace_key(Y, mu);
          auto [it, fresh] = seen.try_emplace(k, static_cast<int>(out.reps.size()));
          (void)it;
          if (fresh) {
            ++size;
            next.push_back(std::move(Y));
          }
        }
      frontier = std::move(next);
    }
    out.reps.push_back(U);
    out.sizes.push_back(size);
  }
  long total = 0;
  for (long s : out.sizes)
    total += s;
  if (total != out.allowable_count)
    throw std::logic_error("orbit sizes do not add up to the allowable count");
  return out;
}

PcGroup descendant_quotient(const CoverData &cd, const SubspaceRows &U) {
  const PcGroup &C = cd.cover;
  const int p = C.prime();
  const int n = cd.base_ngens;
  const int mu = cd.mu;
  const int s = mu - static_cast<int>(U.size());
  // pivot columns of U and the surviving (free) tail columns
  std::vector<int> pivcol(U.size(), -1);
  std::vector<bool> is_piv(mu, false);
  for (size_t r = 0; r < U.size(); ++r) {
    for (int c = 0; c < mu; ++c)
      if (U[r][c]) {
        pivcol[r] = c;
        is_piv[c] = true;
        break;
      }
  }
  std::vector<int> freecol;
  std::vector<int> freeslot(mu, -1);
  for (int c = 0; c < mu; ++c)
    if (!is_piv[c]) {
      freeslot[c] = static_cast<int>(freecol.size());
      freecol.push_back(c);
    }
  if (static_cast<int>(freecol.size()) != s)
    throw std::invalid_argument("subspace rows are not an RREF basis");

  auto reduce = [&](const NormalWord &w) {
    NormalWord out(n + s, 0);
    std::copy(w.begin(), w.begin() + n, out.begin());
    std::vector<int> t(mu, 0);
    for (int c = 0; c < mu; ++c)
      t[c] = w[n + c];
    for (size_t r = 0; r < U.size(); ++r) {
      int c = pivcol[r];
      if (t[c] == 0)
        continue;
      int f = t[c];
      for (int cc = 0; cc < mu; ++cc)
        t[cc] = ((t[cc] - f * U[r][cc]) % p + p) % p;
    }
    for (int c = 0; c < mu; ++c) {
      if (!t[c])
        continue;
      if (freeslot[c] < 0)
        throw std::logic_error("pivot column failed to clear");
      out[n + freeslot[c]] = static_cast<std::uint8_t>(t[c]);
    }
    return out;
  };

  std::vector<int> weights(C.weights().begin(), C.weights().begin() + n);
  weights.resize(n + s, C.pclass_bound());
  std::vector<NormalWord> powers(n + s, NormalWord(n + s, 0));
  std::vector<NormalWord> comms(static_cast<size_t>(n + s) * (n + s - 1) / 2,
                                NormalWord(n + s, 0));
  std::vector<Definition> defs(n + s);
  for (int g = 0; g < n; ++g)
    defs[g] = C.definition(g);
  for (int c = 0; c < mu; ++c)
    if (freeslot[c] >= 0)
      defs[n + freeslot[c]] = cd.tail_rel[c];
  for (int i = 0; i < n; ++i)
    powers[i] = reduce(C.power(i));
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      comms[static_cast<size_t>(j) * (j - 1) / 2 + i] = reduce(C.comm(j, i));
  return PcGroup(p, n + s, std::move(weights), std::move(powers),
                 std::move(comms), std::move(defs));
}

StabilizerData stabilizer(const Node &node, const ActionMats &mats,
                          const SubspaceRows &U, bool full) {
  const PcGroup &G = node.G();
  const int mu = node.cover.mu;
  const int p = G.prime();
  const auto &pcgs = node.auts.pcgs();
  StabilizerData out;

  // Soluble orbit-stabilizer along the pcgs chain (deepest entries generate
  // normal subgroups of the earlier ones). Stabilizer generators are only
  // assembled in full mode; the orbit itself is matrix work.
  out.orbit1[subspace_key(U, mu)] = {};
  for (int i = static_cast<int>(pcgs.size()) - 1; i >= 0; --i) {
    SubspaceRows V = subspace_act(U, mats.pcgs[i]);
    std::string vk = subspace_key(V, mu);
    auto it = out.orbit1.find(vk);
    if (it != out.orbit1.end()) {
      if (full) {
        // beta_i * transversal(V)^-1 stabilizes U
        Automorphism sigma = pcgs[i].aut;
        const std::vector<int> &w = it->second;
        for (int k = static_cast<int>(w.size()) - 1; k >= 0; --k)
          sigma = compose(G, sigma, pcgs[w[k]].inv);
        out.p_stab.push_back(std::move(sigma));
      }
    } else {
      // orbit grows by a factor of p
      std::vector<std::pair<std::string, std::vector<int>>> snapshot(
          out.orbit1.begin(), out.orbit1.end());
      std::vector<std::pair<SubspaceRows, std::vector<int>>> layer;
      for (const auto &[key, word] : snapshot) {
        (void)key;
        SubspaceRows X = U;
        for (int gi : word)
          X = subspace_act(X, mats.pcgs[gi]);
        layer.push_back({std::move(X), word});
      }
      for (int k = 1; k < p; ++k) {
        for (auto &[X, word] : layer) {
          X = subspace_act(X, mats.pcgs[i]);
          word.push_back(i);
          out.orbit1[subspace_key(X, mu)] = word;
        }
      }
    }
  }

  const MatGroup &L = node.auts.top();
  FpMat minusI = FpMat::identity(2, p);
  minusI.at(0, 0) = static_cast<std::uint8_t>(p - 1);
  minusI.at(1, 1) = static_cast<std::uint8_t>(p - 1);
  const int minus_idx = L.find(minusI);
  if (full) {
    // Stabilizer image in GL(2,p): elements whose multiplicator action maps
    // U into its A_1-orbit.
    for (size_t k = 0; k < L.size(); ++k) {
      SubspaceRows V = subspace_act(U, mats.top_all[k]);
      if (out.orbit1.count(subspace_key(V, mu)))
        out.x_elems.push_back(static_cast<int>(k));
    }
    out.contains_minus_identity =
        minus_idx >= 0 &&
        std::binary_search(out.x_elems.begin(), out.x_elems.end(), minus_idx);
  } else if (minus_idx >= 0) {
    SubspaceRows V = subspace_act(U, mats.top_all[minus_idx]);
    out.contains_minus_identity = out.orbit1.count(subspace_key(V, mu)) > 0;
  }
  return out;
}

namespace {

// transversal automorphism for a word over the pcgs
Automorphism word_aut(const PcGroup &G, const AutGroup &A,
                      const std::vector<int> &w) {
  Automorphism t = identity_automorphism(G);
  for (int gi : w)
    t = compose(G, t, A.pcgs()[gi].aut);
  return t;
}

NormalWord lift_and_reduce(const CoverData &cd, const SubspaceRows &U,
                           const NormalWord &cover_word, int s) {
  // reduce a cover element modulo U into child coordinates
  const int n = cd.base_ngens;
  const int mu = cd.mu;
  const int p = cd.cover.prime();
  std::vector<int> pivcol(U.size(), -1);
  std::vector<int> freeslot(mu, -1);
  {
    std::vector<bool> is_piv(mu, false);
    for (size_t r = 0; r < U.size(); ++r)
      for (int c = 0; c < mu; ++c)
        if (U[r][c]) {
          pivcol[r] = c;
          is_piv[c] = true;
          break;
        }
    int slot = 0;
    for (int c = 0; c < mu; ++c)
      if (!is_piv[c])
        freeslot[c] = slot++;
  }
  NormalWord out(n + s, 0);
  std::copy(cover_word.begin(), cover_word.begin() + n, out.begin());
  std::vector<int> t(mu, 0);
  for (int c = 0; c < mu; ++c)
    t[c] = cover_word[n + c];
  for (size_t r = 0; r < U.size(); ++r) {
    int c = pivcol[r];
    if (t[c] == 0)
      continue;
    int f = t[c];
    for (int cc = 0; cc < mu; ++cc)
      t[cc] = ((t[cc] - f * U[r][cc]) % p + p) % p;
  }
  for (int c = 0; c < mu; ++c)
    if (t[c]) {
      if (freeslot[c] < 0)
        throw std::logic_error("pivot column failed to clear in lift");
      out[n + freeslot[c]] = static_cast<std::uint8_t>(t[c]);
    }
  return out;
}

} // namespace

AutGroup descend_autgroup(const Node &parent, const ActionMats &mats,
                          const SubspaceRows &U, const StabilizerData &sd,
                          const PcGroup &child) {
  const PcGroup &G = parent.G();
  const CoverData &cd = parent.cover;
  const int n = cd.base_ngens;
  const int mu = cd.mu;
  const int s = mu - static_cast<int>(U.size());
  (void)mats;

  std::vector<bool> is_piv(mu, false);
  for (size_t r = 0; r < U.size(); ++r)
    for (int c = 0; c < mu; ++c)
      if (U[r][c]) {
        is_piv[c] = true;
        break;
      }
  auto lift_aut = [&](const Automorphism &a) {
    FpMat am = multiplicator_action(cd, a);
    std::vector<NormalWord> lifted = cover_lift_images(cd, a);
    Automorphism out;
    out.images.reserve(child.ngens());
    for (int g = 0; g < n; ++g)
      out.images.push_back(lift_and_reduce(cd, U, lifted[g], s));
    for (int f = 0; f < mu; ++f) {
      if (is_piv[f])
        continue; // free columns become the new generators
      NormalWord cw(cd.cover.ngens(), 0);
      for (int c = 0; c < mu; ++c)
        cw[n + c] = am.at(f, c);
      out.images.push_back(lift_and_reduce(cd, U, cw, s));
    }
    return out;
  };

  // top generators: small generating set of X, pulled back and corrected by
  // transversal elements, then lifted
  std::vector<Automorphism> child_top;
  {
    const MatGroup &L = parent.auts.top();
    std::vector<FpMat> chosen;
    MatGroup closure;
    bool have = false;
    for (int idx : sd.x_elems) {
      if (idx == 0)
        continue;
      if (have && closure.contains(L.elems[idx]))
        continue;
      chosen.push_back(L.elems[idx]);
      closure = enumerate_matrix_group(chosen);
      have = true;
      // pullback with transversal correction
      Automorphism ax = parent.auts.pull_top(idx);
      SubspaceRows V = subspace_act(U, mats.top_all[idx]);
      auto it = sd.orbit1.find(subspace_key(V, mu));
      if (it == sd.orbit1.end())
        throw std::logic_error("stabilizer element does not return to the orbit");
      Automorphism sigma = ax;
      const std::vector<int> &w = it->second;
      for (int k = static_cast<int>(w.size()) - 1; k >= 0; --k)
        sigma = compose(G, sigma, parent.auts.pcgs()[w[k]].inv);
      child_top.push_back(lift_aut(sigma));
      if (closure.size() == sd.x_elems.size())
        break;
    }
    if (have && closure.size() != sd.x_elems.size())
      throw std::logic_error("stabilizer image generators do not close");
  }

  // p-part: lifts of the A_1-stabilizer generators plus the central
  // automorphisms on the new layer
  std::vector<Automorphism> child_p;
  for (const auto &a : sd.p_stab)
    child_p.push_back(lift_aut(a));
  for (int i0 = 0; i0 < 2; ++i0)
    for (int f = 0; f < s; ++f) {
      Automorphism z = identity_automorphism(child);
      child.mul_gen(z.images[i0], n + f, 1);
      child_p.push_back(std::move(z));
    }
  for (const auto &a : child_top)
    if (!is_automorphism(child, a))
      throw std::logic_error("lifted stabilizer generator is not an automorphism");
  for (const auto &a : child_p)
    if (!is_automorphism(child, a))
      throw std::logic_error("lifted p-part generator is not an automorphism");
  return AutGroup(child, std::move(child_top), std::move(child_p));
}

Node make_child(const Node &parent, const ActionMats &mats,
                const SubspaceRows &U, const StabilizerData &sd) {
  Node child;
  child.group = std::make_shared<const PcGroup>(
      descendant_quotient(parent.cover, U));
  child.cover = p_cover(*child.group);
  child.auts = descend_autgroup(parent, mats, U, sd, *child.group);
  return child;
}

DescendantSet immediate_descendants(const Node &node, int step, int threads) {
  ActionMats mats = action_matrices(node);
  StepOrbits orb = orbits_of_step(node, mats, step);
  DescendantSet out;
  out.step = step;
  out.allowable_count = orb.allowable_count;
  out.capable.assign(orb.reps.size(), false);
  std::vector<std::optional<PcGroup>> tmp(orb.reps.size());
  parallel_for(static_cast<int>(orb.reps.size()), threads, [&](int i) {
    PcGroup H = descendant_quotient(node.cover, orb.reps[i]);
    CoverData cdh = p_cover(H);
    out.capable[i] = cdh.nu > 0;
    tmp[i].emplace(std::move(H));
  });
  for (auto &t : tmp)
    out.reps.push_back(std::move(*t));
  return out;
}

std::map<int, std::pair<int, int>> descendant_counts(const Node &node,
                                                     int threads) {
  std::map<int, std::pair<int, int>> out;
  for (int s = 1; s <= node.cover.nu; ++s) {
    DescendantSet d = immediate_descendants(node, s, threads);
    out[s] = {d.N(), d.C()};
  }
  return out;
}

void parallel_for(int count, int threads, const std::function<void(int)> &fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  int nthreads = std::min(threads, count);
  for (int t = 0; t < nthreads; ++t)
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count)
          return;
        fn(i);
      }
    });
  for (auto &th : pool)
    th.join();
}

} // namespace pgroups
