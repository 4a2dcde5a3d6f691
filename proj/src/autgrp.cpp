#include "pgroups/autgrp.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgroups {

FpMat FpMat::identity(int dim, int p) {
  FpMat m{dim, p, std::vector<std::uint8_t>(dim * dim, 0)};
  for (int i = 0; i < dim; ++i)
    m.at(i, i) = 1;
  return m;
}

FpMat FpMat::mul(const FpMat &o) const {
  FpMat r{dim, p, std::vector<std::uint8_t>(dim * dim, 0)};
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      int a = at(i, k);
      if (!a)
        continue;
      for (int j = 0; j < dim; ++j)
        r.at(i, j) =
            static_cast<std::uint8_t>((r.at(i, j) + a * o.at(k, j)) % p);
    }
  return r;
}

FpMat FpMat::inv() const {
  FpMat a = *this;
  FpMat r = identity(dim, p);
  for (int c = 0; c < dim; ++c) {
    int pr = c;
    while (pr < dim && a.at(pr, c) == 0)
      ++pr;
    if (pr == dim)
      throw std::invalid_argument("matrix not invertible");
    for (int j = 0; j < dim; ++j) {
      std::swap(a.v[pr * dim + j], a.v[c * dim + j]);
      std::swap(r.v[pr * dim + j], r.v[c * dim + j]);
    }
    int inv = 1;
    for (int k = 1; k < p; ++k)
      if (k * a.at(c, c) % p == 1)
        inv = k;
    for (int j = 0; j < dim; ++j) {
      a.at(c, j) = static_cast<std::uint8_t>(a.at(c, j) * inv % p);
      r.at(c, j) = static_cast<std::uint8_t>(r.at(c, j) * inv % p);
    }
    for (int i = 0; i < dim; ++i) {
      if (i == c || a.at(i, c) == 0)
        continue;
      int f = a.at(i, c);
      for (int j = 0; j < dim; ++j) {
        a.at(i, j) = static_cast<std::uint8_t>(
            ((a.at(i, j) - f * a.at(c, j)) % p + p) % p);
        r.at(i, j) = static_cast<std::uint8_t>(
            ((r.at(i, j) - f * r.at(c, j)) % p + p) % p);
      }
    }
  }
  return r;
}

Automorphism identity_automorphism(const PcGroup &G) {
  Automorphism a;
  for (int g = 0; g < G.ngens(); ++g)
    a.images.push_back(G.generator(g));
  return a;
}

NormalWord apply_aut(const PcGroup &G, const Automorphism &a,
                     const NormalWord &w) {
  NormalWord out = G.identity();
  for (int g = 0; g < G.ngens(); ++g)
    if (w[g])
      G.mul(out, G.power_of(a.images[g], w[g]));
  return out;
}

Automorphism compose(const PcGroup &G, const Automorphism &a,
                     const Automorphism &b) {
  Automorphism r;
  r.images.reserve(G.ngens());
  for (int g = 0; g < G.ngens(); ++g)
    r.images.push_back(apply_aut(G, b, a.images[g]));
  return r;
}

Automorphism invert(const PcGroup &G, const Automorphism &a) {
  // Solve a(w) = g layer by layer down the weight filtration.
  const int cls = G.pclass_bound();
  std::vector<int> first(cls + 2, G.ngens()), size(cls + 2, 0);
  for (int g = G.ngens() - 1; g >= 0; --g) {
    first[G.weight(g)] = g;
    ++size[G.weight(g)];
  }
  std::vector<FpMat> layer_inv(cls + 1);
  for (int d = 1; d <= cls; ++d) {
    int m = size[d];
    if (!m)
      continue;
    FpMat A{m, G.prime(), std::vector<std::uint8_t>(m * m, 0)};
    for (int r = 0; r < m; ++r) {
      const NormalWord &img = a.images[first[d] + r];
      for (int c = 0; c < m; ++c)
        A.at(r, c) = img[first[d] + c];
    }
    layer_inv[d] = A.inv();
  }
  Automorphism out;
  for (int g = 0; g < G.ngens(); ++g) {
    NormalWord w = G.identity();
    NormalWord r = G.generator(g);
    while (!is_identity(r)) {
      int lead = leading_gen(r);
      int d = G.weight(lead);
      int m = size[d];
      NormalWord y = G.identity();
      for (int cidx = 0; cidx < m; ++cidx) {
        int acc = 0;
        for (int ridx = 0; ridx < m; ++ridx)
          acc += r[first[d] + ridx] * layer_inv[d].at(ridx, cidx);
        if (acc % G.prime())
          G.mul_gen(y, first[d] + cidx, acc % G.prime());
      }
      G.mul(w, y);
      NormalWord t = G.inverse(apply_aut(G, a, y));
      G.mul(t, r);
      r = std::move(t);
      if (!is_identity(r) && G.weight(leading_gen(r)) <= d)
        throw std::logic_error("automorphism inverse failed to descend");
    }
    out.images.push_back(std::move(w));
  }
  return out;
}

bool is_automorphism(const PcGroup &G, const Automorphism &a) {
  for (int i = 0; i < G.ngens(); ++i) {
    NormalWord lhs = G.power_of(a.images[i], G.prime());
    if (lhs != apply_aut(G, a, G.power(i)))
      return false;
  }
  for (int j = 1; j < G.ngens(); ++j)
    for (int i = 0; i < j; ++i) {
      NormalWord lhs = G.commutator(a.images[j], a.images[i]);
      if (lhs != apply_aut(G, a, G.comm(j, i)))
        return false;
    }
  FpMat f = frattini_matrix(G, a);
  try {
    f.inv();
  } catch (const std::invalid_argument &) {
    return false;
  }
  return true;
}

FpMat frattini_matrix(const PcGroup &G, const Automorphism &a) {
  FpMat m{2, G.prime(), std::vector<std::uint8_t>(4, 0)};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m.at(i, j) = a.images[i][j];
  return m;
}

int MatGroup::find(const FpMat &m) const {
  auto it = index.find(m.key());
  return it == index.end() ? -1 : it->second;
}

std::vector<int> MatGroup::word(int k) const {
  std::vector<int> w;
  while (k != 0) {
    w.push_back(via[k]);
    k = parent[k];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

MatGroup enumerate_matrix_group(const std::vector<FpMat> &gens, size_t limit) {
  if (gens.empty())
    throw std::invalid_argument("need at least one generator");
  MatGroup g;
  FpMat id = FpMat::identity(gens[0].dim, gens[0].p);
  g.elems.push_back(id);
  g.parent.push_back(-1);
  g.via.push_back(-1);
  g.index[id.key()] = 0;
  for (size_t head = 0; head < g.elems.size(); ++head) {
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      FpMat next = g.elems[head].mul(gens[gi]);
      std::string k = next.key();
      if (g.index.count(k))
        continue;
      g.index[k] = static_cast<int>(g.elems.size());
      g.elems.push_back(std::move(next));
      g.parent.push_back(static_cast<int>(head));
      g.via.push_back(static_cast<int>(gi));
      if (g.elems.size() > limit)
        throw std::runtime_error("matrix group closure exceeded limit");
    }
  }
  return g;
}

void AutGroup::build_layers() {
  const PcGroup &G = *G_;
  int cls = G.pclass_bound();
  layer_first_.assign(cls + 2, G.ngens());
  layer_size_.assign(cls + 2, 0);
  for (int g = G.ngens() - 1; g >= 0; --g) {
    layer_first_[G.weight(g)] = g;
    ++layer_size_[G.weight(g)];
  }
}

std::pair<int, std::vector<std::uint8_t>>
AutGroup::depth_lead(const Automorphism &a) const {
  const PcGroup &G = *G_;
  const int cls = G.pclass_bound();
  NormalWord r0 = G.inverse(G.generator(0));
  G.mul(r0, a.images[0]);
  NormalWord r1 = G.inverse(G.generator(1));
  G.mul(r1, a.images[1]);
  int depth = cls;
  for (const NormalWord *r : {&r0, &r1}) {
    int lg = leading_gen(*r);
    if (lg >= 0)
      depth = std::min(depth, G.weight(lg) - 1);
  }
  std::vector<std::uint8_t> lead;
  if (depth < cls) {
    int f = layer_first_[depth + 1], m = layer_size_[depth + 1];
    lead.resize(2 * m, 0);
    for (int c = 0; c < m; ++c) {
      lead[c] = r0[f + c];
      lead[m + c] = r1[f + c];
    }
  }
  return {depth, std::move(lead)};
}

namespace {
int lead_pivot(const std::vector<std::uint8_t> &lead) {
  for (size_t k = 0; k < lead.size(); ++k)
    if (lead[k])
      return static_cast<int>(k);
  return -1;
}
} // namespace

void AutGroup::sift_in(Automorphism a) {
  const PcGroup &G = *G_;
  const int p = G.prime();
  const int cls = G.pclass_bound();
  std::vector<Automorphism> queue{std::move(a)};
  while (!queue.empty()) {
    Automorphism cur = std::move(queue.back());
    queue.pop_back();
    for (;;) {
      auto [depth, lead] = depth_lead(cur);
      if (depth >= cls)
        break; // identity
      int pivot = lead_pivot(lead);
      PcgsEntry *hit = nullptr;
      for (auto &e : pcgs_)
        if (e.depth == depth && lead_pivot(e.lead) == pivot) {
          hit = &e;
          break;
        }
      if (hit) {
        int e = lead[pivot]; // entry pivot is normalized to 1
        for (int t = 0; t < e; ++t)
          cur = compose(G, cur, hit->inv);
        continue;
      }
      int val = lead[pivot];
      if (val != 1) {
        int inv = 1;
        for (int k = 1; k < p; ++k)
          if (k * val % p == 1)
            inv = k;
        Automorphism powed = identity_automorphism(G);
        for (int t = 0; t < inv; ++t)
          powed = compose(G, powed, cur);
        cur = std::move(powed);
      }
      PcgsEntry entry;
      entry.aut = cur;
      entry.inv = invert(G, cur);
      auto [d2, l2] = depth_lead(entry.aut);
      entry.depth = d2;
      entry.lead = std::move(l2);
      if (entry.depth + 1 < cls) {
        Automorphism pw = identity_automorphism(G);
        for (int t = 0; t < p; ++t)
          pw = compose(G, pw, entry.aut);
        queue.push_back(std::move(pw));
      }
      for (const auto &e : pcgs_)
        if (entry.depth + e.depth < cls) {
          // commutator of the two automorphisms
          Automorphism c1 = compose(G, entry.aut, e.aut);
          Automorphism c2 = compose(G, e.aut, entry.aut);
          queue.push_back(compose(G, invert(G, c2), c1));
        }
      pcgs_.push_back(std::move(entry));
      std::stable_sort(pcgs_.begin(), pcgs_.end(),
                       [](const PcgsEntry &x, const PcgsEntry &y) {
                         if (x.depth != y.depth)
                           return x.depth < y.depth;
                         return lead_pivot(x.lead) < lead_pivot(y.lead);
                       });
      break;
    }
  }
}

AutGroup::AutGroup(const PcGroup &G, std::vector<Automorphism> top_gens,
                   std::vector<Automorphism> p_gens)
    : G_(&G), top_gens_(std::move(top_gens)) {
  if (generator_rank(G) != 2)
    throw std::invalid_argument("automorphism machinery expects rank 2");
  build_layers();
  std::vector<FpMat> mats;
  for (const auto &a : top_gens_)
    mats.push_back(frattini_matrix(G, a));
  if (mats.empty())
    mats.push_back(FpMat::identity(2, G.prime()));
  top_ = enumerate_matrix_group(mats);
  for (auto &a : p_gens)
    sift_in(std::move(a));
}

Automorphism AutGroup::pull_top(int elem_index) const {
  Automorphism a = identity_automorphism(*G_);
  for (int gi : top_.word(elem_index))
    a = compose(*G_, a, top_gens_[gi]);
  return a;
}

long double AutGroup::order_estimate() const {
  long double o = static_cast<long double>(top_.size());
  for (size_t k = 0; k < pcgs_.size(); ++k)
    o *= G_->prime();
  return o;
}

AutGroup root_autgroup(const PcGroup &root) {
  const int p = root.prime();
  if (root.ngens() != 2 || root.pclass_bound() != 1)
    throw std::invalid_argument("root must be elementary bicyclic");
  int zeta = 2;
  for (int cand = 2; cand < p; ++cand) {
    int x = 1;
    bool prim = true;
    for (int k = 1; k < p - 1; ++k) {
      x = x * cand % p;
      if (x == 1) {
        prim = false;
        break;
      }
    }
    if (prim) {
      zeta = cand;
      break;
    }
  }
  Automorphism a, b;
  {
    NormalWord i0 = root.identity();
    root.mul_gen(i0, 0, zeta);
    a.images = {i0, root.generator(1)};
  }
  {
    // [[-1,1],[-1,0]]
    NormalWord i0 = root.identity();
    root.mul_gen(i0, 0, p - 1);
    root.mul_gen(i0, 1, 1);
    NormalWord i1 = root.identity();
    root.mul_gen(i1, 0, p - 1);
    b.images = {i0, i1};
  }
  AutGroup A(root, {a, b}, {});
  size_t expect = static_cast<size_t>(p * p - 1) * (p * p - p);
  if (A.top().size() != expect)
    throw std::logic_error("GL(2,p) generators do not generate GL(2,p)");
  return A;
}

std::vector<NormalWord> cover_lift_images(const CoverData &cd,
                                          const Automorphism &a) {
  // The canonical lift of an automorphism to the cover: embed the images of
  // the weight-1 generators (any preimage choice induces the same action on
  // the multiplicator) and derive every defined generator through its
  // defining relation. Embedding the defined images directly would be off by
  // a multiplicator correction.
  const PcGroup &C = cd.cover;
  const int n = cd.base_ngens;
  const int p = C.prime();
  std::vector<NormalWord> lift(n);
  for (int g = 0; g < n; ++g) {
    if (C.weight(g) == 1) {
      lift[g] = C.identity();
      for (int k = 0; k < n; ++k)
        lift[g][k] = a.images[g][k];
      continue;
    }
    const Definition &d = C.definition(g);
    if (d.kind == Definition::None)
      throw std::logic_error("defined generator without definition in lift");
    NormalWord value, rhs;
    if (d.kind == Definition::Power) {
      value = C.power_of(lift[d.i], p);
      rhs = C.power(d.i);
    } else {
      value = C.commutator(lift[d.j], lift[d.i]);
      rhs = C.comm(d.j, d.i);
    }
    NormalWord base = rhs;
    if (base[g] != 1)
      throw std::logic_error("defining relation does not define its generator");
    base[g] = 0;
    NormalWord img = C.identity();
    for (int k = 0; k < n; ++k)
      if (base[k]) {
        if (k >= g)
          throw std::logic_error("definition base references later generator");
        C.mul(img, C.power_of(lift[k], base[k]));
      }
    img = C.inverse(img);
    C.mul(img, value);
    lift[g] = std::move(img);
  }
  return lift;
}

FpMat multiplicator_action(const CoverData &cd, const Automorphism &a) {
  const PcGroup &C = cd.cover;
  const int n = cd.base_ngens;
  const int p = C.prime();
  std::vector<NormalWord> lift = cover_lift_images(cd, a);
  auto eval = [&](const NormalWord &base_word) {
    NormalWord out = C.identity();
    for (int k = 0; k < n; ++k)
      if (base_word[k])
        C.mul(out, C.power_of(lift[k], base_word[k]));
    return out;
  };
  FpMat m{cd.mu, p, std::vector<std::uint8_t>(cd.mu * cd.mu, 0)};
  for (int f = 0; f < cd.mu; ++f) {
    const Definition &rel = cd.tail_rel[f];
    NormalWord value, rhs_full;
    if (rel.kind == Definition::Power) {
      value = C.power_of(lift[rel.i], p);
      rhs_full = C.power(rel.i);
    } else {
      value = C.commutator(lift[rel.j], lift[rel.i]);
      rhs_full = C.comm(rel.j, rel.i);
    }
    NormalWord base = rhs_full;
    if (base[cd.tail_gen(f)] != 1)
      throw std::logic_error("tail relation lost its tail");
    base[cd.tail_gen(f)] = 0;
    NormalWord img = C.inverse(eval(base));
    C.mul(img, value);
    auto coords = cd.m_coords(img);
    for (int c = 0; c < cd.mu; ++c)
      m.at(f, c) = coords[c];
  }
  return m;
}

} // namespace pgroups
