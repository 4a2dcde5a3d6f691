#include "pgroups/pcgroup.hpp"

#include <algorithm>
#include <sstream>

namespace pgroups {

std::string word_to_string(const Word &w) {
  if (w.empty())
    return "id";
  std::ostringstream os;
  bool first = true;
  for (const auto &l : w) {
    if (!first)
      os << "*";
    os << "g" << (l.gen + 1);
    if (l.exp != 1)
      os << "^" << l.exp;
    first = false;
  }
  return os.str();
}

std::string normal_to_string(const NormalWord &w) {
  return word_to_string(to_word(w));
}

PcGroup::PcGroup(int prime, int ngens, std::vector<int> weights,
                 std::vector<NormalWord> powers, std::vector<NormalWord> comms,
                 std::vector<Definition> defs)
    : p_(prime), n_(ngens), weight_(std::move(weights)),
      power_(std::move(powers)), comm_(std::move(comms)),
      def_(std::move(defs)) {
  pclass_ = 0;
  for (int w : weight_)
    pclass_ = std::max(pclass_, w);
  validate(true);
  build_caches();
}

PcGroup PcGroup::flat(int prime, int ngens, std::vector<NormalWord> powers,
                      std::vector<NormalWord> comms,
                      std::vector<Definition> defs) {
  PcGroup G;
  G.p_ = prime;
  G.n_ = ngens;
  G.weight_.assign(ngens, 1);
  G.pclass_ = 1 << 20; // weight shortcut never fires
  G.power_ = std::move(powers);
  G.comm_ = std::move(comms);
  G.def_ = std::move(defs);
  G.validate(false);
  G.build_caches();
  return G;
}

void PcGroup::build_caches() {
  powerw_.resize(n_);
  commw_.resize(comm_.size());
  for (int i = 0; i < n_; ++i)
    powerw_[i] = to_word(power_[i]);
  for (size_t k = 0; k < comm_.size(); ++k)
    commw_[k] = to_word(comm_[k]);
  pull_mask_.assign(n_, std::vector<std::uint8_t>(n_, 0));
  hard_mask_.assign(n_, std::vector<std::uint8_t>(n_, 0));
  scan_hi_.assign(n_, -1);
  for (int g = 0; g < n_; ++g)
    for (int k = g + 1; k < n_; ++k) {
      if (weight_[k] + weight_[g] > pclass_)
        continue;
      pull_mask_[g][k] = 1;
      scan_hi_[g] = k;
      if (!commw_[tri_static(k, g)].empty())
        hard_mask_[g][k] = 1;
    }
}

void PcGroup::validate(bool check_weights) const {
  if (p_ < 2)
    throw std::invalid_argument("prime must be >= 2");
  if (n_ < 1)
    throw std::invalid_argument("need at least one generator");
  if (n_ > kMaxGens)
    throw std::invalid_argument("generator count exceeds the compiled cap");
  if (static_cast<int>(weight_.size()) != n_ ||
      static_cast<int>(power_.size()) != n_ ||
      static_cast<int>(def_.size()) != n_ ||
      comm_.size() != static_cast<size_t>(n_) * (n_ - 1) / 2)
    throw std::invalid_argument("presentation arrays have wrong sizes");
  if (check_weights)
    for (int i = 1; i < n_; ++i)
      if (weight_[i] < weight_[i - 1])
        throw std::invalid_argument("weights must be non-decreasing");
  auto check_rhs = [&](const NormalWord &w, int min_index, int min_weight,
                       const char *what) {
    if (static_cast<int>(w.size()) != n_)
      throw std::invalid_argument(std::string(what) + ": wrong rhs length");
    for (int k = 0; k < n_; ++k) {
      if (w[k] == 0)
        continue;
      if (w[k] >= p_)
        throw std::invalid_argument(std::string(what) +
                                    ": exponent out of range");
      if (k <= min_index)
        throw std::invalid_argument(std::string(what) +
                                    ": rhs references generator of index <= lhs");
      if (check_weights && weight_[k] < min_weight)
        throw std::invalid_argument(std::string(what) +
                                    ": rhs below relation weight");
    }
  };
  for (int i = 0; i < n_; ++i)
    check_rhs(power_[i], i, weight_[i] + 1, "power relation");
  for (int j = 1; j < n_; ++j)
    for (int i = 0; i < j; ++i)
      check_rhs(comm_[tri_static(j, i)], j, weight_[i] + weight_[j],
                "commutator relation");
}

NormalWord PcGroup::generator(Gen g) const {
  NormalWord w(n_, 0);
  w[g] = 1;
  return w;
}

// Multiply the normal word lhs by the single letter g. Entries above g whose
// weight sum with g exceeds the class bound commute with g and with every
// letter this step can push (all of weight >= weight(g)), so they stay put.
void PcGroup::mul_gen1(NormalWord &lhs, Gen g) const {
  const int hi = scan_hi_[g];
  int sum = lhs[g] + 1;
  bool reducepower = sum >= p_;
  bool reducecomm = false;
  if (hi > g) {
    const std::uint8_t *hm = hard_mask_[g].data();
    const std::uint8_t *v = lhs.data();
    for (int k = g + 1; k <= hi; ++k)
      if (v[k] && hm[k]) {
        reducecomm = true;
        break;
      }
  }

  if (!reducecomm && !reducepower) {
    lhs[g] = static_cast<std::uint8_t>(sum);
    return;
  }

  // Pull out the entries that g has to move across (fixed-size scratch;
  // re-entrant since each frame owns its slice).
  struct Pulled {
    std::int16_t gen;
    std::int16_t exp;
  };
  Pulled storage[kMaxGens];
  int nstorage = 0;
  const std::uint8_t *pm = pull_mask_[g].data();
  for (int k = g + 1; k <= hi; ++k) {
    if (!lhs[k] || !pm[k])
      continue;
    storage[nstorage++] = {static_cast<std::int16_t>(k),
                           static_cast<std::int16_t>(lhs[k])};
    lhs[k] = 0;
  }
  lhs[g] = static_cast<std::uint8_t>(reducepower ? sum - p_ : sum);
  if (reducepower)
    mul_word(lhs, powerw_[g]);

  if (!reducecomm) {
    for (int t = 0; t < nstorage; ++t)
      mul_gen(lhs, storage[t].gen, storage[t].exp);
    return;
  }
  for (int t = 0; t < nstorage; ++t) {
    const Word &c = commw_[tri_static(storage[t].gen, g)];
    if (c.empty()) {
      mul_gen(lhs, storage[t].gen, storage[t].exp);
    } else {
      // g_k^g = g_k [g_k, g], applied exp times
      for (int e = 0; e < storage[t].exp; ++e) {
        mul_gen1(lhs, storage[t].gen);
        mul_word(lhs, c);
      }
    }
  }
}

void PcGroup::mul_gen(NormalWord &lhs, Gen g, int e) const {
  assert(g >= 0 && g < n_);
  e %= p_;
  if (e < 0)
    e += p_;
  for (int t = 0; t < e; ++t)
    mul_gen1(lhs, g);
}

void PcGroup::mul_word(NormalWord &lhs, const Word &w) const {
  for (const auto &l : w)
    mul_gen(lhs, l.gen, l.exp);
}

void PcGroup::mul(NormalWord &lhs, const NormalWord &rhs) const {
  assert(static_cast<int>(rhs.size()) == n_);
  for (int g = 0; g < n_; ++g)
    if (rhs[g])
      mul_gen(lhs, g, rhs[g]);
}

NormalWord PcGroup::multiply(const NormalWord &a, const NormalWord &b) const {
  NormalWord r = a;
  mul(r, b);
  return r;
}

NormalWord PcGroup::collect(const Word &w) const {
  NormalWord r = identity();
  mul_word(r, w);
  return r;
}

NormalWord PcGroup::inverse(const NormalWord &a) const {
  // Build b with a*b = 1 by clearing the leading entry of the residual;
  // multiplying by g^e never touches entries below g.
  NormalWord b = identity();
  NormalWord res = a;
  for (;;) {
    int g = leading_gen(res);
    if (g < 0)
      return b;
    int e = p_ - res[g];
    mul_gen(b, g, e);
    mul_gen(res, g, e);
  }
}

NormalWord PcGroup::power_of(const NormalWord &a, long k) const {
  NormalWord base = a;
  if (k < 0) {
    base = inverse(base);
    k = -k;
  }
  NormalWord r = identity();
  while (k > 0) {
    if (k & 1)
      r = multiply(r, base);
    base = multiply(base, base);
    k >>= 1;
  }
  return r;
}

NormalWord PcGroup::commutator(const NormalWord &a, const NormalWord &b) const {
  NormalWord r = inverse(a);
  mul(r, inverse(b));
  mul(r, a);
  mul(r, b);
  return r;
}

NormalWord PcGroup::conjugate(const NormalWord &a, const NormalWord &b) const {
  NormalWord r = inverse(b);
  mul(r, a);
  mul(r, b);
  return r;
}

long PcGroup::element_order(const NormalWord &a) const {
  NormalWord x = a;
  long ord = 1;
  while (!is_identity(x)) {
    x = power_of(x, p_);
    ord *= p_;
  }
  return ord;
}

void PcGroup::consistency_overlaps(
    const std::function<void(const Overlap &)> &sink) const {
  // Overlaps whose weight exceeds the class bound hold automatically in a
  // weighted presentation and are skipped.
  // Associativity overlaps g_k (g_j g_i) = (g_k g_j) g_i for k > j > i.
  for (int k = 2; k < n_; ++k)
    for (int j = 1; j < k; ++j) {
      if (weight_[k] + weight_[j] + 1 > pclass_)
        break; // weights ascend with the index
      for (int i = 0; i < j; ++i) {
        if (weight_[k] + weight_[j] + weight_[i] > pclass_)
          continue;
        NormalWord lhs = generator(k);
        {
          NormalWord inner = generator(j);
          mul_gen1(inner, i);
          mul(lhs, inner);
        }
        NormalWord rhs = generator(k);
        mul_gen1(rhs, j);
        mul_gen1(rhs, i);
        sink({lhs, rhs});
      }
    }
  // Power overlaps g_j^p g_i = g_j^{p-1} (g_j g_i) and
  // g_j (g_i^p) = (g_j g_i) g_i^{p-1} for j > i.
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < j; ++i) {
      if (weight_[j] + weight_[i] + 1 > pclass_)
        continue;
      {
        NormalWord lhs = power_[j];
        mul_gen1(lhs, i);
        NormalWord rhs = identity();
        mul_gen(rhs, j, p_ - 1);
        NormalWord inner = generator(j);
        mul_gen1(inner, i);
        mul(rhs, inner);
        sink({lhs, rhs});
      }
      {
        NormalWord lhs = generator(j);
        mul(lhs, power_[i]);
        NormalWord rhs = generator(j);
        mul_gen1(rhs, i);
        mul_gen(rhs, i, p_ - 1);
        sink({lhs, rhs});
      }
    }
  // g_i (g_i^p) = (g_i^p) g_i.
  for (int i = 0; i < n_; ++i) {
    if (2 * weight_[i] + 1 > pclass_)
      continue;
    NormalWord lhs = generator(i);
    mul(lhs, power_[i]);
    NormalWord rhs = power_[i];
    mul_gen1(rhs, i);
    sink({lhs, rhs});
  }
}

bool PcGroup::is_consistent() const {
  bool ok = true;
  consistency_overlaps([&](const Overlap &o) {
    if (o.lhs != o.rhs)
      ok = false;
  });
  return ok;
}

PcGroup elementary_bicyclic(int p) {
  std::vector<NormalWord> powers(2, NormalWord(2, 0));
  std::vector<NormalWord> comms(1, NormalWord(2, 0));
  return PcGroup(p, 2, {1, 1}, std::move(powers), std::move(comms),
                 std::vector<Definition>(2));
}

PcGroup extraspecial_exponent_p(int p) {
  std::vector<NormalWord> powers(3, NormalWord(3, 0));
  std::vector<NormalWord> comms(3, NormalWord(3, 0));
  comms[0][2] = 1; // [g2, g1] = g3
  std::vector<Definition> defs(3);
  defs[2] = {Definition::Comm, 0, 1};
  return PcGroup(p, 3, {1, 1, 2}, std::move(powers), std::move(comms),
                 std::move(defs));
}

} // namespace pgroups
