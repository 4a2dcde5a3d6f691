#include "pgroups/subgrp.hpp"

#include <algorithm>

namespace pgroups {

NormalWord Span::sift(const NormalWord &w) const {
  NormalWord r = w;
  for (;;) {
    int g = leading_gen(r);
    if (g < 0 || !row_[g])
      return r;
    // Left-divide: r <- (row^e)^-1 r clears position g and touches nothing
    // below it.
    NormalWord d = inv_pow_[g][r[g] - 1];
    G_->mul(d, r);
    r = std::move(d);
  }
}

bool Span::sift_insert(NormalWord w, std::vector<NormalWord> &queue) {
  NormalWord r = sift(w);
  int g = leading_gen(r);
  if (g < 0)
    return false;
  // Normalize leading exponent to 1.
  int e = r[g];
  if (e != 1) {
    int inv = 1;
    for (int k = 1; k < G_->prime(); ++k)
      if (k * e % G_->prime() == 1) {
        inv = k;
        break;
      }
    r = G_->power_of(r, inv);
  }
  // Maintain closure: powers and commutators with rows (and ambient
  // generators when the span is marked normal).
  queue.push_back(G_->power_of(r, G_->prime()));
  for (int h = 0; h < G_->ngens(); ++h)
    if (row_[h])
      queue.push_back(G_->commutator(*row_[h], r));
  if (normal_)
    for (int h = 0; h < G_->ngens(); ++h)
      queue.push_back(G_->commutator(r, G_->generator(h)));
  auto &cache = inv_pow_[g];
  cache.clear();
  for (int e = 1; e < G_->prime(); ++e)
    cache.push_back(G_->inverse(G_->power_of(r, e)));
  row_[g] = std::move(r);
  ++count_;
  return true;
}

void Span::add_generator(const NormalWord &w) {
  std::vector<NormalWord> queue{w};
  while (!queue.empty()) {
    NormalWord x = std::move(queue.back());
    queue.pop_back();
    sift_insert(std::move(x), queue);
  }
}

void Span::make_normal() {
  normal_ = true;
  std::vector<NormalWord> queue;
  for (int g = 0; g < G_->ngens(); ++g)
    if (row_[g])
      for (int h = 0; h < G_->ngens(); ++h)
        queue.push_back(G_->commutator(*row_[g], G_->generator(h)));
  while (!queue.empty()) {
    NormalWord x = std::move(queue.back());
    queue.pop_back();
    sift_insert(std::move(x), queue);
  }
}

std::vector<NormalWord> Span::basis() const {
  std::vector<NormalWord> out;
  for (int g = 0; g < G_->ngens(); ++g)
    if (row_[g])
      out.push_back(*row_[g]);
  return out;
}

std::vector<Gen> Span::leads() const {
  std::vector<Gen> out;
  for (int g = 0; g < G_->ngens(); ++g)
    if (row_[g])
      out.push_back(g);
  return out;
}

std::optional<std::vector<int>> Span::coordinates(const NormalWord &w) const {
  std::vector<int> coord(count_, 0);
  std::vector<int> slot(G_->ngens(), -1);
  {
    int k = 0;
    for (int g = 0; g < G_->ngens(); ++g)
      if (row_[g])
        slot[g] = k++;
  }
  NormalWord r = w;
  for (;;) {
    int g = leading_gen(r);
    if (g < 0)
      return coord;
    if (!row_[g])
      return std::nullopt;
    int e = r[g];
    coord[slot[g]] = e;
    NormalWord d = inv_pow_[g][e - 1];
    G_->mul(d, r);
    r = std::move(d);
  }
}

bool Span::same_span(const Span &o) const {
  if (count_ != o.count_)
    return false;
  for (int g = 0; g < G_->ngens(); ++g)
    if (row_[g] && !o.contains(*row_[g]))
      return false;
  return true;
}

Span span_of(const PcGroup &G, const std::vector<NormalWord> &gens) {
  Span s(G);
  for (const auto &w : gens)
    s.add_generator(w);
  return s;
}

Span normal_closure(const PcGroup &G, const std::vector<NormalWord> &gens) {
  Span s(G);
  s.make_normal();
  for (const auto &w : gens)
    s.add_generator(w);
  return s;
}

Span commutator_subgroup(const PcGroup &G, const Span &A, const Span &B) {
  Span s(G);
  s.make_normal();
  for (const auto &a : A.basis())
    for (const auto &b : B.basis())
      s.add_generator(G.commutator(a, b));
  return s;
}

Span frattini_subgroup(const PcGroup &G) {
  Span s(G);
  s.make_normal();
  for (int g = 0; g < G.ngens(); ++g) {
    for (int h = 0; h < g; ++h)
      s.add_generator(G.commutator(G.generator(g), G.generator(h)));
    s.add_generator(G.power_of(G.generator(g), G.prime()));
  }
  return s;
}

Span join(const Span &A, const Span &B) {
  Span s(A.group());
  for (const auto &w : A.basis())
    s.add_generator(w);
  for (const auto &w : B.basis())
    s.add_generator(w);
  return s;
}

Quotient::Quotient(const PcGroup &G, const Span &N)
    : G_(&G), slot_(G.ngens(), -1), table_(G.ngens()) {
  for (int g = 0; g < G.ngens(); ++g) {
    if (N.has_lead(g)) {
      table_[g] = N.row(g);
    } else {
      slot_[g] = static_cast<int>(kept_.size());
      kept_.push_back(g);
      table_[g] = G.generator(g);
    }
  }
  inv_pow_.resize(G.ngens());
  for (int g = 0; g < G.ngens(); ++g)
    for (int e = 1; e < G.prime(); ++e)
      inv_pow_[g].push_back(G.inverse(G.power_of(table_[g], e)));
  int m = static_cast<int>(kept_.size());
  std::vector<int> weights(m);
  std::vector<Definition> defs(m);
  for (int k = 0; k < m; ++k)
    weights[k] = G.weight(kept_[k]);
  std::vector<NormalWord> powers(m), comms(static_cast<size_t>(m) * (m - 1) / 2);
  for (int b = 0; b < m; ++b) {
    powers[b] = project(G.power(kept_[b]));
    for (int a = 0; a < b; ++a)
      comms[static_cast<size_t>(b) * (b - 1) / 2 + a] =
          project(G.comm(kept_[b], kept_[a]));
  }
  // Definitions: keep the ambient one when it survives intact, else re-infer
  // from the first relation with matching top generator.
  for (int k = 0; k < m; ++k) {
    const Definition &d = G.definition(kept_[k]);
    if (d.kind == Definition::Power && slot_[d.i] >= 0) {
      const NormalWord &rhs = powers[slot_[d.i]];
      if (top_gen(rhs) == k && rhs[k] == 1)
        defs[k] = {Definition::Power, slot_[d.i], -1};
    } else if (d.kind == Definition::Comm && slot_[d.i] >= 0 &&
               slot_[d.j] >= 0) {
      const NormalWord &rhs =
          comms[static_cast<size_t>(slot_[d.j]) * (slot_[d.j] - 1) / 2 +
                slot_[d.i]];
      if (top_gen(rhs) == k && rhs[k] == 1)
        defs[k] = {Definition::Comm, slot_[d.i], slot_[d.j]};
    }
  }
  for (int k = 0; k < m; ++k) {
    if (defs[k].kind != Definition::None || weights[k] == 1)
      continue;
    bool found = false;
    for (int b = 1; b < m && !found; ++b)
      for (int a = 0; a < b && !found; ++a) {
        const NormalWord &rhs = comms[static_cast<size_t>(b) * (b - 1) / 2 + a];
        if (top_gen(rhs) == k && rhs[k] == 1) {
          defs[k] = {Definition::Comm, a, b};
          found = true;
        }
      }
    for (int a = 0; a < m && !found; ++a) {
      if (top_gen(powers[a]) == k && powers[a][k] == 1) {
        defs[k] = {Definition::Power, a, -1};
        found = true;
      }
    }
    // A generator of weight > 1 may lose its definition in exotic quotients;
    // the quotient is still a valid pc-presentation for arithmetic use.
  }
  Q_.emplace(G.prime(), m, std::move(weights), std::move(powers),
             std::move(comms), std::move(defs));
}

NormalWord Quotient::project(const NormalWord &w) const {
  NormalWord out(kept_.size(), 0);
  NormalWord r = w;
  for (;;) {
    int g = leading_gen(r);
    if (g < 0)
      return out;
    int e = r[g];
    if (slot_[g] >= 0)
      out[slot_[g]] = static_cast<std::uint8_t>(e);
    NormalWord d = inv_pow_[g][e - 1];
    G_->mul(d, r);
    r = std::move(d);
  }
}

} // namespace pgroups
