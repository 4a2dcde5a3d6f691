#include "pgroups/cover.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgroups {

std::vector<int> rref_mod_p(std::vector<std::vector<std::uint8_t>> &rows,
                            int p) {
  std::vector<int> pivots;
  if (rows.empty())
    return pivots;
  const size_t cols = rows[0].size();
  size_t r0 = 0;
  for (size_t c = 0; c < cols && r0 < rows.size(); ++c) {
    size_t pr = r0;
    while (pr < rows.size() && rows[pr][c] == 0)
      ++pr;
    if (pr == rows.size())
      continue;
    std::swap(rows[r0], rows[pr]);
    int inv = 1;
    for (int k = 1; k < p; ++k)
      if (k * rows[r0][c] % p == 1)
        inv = k;
    for (size_t cc = 0; cc < cols; ++cc)
      rows[r0][cc] = static_cast<std::uint8_t>(rows[r0][cc] * inv % p);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == r0 || rows[r][c] == 0)
        continue;
      int f = rows[r][c];
      for (size_t cc = 0; cc < cols; ++cc)
        rows[r][cc] = static_cast<std::uint8_t>(
            ((rows[r][cc] - f * rows[r0][cc]) % p + p) % p);
    }
    pivots.push_back(static_cast<int>(c));
    ++r0;
  }
  rows.resize(r0);
  return pivots;
}

int rank_mod_p(std::vector<std::vector<std::uint8_t>> rows, int p) {
  return static_cast<int>(rref_mod_p(rows, p).size());
}

std::vector<std::uint8_t> CoverData::m_coords(const NormalWord &w) const {
  for (int g = 0; g < base_ngens; ++g)
    if (w[g] != 0)
      throw std::logic_error("element is not in the multiplicator");
  return std::vector<std::uint8_t>(w.begin() + base_ngens, w.end());
}

CoverData p_cover(const PcGroup &G) {
  const int p = G.prime();
  const int n = G.ngens();
  const int cls = G.pclass_bound();

  auto is_defining = [&](Definition::Kind kind, int i, int j) {
    for (int g = 0; g < n; ++g) {
      const Definition &d = G.definition(g);
      if (d.kind == kind && d.i == i && d.j == j)
        return true;
    }
    return false;
  };

  // Tails on the non-defining relations of weight <= cls + 1; commutator
  // relations of higher weight are forced trivial in the cover.
  std::vector<Definition> tails;
  std::vector<int> pow_tail(n, -1);
  std::vector<std::vector<int>> comm_tail(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    if (!is_defining(Definition::Power, i, -1)) {
      pow_tail[i] = static_cast<int>(tails.size());
      tails.push_back({Definition::Power, i, -1});
    }
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      if (G.weight(i) + G.weight(j) > cls + 1)
        continue;
      if (is_defining(Definition::Comm, i, j))
        continue;
      comm_tail[j][i] = static_cast<int>(tails.size());
      tails.push_back({Definition::Comm, i, j});
    }
  const int q = static_cast<int>(tails.size());

  // Extended presentation with all q tails central of order p.
  auto extend = [&](const NormalWord &w, int tail) {
    NormalWord out(n + q, 0);
    std::copy(w.begin(), w.end(), out.begin());
    if (tail >= 0)
      out[n + tail] = 1;
    return out;
  };
  std::vector<int> wext(G.weights());
  wext.resize(n + q, cls + 1);
  std::vector<NormalWord> pext(n + q, NormalWord(n + q, 0));
  std::vector<NormalWord> cext(static_cast<size_t>(n + q) * (n + q - 1) / 2,
                               NormalWord(n + q, 0));
  std::vector<Definition> dext(n + q);
  for (int g = 0; g < n; ++g)
    dext[g] = G.definition(g);
  for (int f = 0; f < q; ++f)
    dext[n + f] = tails[f];
  for (int i = 0; i < n; ++i)
    pext[i] = extend(G.power(i), pow_tail[i]);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      cext[static_cast<size_t>(j) * (j - 1) / 2 + i] =
          extend(G.comm(j, i), comm_tail[j][i]);
  PcGroup ext(p, n + q, wext, std::move(pext), std::move(cext), dext);

  // Consistency equations live in the tail coordinates.
  std::vector<std::vector<std::uint8_t>> eqs;
  ext.consistency_overlaps([&](const PcGroup::Overlap &o) {
    for (int g = 0; g < n; ++g)
      if (o.lhs[g] != o.rhs[g])
        throw std::logic_error("cover overlap differs outside the tail space");
    std::vector<std::uint8_t> row(q, 0);
    bool nonzero = false;
    for (int f = 0; f < q; ++f) {
      int d = (o.lhs[n + f] - o.rhs[n + f] + p) % p;
      row[f] = static_cast<std::uint8_t>(d);
      if (d)
        nonzero = true;
    }
    if (nonzero)
      eqs.push_back(std::move(row));
  });
  std::vector<int> pivots = rref_mod_p(eqs, p);

  std::vector<int> surv_index(q, -1);
  std::vector<int> free_cols;
  {
    size_t pi = 0;
    for (int f = 0; f < q; ++f) {
      if (pi < pivots.size() && pivots[pi] == f) {
        ++pi;
        continue;
      }
      surv_index[f] = static_cast<int>(free_cols.size());
      free_cols.push_back(f);
    }
  }
  const int mu = static_cast<int>(free_cols.size());
  auto reduce_tail_part = [&](const NormalWord &w) {
    NormalWord out(n + mu, 0);
    std::copy(w.begin(), w.begin() + n, out.begin());
    std::vector<int> t(q, 0);
    for (int f = 0; f < q; ++f)
      t[f] = w[n + f];
    for (size_t k = 0; k < pivots.size(); ++k) {
      int c = pivots[k];
      if (t[c] == 0)
        continue;
      int fmul = t[c];
      for (int f = 0; f < q; ++f)
        t[f] = ((t[f] - fmul * eqs[k][f]) % p + p) % p;
    }
    for (int f = 0; f < q; ++f) {
      if (t[f] == 0)
        continue;
      if (surv_index[f] < 0)
        throw std::logic_error("eliminated tail not cleared");
      out[n + surv_index[f]] = static_cast<std::uint8_t>(t[f]);
    }
    return out;
  };

  std::vector<int> wcov(G.weights());
  wcov.resize(n + mu, cls + 1);
  std::vector<NormalWord> pcov(n + mu, NormalWord(n + mu, 0));
  std::vector<NormalWord> ccov(static_cast<size_t>(n + mu) * (n + mu - 1) / 2,
                               NormalWord(n + mu, 0));
  std::vector<Definition> dcov(n + mu);
  for (int g = 0; g < n; ++g)
    dcov[g] = G.definition(g);
  for (int i = 0; i < n; ++i)
    pcov[i] = reduce_tail_part(ext.power(i));
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      ccov[static_cast<size_t>(j) * (j - 1) / 2 + i] =
          reduce_tail_part(ext.comm(j, i));

  std::vector<Definition> tail_rel(mu);
  for (int f = 0; f < q; ++f)
    if (surv_index[f] >= 0)
      dcov[n + surv_index[f]] = tail_rel[surv_index[f]] = tails[f];
  CoverData out{PcGroup(p, n + mu, std::move(wcov), std::move(pcov),
                        std::move(ccov), std::move(dcov)),
                n, mu, 0, std::move(tail_rel), {}};

  // Nucleus P_c(cover): spanned by [x, g_k] and x^p for lifts x of a basis
  // of P_{c-1}(G). Everything lands in the central elementary abelian M, so
  // a plain row span suffices.
  {
    SeriesData s = lower_exponent_p_series(G);
    std::vector<std::vector<std::uint8_t>> rows;
    const PcGroup &C = out.cover;
    if (cls - 1 < static_cast<int>(s.terms.size()))
      for (const auto &w : s.terms[cls - 1].basis()) {
        NormalWord x(n + mu, 0);
        std::copy(w.begin(), w.end(), x.begin());
        for (int g = 0; g < n; ++g)
          rows.push_back(out.m_coords(C.commutator(x, C.generator(g))));
        rows.push_back(out.m_coords(C.power_of(x, p)));
      }
    rref_mod_p(rows, p);
    out.nucleus = std::move(rows);
    out.nu = static_cast<int>(out.nucleus.size());
  }
  return out;
}

int relation_rank(const PcGroup &G) { return p_cover(G).mu; }
int nuclear_rank(const PcGroup &G) { return p_cover(G).nu; }

} // namespace pgroups
