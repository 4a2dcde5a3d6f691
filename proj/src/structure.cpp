#include "pgroups/structure.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pgroups {

int Partition::sum() const {
  int s = 0;
  for (int x : parts)
    s += x;
  return s;
}

bool Partition::operator<(const Partition &o) const {
  if (sum() != o.sum())
    return sum() > o.sum();
  return parts < o.parts;
}

std::string Partition::str() const {
  if (parts.empty())
    return "()";
  std::ostringstream os;
  size_t i = 0;
  while (i < parts.size()) {
    size_t j = i;
    while (j < parts.size() && parts[j] == parts[i])
      ++j;
    os << parts[i];
    if (j - i > 1)
      os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

Partition Partition::parse(const std::string &s) {
  Partition out;
  if (s == "()" || s.empty())
    return out;
  size_t i = 0;
  while (i < s.size()) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("bad partition: " + s);
    int part = s[i] - '0';
    ++i;
    int rep = 1;
    // single-digit multiplicities; parts here never repeat ten-fold
    if (i < s.size() && s[i] == '^') {
      ++i;
      if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
        throw std::invalid_argument("bad partition exponent: " + s);
      rep = s[i] - '0';
      ++i;
      if (rep <= 0)
        throw std::invalid_argument("bad partition exponent: " + s);
    }
    for (int k = 0; k < rep; ++k)
      out.parts.push_back(part);
  }
  for (size_t k = 1; k < out.parts.size(); ++k)
    if (out.parts[k] > out.parts[k - 1])
      throw std::invalid_argument("partition parts must descend: " + s);
  return out;
}

static Span whole_group(const PcGroup &G) {
  Span s(G);
  for (int g = 0; g < G.ngens(); ++g)
    s.add_generator(G.generator(g));
  return s;
}

SeriesData derived_series(const PcGroup &G) {
  SeriesData out{SeriesKind::Derived, {}};
  out.terms.push_back(whole_group(G));
  for (;;) {
    const Span &last = out.terms.back();
    if (last.is_trivial())
      break;
    Span next = commutator_subgroup(G, last, last);
    if (next.log_size() == last.log_size())
      throw std::logic_error("derived series did not descend");
    out.terms.push_back(std::move(next));
  }
  return out;
}

int derived_length(const PcGroup &G) { return derived_series(G).length(); }

SeriesData lower_central_series(const PcGroup &G) {
  SeriesData out{SeriesKind::LowerCentral, {}};
  out.terms.push_back(whole_group(G));
  while (!out.terms.back().is_trivial()) {
    Span next = commutator_subgroup(G, out.terms.back(), out.terms.front());
    if (next.log_size() == out.terms.back().log_size())
      throw std::logic_error("lower central series did not descend");
    out.terms.push_back(std::move(next));
  }
  return out;
}

int nilpotency_class(const PcGroup &G) {
  return lower_central_series(G).length();
}

int coclass(const PcGroup &G) { return G.ngens() - nilpotency_class(G); }

SeriesData lower_exponent_p_series(const PcGroup &G) {
  SeriesData out{SeriesKind::LowerExponentP, {}};
  out.terms.push_back(whole_group(G));
  while (!out.terms.back().is_trivial()) {
    const Span &P = out.terms.back();
    Span next(G);
    next.make_normal();
    for (const auto &w : P.basis()) {
      for (int g = 0; g < G.ngens(); ++g)
        next.add_generator(G.commutator(w, G.generator(g)));
      next.add_generator(G.power_of(w, G.prime()));
    }
    if (next.log_size() == P.log_size())
      throw std::logic_error("lower exponent-p series did not descend");
    out.terms.push_back(std::move(next));
  }
  return out;
}

int exponent_p_class(const PcGroup &G) {
  return lower_exponent_p_series(G).length();
}

std::vector<int> filtration_weights(const PcGroup &G) {
  SeriesData s = lower_exponent_p_series(G);
  std::vector<int> w(G.ngens(), 0);
  for (int g = 0; g < G.ngens(); ++g) {
    int depth = 0;
    while (depth + 1 < static_cast<int>(s.terms.size()) &&
           s.terms[depth + 1].contains(G.generator(g)))
      ++depth;
    w[g] = depth + 1;
  }
  for (int g = 1; g < G.ngens(); ++g)
    if (w[g] < w[g - 1])
      throw std::invalid_argument(
          "presentation is not weighted: filtration weights not monotone");
  return w;
}

// Work modulo cap = p^B, the largest p-power below 2^61. All elementary
// divisors in scope have valuation far below B, so the cap never masks one.
std::vector<int> p_smith_exponents(std::vector<std::vector<long>> mat, int p) {
  const size_t rows = mat.size();
  if (rows == 0)
    return {};
  const size_t cols = mat[0].size();
  long cap = p;
  while (cap <= (1L << 61) / p)
    cap *= p;
  const int INF = 1 << 20;
  auto val = [&](long x) {
    if (x == 0)
      return INF;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  };
  auto modinv = [&](long u, long m) {
    long t0 = 0, t1 = 1, r0 = m, r1 = ((u % m) + m) % m;
    while (r1 != 0) {
      long q = r0 / r1;
      long t2 = t0 - q * t1;
      long r2 = r0 - q * r1;
      t0 = t1;
      t1 = t2;
      r0 = r1;
      r1 = r2;
    }
    return ((t0 % m) + m) % m;
  };
  for (auto &row : mat)
    for (auto &x : row)
      x = ((x % cap) + cap) % cap;

  std::vector<int> exps;
  size_t r0 = 0, c0 = 0;
  while (r0 < rows && c0 < cols) {
    size_t pr = r0, pc = c0;
    int best = INF;
    for (size_t r = r0; r < rows; ++r)
      for (size_t c = c0; c < cols; ++c)
        if (val(mat[r][c]) < best) {
          best = val(mat[r][c]);
          pr = r;
          pc = c;
        }
    if (best >= INF)
      break;
    std::swap(mat[r0], mat[pr]);
    for (size_t r = 0; r < rows; ++r)
      std::swap(mat[r][c0], mat[r][pc]);

    const long piv = mat[r0][c0];
    const int v = best;
    long pv = 1;
    for (int k = 0; k < v; ++k)
      pv *= p;
    const long unit_inv = modinv(piv / pv, cap / pv);
    auto multiplier = [&](long a) {
      // m with a == m * piv mod cap; valid since val(a) >= v.
      return static_cast<long>(
          (static_cast<__int128>(a / pv) * unit_inv) % (cap / pv));
    };
    for (size_t r = r0 + 1; r < rows; ++r) {
      if (mat[r][c0] == 0)
        continue;
      long m = multiplier(mat[r][c0]);
      for (size_t c = c0; c < cols; ++c) {
        __int128 x = static_cast<__int128>(mat[r][c]) -
                     static_cast<__int128>(m) * mat[r0][c];
        mat[r][c] = static_cast<long>(((x % cap) + cap) % cap);
      }
    }
    for (size_t c = c0 + 1; c < cols; ++c) {
      if (mat[r0][c] == 0)
        continue;
      long m = multiplier(mat[r0][c]);
      __int128 x = static_cast<__int128>(mat[r0][c]) -
                   static_cast<__int128>(m) * mat[r0][c0];
      mat[r0][c] = static_cast<long>(((x % cap) + cap) % cap);
    }
    exps.push_back(v);
    ++r0;
    ++c0;
  }
  // Remaining zero columns would be free summands; finite p-groups have none.
  while (exps.size() < cols)
    exps.push_back(-1);
  return exps;
}

Partition abelian_invariants(const PcGroup &G, const Span &H) {
  std::vector<NormalWord> basis = H.basis();
  const int m = static_cast<int>(basis.size());
  if (m == 0)
    return {};
  // Relation matrix of H/[H,H] over the induced generating sequence:
  // p*e_k - coords(u_k^p) and coords([u_l, u_k]).
  std::vector<std::vector<long>> mat;
  auto coords_of = [&](const NormalWord &w) {
    auto c = H.coordinates(w);
    if (!c)
      throw std::logic_error("element not in subgroup during abelianization");
    return *c;
  };
  for (int k = 0; k < m; ++k) {
    auto c = coords_of(G.power_of(basis[k], G.prime()));
    std::vector<long> row(m, 0);
    for (int t = 0; t < m; ++t)
      row[t] = -c[t];
    row[k] += G.prime();
    mat.push_back(std::move(row));
  }
  for (int l = 1; l < m; ++l)
    for (int k = 0; k < l; ++k) {
      auto c = coords_of(G.commutator(basis[l], basis[k]));
      std::vector<long> row(m, 0);
      for (int t = 0; t < m; ++t)
        row[t] = c[t];
      mat.push_back(std::move(row));
    }
  std::vector<int> exps = p_smith_exponents(std::move(mat), G.prime());
  Partition out;
  for (int e : exps) {
    if (e < 0)
      throw std::logic_error("abelianization of finite p-group must be finite");
    if (e > 0)
      out.parts.push_back(e);
  }
  std::sort(out.parts.begin(), out.parts.end(), std::greater<>());
  return out;
}

Partition abelian_invariants(const PcGroup &G) {
  // straight from the presentation: abelianized relations over the full
  // generating set
  const int n = G.ngens();
  std::vector<std::vector<long>> mat;
  for (int i = 0; i < n; ++i) {
    std::vector<long> row(n, 0);
    for (int k = 0; k < n; ++k)
      row[k] = -static_cast<long>(G.power(i)[k]);
    row[i] += G.prime();
    mat.push_back(std::move(row));
  }
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      std::vector<long> row(n, 0);
      bool nz = false;
      for (int k = 0; k < n; ++k) {
        row[k] = G.comm(j, i)[k];
        nz = nz || row[k];
      }
      if (nz)
        mat.push_back(std::move(row));
    }
  std::vector<int> exps = p_smith_exponents(std::move(mat), G.prime());
  Partition out;
  for (int e : exps) {
    if (e < 0)
      throw std::logic_error("abelianization of finite p-group must be finite");
    if (e > 0)
      out.parts.push_back(e);
  }
  std::sort(out.parts.begin(), out.parts.end(), std::greater<>());
  return out;
}

int generator_rank(const PcGroup &G) {
  return G.ngens() - frattini_subgroup(G).log_size();
}

} // namespace pgroups
