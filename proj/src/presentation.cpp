#include "pgroups/presentation.hpp"
#include "pgroups/structure.hpp"

#include <fstream>
#include <sstream>

namespace pgroups {

namespace {

struct RawPresentation {
  int p = 0, n = 0;
  std::vector<int> weights; // empty if absent
  std::vector<NormalWord> powers;
  std::vector<NormalWord> comms;
};

NormalWord parse_rhs(const std::string &s, int p, int n, int min_index,
                     const std::string &where) {
  NormalWord w(n, 0);
  if (s == "id")
    return w;
  std::stringstream ss(s);
  std::string term;
  while (std::getline(ss, term, '*')) {
    if (term.size() < 2 || term[0] != 'g')
      throw std::invalid_argument("bad term '" + term + "' in " + where);
    size_t caret = term.find('^');
    int gen = 0, exp = 1;
    try {
      gen = std::stoi(term.substr(1, caret == std::string::npos
                                         ? std::string::npos
                                         : caret - 1));
      if (caret != std::string::npos)
        exp = std::stoi(term.substr(caret + 1));
    } catch (const std::exception &) {
      throw std::invalid_argument("bad term '" + term + "' in " + where);
    }
    if (gen < 1 || gen > n)
      throw std::invalid_argument("generator out of range in " + where);
    if (exp < 0 || exp >= p)
      throw std::invalid_argument("exponent out of range in " + where);
    if (gen - 1 <= min_index)
      throw std::invalid_argument("relation references lower-index generator in " +
                                  where);
    if (w[gen - 1] != 0)
      throw std::invalid_argument("repeated generator in " + where);
    w[gen - 1] = static_cast<std::uint8_t>(exp);
  }
  return w;
}

RawPresentation parse_raw(const std::string &text) {
  RawPresentation raw;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok))
      continue;
    const std::string where = "line " + std::to_string(lineno);
    if (tok == "p") {
      std::string ntok;
      if (!(ls >> raw.p >> ntok >> raw.n) || ntok != "n" || raw.p < 2 ||
          raw.n < 1)
        throw std::invalid_argument("bad header at " + where);
      raw.powers.assign(raw.n, NormalWord(raw.n, 0));
      raw.comms.assign(static_cast<size_t>(raw.n) * (raw.n - 1) / 2,
                       NormalWord(raw.n, 0));
      have_header = true;
    } else if (!have_header) {
      throw std::invalid_argument("header must come first (" + where + ")");
    } else if (tok == "wt") {
      raw.weights.resize(raw.n);
      for (int i = 0; i < raw.n; ++i)
        if (!(ls >> raw.weights[i]) || raw.weights[i] < 1)
          throw std::invalid_argument("bad weight list at " + where);
    } else if (tok == "pow") {
      int i;
      std::string colon, rhs;
      if (!(ls >> i >> colon >> rhs) || colon != ":" || i < 1 || i > raw.n)
        throw std::invalid_argument("bad pow line at " + where);
      raw.powers[i - 1] = parse_rhs(rhs, raw.p, raw.n, i - 1, where);
    } else if (tok == "comm") {
      int j, i;
      std::string colon, rhs;
      if (!(ls >> j >> i >> colon >> rhs) || colon != ":" || i < 1 ||
          j <= i || j > raw.n)
        throw std::invalid_argument("bad comm line at " + where);
      raw.comms[static_cast<size_t>(j - 1) * (j - 2) / 2 + (i - 1)] =
          parse_rhs(rhs, raw.p, raw.n, j - 1, where);
    } else {
      throw std::invalid_argument("unknown directive '" + tok + "' at " +
                                  where);
    }
  }
  if (!have_header)
    throw std::invalid_argument("missing header line");
  return raw;
}

// First relation (commutators in (j, i) order, then powers) whose top
// generator is k with unit exponent defines k. Any such scheme is valid: it
// only selects which relations are elimination rules.
std::vector<Definition> infer_definitions(const RawPresentation &raw) {
  std::vector<Definition> defs(raw.n);
  std::vector<bool> defined(raw.n, false);
  for (int j = 1; j < raw.n; ++j)
    for (int i = 0; i < j; ++i) {
      const NormalWord &w = raw.comms[static_cast<size_t>(j) * (j - 1) / 2 + i];
      int k = top_gen(w);
      if (k >= 0 && !defined[k] && w[k] == 1) {
        defined[k] = true;
        defs[k] = {Definition::Comm, i, j};
      }
    }
  for (int i = 0; i < raw.n; ++i) {
    int k = top_gen(raw.powers[i]);
    if (k >= 0 && !defined[k] && raw.powers[i][k] == 1) {
      defined[k] = true;
      defs[k] = {Definition::Power, i, -1};
    }
  }
  return defs;
}

} // namespace

PcGroup parse_presentation(const std::string &text) {
  RawPresentation raw = parse_raw(text);
  std::vector<Definition> defs = infer_definitions(raw);
  std::vector<int> weights = raw.weights;
  if (weights.empty()) {
    // Infer weights from the group's own filtration, collecting without the
    // weight shortcut.
    weights = filtration_weights(
        PcGroup::flat(raw.p, raw.n, raw.powers, raw.comms, defs));
  }
  PcGroup G(raw.p, raw.n, std::move(weights), std::move(raw.powers),
            std::move(raw.comms), std::move(defs));
  for (int k = 0; k < G.ngens(); ++k)
    if (G.weight(k) > 1 && G.definition(k).kind == Definition::None)
      throw std::invalid_argument("generator g" + std::to_string(k + 1) +
                                  " of weight > 1 has no defining relation");
  return G;
}

PcGroup parse_presentation_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_presentation(buf.str());
}

std::string print_presentation(const PcGroup &G) {
  std::ostringstream os;
  os << "p " << G.prime() << " n " << G.ngens() << "\n";
  os << "wt";
  for (int i = 0; i < G.ngens(); ++i)
    os << " " << G.weight(i);
  os << "\n";
  for (int i = 0; i < G.ngens(); ++i)
    if (!is_identity(G.power(i)))
      os << "pow " << (i + 1) << " : " << normal_to_string(G.power(i)) << "\n";
  for (int j = 1; j < G.ngens(); ++j)
    for (int i = 0; i < j; ++i)
      if (!is_identity(G.comm(j, i)))
        os << "comm " << (j + 1) << " " << (i + 1) << " : "
           << normal_to_string(G.comm(j, i)) << "\n";
  return os.str();
}

} // namespace pgroups
