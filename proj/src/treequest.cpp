#include "pgroups/treequest.hpp"

#include "json.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace pgroups {

std::string address_str(const Address &a) {
  std::ostringstream os;
  for (const auto &[s, k] : a)
    os << "-#" << s << ";" << (k + 1);
  if (a.empty())
    os << "root";
  return os.str();
}

SearchSpec SearchSpec::for_prime(int p, int max_lo) {
  SearchSpec spec;
  spec.prime = p;
  spec.root = std::make_shared<Node>(Node::root(p));
  spec.max_log_order = max_lo;
  spec.target.kappa.assign(p + 1, 2);
  spec.target.kappa[0] = 1;
  spec.target.tau.assign(p + 1, Partition::parse("21"));
  spec.target.tau[1] = Partition::parse("1^3");
  if (p == 7)
    spec.target.tau[0] = Partition::parse("1^5");
  else if (p == 5)
    spec.target.tau[0] = Partition::parse("21^3");
  else
    throw std::invalid_argument("built-in search targets exist for p in {5,7}");
  return spec;
}

namespace {

InvariantsRow make_row(const TreeNode &tn) {
  InvariantsRow r;
  r.lo = tn.G().ngens();
  r.cl = nilpotency_class(tn.G());
  r.cc = r.lo - r.cl;
  r.dl = tn.cls.dl;
  r.kappa1 = tn.pattern.kappa.empty() ? 0 : tn.pattern.kappa[0];
  r.tau1 = tn.pattern.tau.empty() ? Partition{} : tn.pattern.tau[0];
  r.nu = tn.node->cover.nu;
  r.mu = tn.node->cover.mu;
  return r;
}

TreeNode make_tree_node(Address addr, std::shared_ptr<Node> node) {
  TreeNode tn;
  tn.address = std::move(addr);
  tn.node = std::move(node);
  tn.pattern = normalize(artin_pattern(tn.G()));
  tn.cls = classify(tn.G(), tn.node->cover, tn.node->auts);
  tn.row = make_row(tn);
  return tn;
}

} // namespace

Expanded expand(const TreeNode &tn, const SearchSpec &spec) {
  Expanded out;
  const Node &node = *tn.node;
  if (node.cover.nu == 0) {
    out.status = ExpandStatus::Terminal;
    return out;
  }
  out.status = ExpandStatus::Ok;
  const int lo = tn.G().ngens();
  if (lo + 1 > spec.max_log_order) {
    out.status = ExpandStatus::BudgetCropped;
    return out;
  }
  ActionMats mats = action_matrices(node);
  for (int s = 1; s <= node.cover.nu; ++s) {
    if (lo + s > spec.max_log_order) {
      out.status = ExpandStatus::BudgetCropped;
      continue;
    }
    StepOrbits orb = orbits_of_step(node, mats, s);
    out.allowable_total += orb.allowable_count;
    const int childlo = lo + s;
    struct Slot {
      bool pruned_pattern = false, pruned_sigma = false;
      std::optional<TreeNode> child;
    };
    std::vector<Slot> slots(orb.reps.size());
    parallel_for(static_cast<int>(orb.reps.size()), spec.threads, [&](int i) {
      PcGroup C = descendant_quotient(node.cover, orb.reps[i]);
      // the searched tree consists of the groups with G/G' of type (p,p);
      // a child that leaves it never comes back (abelianizations only grow)
      if (abelian_invariants(C) != Partition{{1, 1}}) {
        slots[i].pruned_pattern = true;
        return;
      }
      ArtinPattern ap = normalize(artin_pattern(C));
      if (childlo >= spec.stabilization_floor &&
          !matches_filter(ap, spec.target)) {
        slots[i].pruned_pattern = true;
        return;
      }
      StabilizerData probe = stabilizer(node, mats, orb.reps[i], false);
      if (childlo >= spec.sigma_floor && !probe.contains_minus_identity) {
        slots[i].pruned_sigma = true;
        return;
      }
      Node child;
      child.group = std::make_shared<const PcGroup>(std::move(C));
      child.cover = p_cover(*child.group);
      // automorphisms are only needed when the child will be expanded
      const bool expandable =
          child.cover.nu > 0 && childlo < spec.max_log_order;
      if (expandable) {
        StabilizerData sd = stabilizer(node, mats, orb.reps[i]);
        child.auts =
            descend_autgroup(node, mats, orb.reps[i], sd, *child.group);
      }
      Address addr = tn.address;
      addr.push_back({s, i});
      TreeNode ct;
      ct.address = std::move(addr);
      ct.node = std::make_shared<Node>(std::move(child));
      ct.pattern = std::move(ap);
      ct.cls.d1 = 2;
      ct.cls.d2 = ct.node->cover.mu;
      ct.cls.is_sigma = probe.contains_minus_identity;
      ct.cls.is_schur = ct.cls.d2 == 2;
      ct.cls.is_schur_sigma = ct.cls.is_schur && ct.cls.is_sigma;
      ct.cls.dl = derived_length(ct.G());
      ct.cls.is_metabelian = ct.cls.dl <= 2;
      ct.cls.is_non_metabelian = ct.cls.dl >= 3;
      ct.row = make_row(ct);
      slots[i].child = std::move(ct);
    });
    for (auto &sl : slots) {
      if (sl.pruned_pattern)
        ++out.pruned_pattern;
      else if (sl.pruned_sigma)
        ++out.pruned_sigma;
      else if (sl.child)
        out.children.push_back(std::move(*sl.child));
    }
  }
  return out;
}

SearchResult search(const SearchSpec &spec) {
  SearchResult res;
  std::shared_ptr<Node> rootnode =
      spec.root ? spec.root : std::make_shared<Node>(Node::root(spec.prime));
  TreeNode root = make_tree_node({}, rootnode);
  std::vector<TreeNode> stack{root};
  while (!stack.empty()) {
    TreeNode tn = std::move(stack.back());
    stack.pop_back();
    const bool harvest = tn.cls.is_schur_sigma && tn.cls.dl >= 3 &&
                         matches_exact(tn.pattern, spec.target);
    if (harvest)
      res.leaves.push_back(tn);
    Expanded ex = expand(tn, spec);
    ++res.stats.expanded;
    res.stats.pruned_pattern += ex.pruned_pattern;
    res.stats.pruned_sigma += ex.pruned_sigma;
    res.stats.orbit_checksum += ex.allowable_total;
    if (ex.status == ExpandStatus::BudgetCropped) {
      res.budget_hit = true;
      res.frontier.push_back(tn.address);
    }
    // push in reverse so the smallest address is processed first
    for (auto it = ex.children.rbegin(); it != ex.children.rend(); ++it)
      stack.push_back(std::move(*it));
    res.visited.push_back(std::move(tn));
  }
  auto by_address = [](const TreeNode &a, const TreeNode &b) {
    return a.address < b.address;
  };
  std::sort(res.visited.begin(), res.visited.end(), by_address);
  std::sort(res.leaves.begin(), res.leaves.end(), by_address);
  std::sort(res.frontier.begin(), res.frontier.end());
  return res;
}

std::vector<InvariantsRow> root_path(const SearchResult &res,
                                     const TreeNode &leaf, int threads,
                                     bool with_counts) {
  std::vector<InvariantsRow> rows;
  for (const TreeNode &tn : res.visited) {
    if (tn.address.size() > leaf.address.size())
      continue;
    if (!std::equal(tn.address.begin(), tn.address.end(),
                    leaf.address.begin()))
      continue;
    InvariantsRow r = tn.row;
    if (with_counts)
      r.counts = descendant_counts(*tn.node, threads);
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end(),
            [](const InvariantsRow &a, const InvariantsRow &b) {
              return a.lo < b.lo;
            });
  return rows;
}

PcGroup metabelianization(const PcGroup &G) {
  SeriesData ds = derived_series(G);
  if (ds.terms.size() <= 2)
    return G; // already metabelian
  Quotient q(G, ds.terms[2]);
  return q.group();
}

std::string isomorphism_fingerprint(const PcGroup &G) {
  std::ostringstream os;
  os << "lo" << G.ngens();
  os << ";cl" << nilpotency_class(G);
  os << ";dl" << derived_length(G);
  os << ";pc" << exponent_p_class(G);
  ArtinPattern ap = normalize(artin_pattern(G));
  os << ";k" << ap.kappa_str() << ";t" << ap.tau_str();
  SeriesData lcs = lower_central_series(G);
  os << ";gamma";
  for (size_t k = 1; k < lcs.terms.size(); ++k)
    os << "." << abelian_invariants(G, lcs.terms[k]).str();
  SeriesData ds = derived_series(G);
  os << ";der";
  for (size_t k = 1; k < ds.terms.size(); ++k)
    os << "." << abelian_invariants(G, ds.terms[k]).str();
  // derived quotients of the maximal subgroups' derived subgroups
  std::vector<std::string> locals;
  for (const Span &H : maximal_subgroups(G)) {
    Span Hder = commutator_subgroup(G, H, H);
    locals.push_back(abelian_invariants(G, Hder).str() + "|" +
                     std::to_string(Hder.log_size()));
  }
  std::sort(locals.begin(), locals.end());
  os << ";max";
  for (const auto &s : locals)
    os << "." << s;
  return os.str();
}

MainlineStep mainline_step(const TreeNode &tn, const PatternTarget &stab) {
  SearchSpec nofilter;
  nofilter.prime = tn.G().prime();
  nofilter.max_log_order = tn.G().ngens() + 1;
  nofilter.stabilization_floor = 1 << 20;
  nofilter.sigma_floor = 1 << 20;
  nofilter.target = stab;
  Expanded ex = expand(tn, nofilter);
  MainlineStep out;
  bool found = false;
  for (auto &c : ex.children) {
    if (c.address.back().first != 1)
      continue;
    bool is_main = false;
    if (c.row.kappa1 == 0 && partition_leq(tn.row.tau1, c.row.tau1) &&
        !(c.row.tau1 == tn.row.tau1)) {
      // exact stabilization against the target's tail
      PatternTarget t = stab;
      t.kappa[0] = 0;
      t.tau[0] = c.row.tau1;
      is_main = matches_exact(c.pattern, t);
    }
    if (is_main) {
      if (found)
        throw std::logic_error("mainline child is not unique");
      out.mainline = std::move(c);
      found = true;
    } else {
      out.branch.push_back(std::move(c));
    }
  }
  if (!found)
    throw std::logic_error("no mainline child found");
  return out;
}

namespace {

// recursive branch fingerprint to a fixed depth, unfiltered step-1 expansion
std::string branch_fingerprint(const TreeNode &tn, int depth, int max_lo,
                               const PatternTarget &stab, int threads) {
  std::ostringstream os;
  os << "(k" << tn.row.kappa1 << ",t" << tn.row.tau1.str() << ",nu"
     << tn.row.nu << ",mu" << tn.row.mu;
  if (depth > 0 && tn.row.nu > 0 && tn.G().ngens() + 1 <= max_lo) {
    SearchSpec nofilter;
    nofilter.prime = tn.G().prime();
    nofilter.max_log_order = tn.G().ngens() + 1;
    nofilter.stabilization_floor = 1 << 20;
    nofilter.sigma_floor = 1 << 20;
    nofilter.target = stab;
    nofilter.threads = threads;
    Expanded ex = expand(tn, nofilter);
    std::vector<std::string> kids;
    for (const auto &c : ex.children)
      if (c.address.back().first == 1)
        kids.push_back(
            branch_fingerprint(c, depth - 1, max_lo, stab, threads));
    std::sort(kids.begin(), kids.end());
    for (const auto &k : kids)
      os << k;
  }
  os << ")";
  return os.str();
}

} // namespace

PeriodicityReport periodicity_probe(int prime, int branch_index, int depth,
                                    int max_log_order, int threads) {
  PatternTarget stab;
  stab.kappa.assign(prime + 1, 2);
  stab.kappa[0] = 1;
  stab.tau.assign(prime + 1, Partition::parse("21"));
  stab.tau[1] = Partition::parse("1^3");
  stab.tau[0] = Partition::parse("9^9");
  // walk the trunk: root -> extraspecial p^3 -> coclass tree root at p^5
  SearchSpec nofilter;
  nofilter.prime = prime;
  nofilter.max_log_order = max_log_order;
  nofilter.stabilization_floor = 1 << 20;
  nofilter.sigma_floor = 1 << 20;
  nofilter.target = stab;
  nofilter.threads = threads;
  TreeNode root = make_tree_node({}, std::make_shared<Node>(Node::root(prime)));
  Expanded l1 = expand(root, nofilter);
  std::optional<TreeNode> heis;
  for (auto &c : l1.children)
    if (c.address.back().first == 1 && is_identity(c.G().power(0)) &&
        is_identity(c.G().power(1)) && !is_identity(c.G().comm(1, 0)))
      heis = std::move(c);
  if (!heis)
    throw std::logic_error("extraspecial child not found");
  Expanded l2 = expand(*heis, nofilter);
  std::optional<TreeNode> treeroot;
  std::string kap0(1, '0');
  for (int k = 1; k <= prime; ++k)
    kap0 += '2';
  for (auto &c : l2.children)
    if (c.address.back().first == 2 && c.pattern.kappa_str() == kap0 &&
        c.pattern.tau[0] == Partition{{1, 1, 1}})
      treeroot = std::move(c);
  if (!treeroot)
    throw std::logic_error("coclass tree root not found");

  // mainline vertices v_j at lo = 4 + j
  PeriodicityReport rep;
  int wanted = branch_index + (prime - 1);
  std::vector<std::vector<TreeNode>> branches(wanted + 1);
  TreeNode cur = *treeroot;
  for (int j = 1; j <= wanted; ++j) {
    if (cur.G().ngens() + 1 > max_log_order)
      throw std::runtime_error("periodicity probe exceeded the order budget");
    MainlineStep ms = mainline_step(cur, stab);
    branches[j] = std::move(ms.branch);
    cur = std::move(ms.mainline);
  }
  const auto &A = branches[branch_index];
  const auto &B = branches[wanted];
  for (int d = 0; d <= depth; ++d) {
    std::vector<std::string> fa, fb;
    for (const auto &t : A)
      fa.push_back(branch_fingerprint(t, d, max_log_order, stab, threads));
    for (const auto &t : B)
      fb.push_back(branch_fingerprint(t, d, max_log_order, stab, threads));
    std::sort(fa.begin(), fa.end());
    std::sort(fb.begin(), fb.end());
    bool ok = fa == fb;
    rep.level_match.push_back(ok);
    rep.all_match = rep.all_match && ok;
    std::ostringstream os;
    os << "depth " << d << ": B(" << branch_index << ") vs B(" << wanted
       << "): " << (ok ? "match" : "MISMATCH") << " (" << fa.size() << " vs "
       << fb.size() << " vertices)";
    rep.detail.push_back(os.str());
  }
  return rep;
}

std::string tree_json(const SearchSpec &spec, const SearchResult &res) {
  using json = nlohmann::ordered_json;
  json j;
  j["schema"] = "pgroups-tree-v1";
  j["prime"] = spec.prime;
  j["max_log_order"] = spec.max_log_order;
  json tgt;
  {
    ArtinPattern t;
    t.kappa = spec.target.kappa;
    t.tau = spec.target.tau;
    tgt["kappa"] = t.kappa_str();
    tgt["tau"] = t.tau_str();
  }
  j["target"] = tgt;
  json nodes = json::array();
  for (const TreeNode &tn : res.visited) {
    json n;
    n["address"] = address_str(tn.address);
    n["lo"] = tn.row.lo;
    n["cl"] = tn.row.cl;
    n["cc"] = tn.row.cc;
    n["dl"] = tn.row.dl;
    n["kappa"] = tn.pattern.kappa_str();
    n["tau"] = tn.pattern.tau_str();
    n["nu"] = tn.row.nu;
    n["mu"] = tn.row.mu;
    if (!tn.row.counts.empty()) {
      json c;
      for (const auto &[s, nc] : tn.row.counts)
        c[std::to_string(s)] = {nc.first, nc.second};
      n["counts"] = c;
    }
    json flags;
    flags["sigma"] = tn.cls.is_sigma;
    flags["schur"] = tn.cls.is_schur;
    flags["schur_sigma"] = tn.cls.is_schur_sigma;
    flags["metabelian"] = tn.cls.is_metabelian;
    n["flags"] = flags;
    nodes.push_back(n);
  }
  j["nodes"] = nodes;
  json leaves = json::array();
  for (const TreeNode &tn : res.leaves)
    leaves.push_back(address_str(tn.address));
  j["schur_sigma_leaves"] = leaves;
  json frontier = json::array();
  for (const Address &a : res.frontier)
    frontier.push_back(address_str(a));
  j["budget_frontier"] = frontier;
  json stats;
  stats["expanded"] = res.stats.expanded;
  stats["pruned_pattern"] = res.stats.pruned_pattern;
  stats["pruned_sigma"] = res.stats.pruned_sigma;
  stats["allowable_checksum"] = res.stats.orbit_checksum;
  j["stats"] = stats;
  return j.dump(2) + "\n";
}

std::string tree_dot(const SearchResult &res) {
  std::ostringstream os;
  os << "digraph tree {\n  rankdir=TB;\n";
  for (const TreeNode &tn : res.visited) {
    std::string shape = "box";
    if (tn.cls.dl <= 1)
      shape = "box";
    else if (tn.cls.is_metabelian)
      shape = "ellipse";
    else
      shape = tn.cls.is_schur_sigma ? "doubleoctagon" : "diamond";
    os << "  \"" << address_str(tn.address) << "\" [shape=" << shape
       << ", label=\"" << address_str(tn.address) << "\\nlo " << tn.row.lo
       << " k" << tn.pattern.kappa_str() << "\"];\n";
  }
  for (const TreeNode &tn : res.visited) {
    if (tn.address.empty())
      continue;
    Address parent = tn.address;
    parent.pop_back();
    os << "  \"" << address_str(parent) << "\" -> \""
       << address_str(tn.address) << "\" [label=\"s" << tn.address.back().first
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace pgroups
