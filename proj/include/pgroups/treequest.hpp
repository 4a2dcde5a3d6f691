#pragma once

#include "pgroups/artin.hpp"
#include "pgroups/descend.hpp"
#include "pgroups/sigma.hpp"

#include <map>
#include <memory>
#include <string>

namespace pgroups {

// One edge of a tree address: (step size, orbit index at that step).
using Address = std::vector<std::pair<int, int>>;
std::string address_str(const Address &a);

struct InvariantsRow {
  int lo = 0, cl = 0, cc = 0, dl = 0;
  int kappa1 = 0;
  Partition tau1;
  int nu = 0, mu = 0;
  std::map<int, std::pair<int, int>> counts; // N_s/C_s when computed
};

struct TreeNode {
  Address address;
  std::shared_ptr<Node> node;  // group + cover + automorphisms
  ArtinPattern pattern;        // normalized
  Classification cls;
  InvariantsRow row;           // counts filled only where requested

  const PcGroup &G() const { return node->G(); }
};

struct SearchSpec {
  int prime = 5;
  std::shared_ptr<Node> root;     // default: elementary bicyclic root
  PatternTarget target;           // polarization first, stabilization after
  int max_log_order = 8;
  int stabilization_floor = 5;    // pattern filter applies from this order on
  int sigma_floor = 6;            // only sigma groups are kept past this
  int threads = 1;
  bool collect_counts = false;    // fill N_s/C_s for every kept node

  static SearchSpec for_prime(int p, int max_lo);
};

struct SearchStats {
  long expanded = 0;
  long pruned_pattern = 0;
  long pruned_sigma = 0;
  long orbit_checksum = 0; // sum over expansions of the raw allowable counts
};

struct SearchResult {
  std::vector<TreeNode> leaves;   // Schur sigma harvest in address order
  std::vector<TreeNode> visited;  // all kept nodes in address order
  std::vector<Address> frontier;  // capable nodes cropped by the budget
  bool budget_hit = false;
  SearchStats stats;
};

SearchResult search(const SearchSpec &spec);

// Children of one node after the spec's pruning rules. Budget exhaustion is
// reported through the status, distinct from an empty expansion.
enum class ExpandStatus { Ok, BudgetCropped, Terminal };
struct Expanded {
  ExpandStatus status = ExpandStatus::Terminal;
  std::vector<TreeNode> children;
  long pruned_pattern = 0;
  long pruned_sigma = 0;
  long allowable_total = 0;
};
Expanded expand(const TreeNode &tn, const SearchSpec &spec);

// Invariants rows from the root of the searched tree down to the node.
std::vector<InvariantsRow> root_path(const SearchResult &res,
                                     const TreeNode &leaf, int threads = 1,
                                     bool with_counts = true);

// G/G'' as a consistent presentation.
PcGroup metabelianization(const PcGroup &G);

// Invariant fingerprint used to separate non-isomorphic groups sharing an
// Artin pattern: series layer data and derived invariants of the maximal
// subgroups. Equal groups get equal strings; the two metabelianization
// classes in each workload here get different ones.
std::string isomorphism_fingerprint(const PcGroup &G);

// Mainline step inside a coclass tree: the unique child with total polarized
// kernel, exact stabilization and strictly grown tau_1.
struct MainlineStep {
  TreeNode mainline;
  std::vector<TreeNode> branch; // the other step-1 children
};
MainlineStep mainline_step(const TreeNode &tn, const PatternTarget &stab);

struct PeriodicityReport {
  std::vector<bool> level_match;
  bool all_match = true;
  std::vector<std::string> detail;
};
// Compare branches B(i) and B(i + p - 1) by invariant fingerprints levelwise.
PeriodicityReport periodicity_probe(int prime, int branch_index, int depth,
                                    int max_log_order, int threads = 1);

// Deterministic exports.
std::string tree_json(const SearchSpec &spec, const SearchResult &res);
std::string tree_dot(const SearchResult &res);

} // namespace pgroups
