#pragma once

#include <map>
#include <string>
#include <vector>

#include "exactlin.hpp"

namespace ceppa {

enum class FamilyType { A, D, E };

FamilyType parse_family(const std::string& s);
std::string family_name(FamilyType f);

/// Simply laced root system with a fixed vertex numbering (1-indexed here,
/// 0-indexed in code):
///   A_n : the line 1-2-...-n
///   D_n : short-leg tips 1 and 2 attached to the nodal vertex n, which is
///         last; the long leg 3-4-...-(n-1) ascends toward the node
///   E_n : chain 1-3-4-5-...-n with 2 attached to 4
/// Positive roots are stored as coefficient vectors over the simple roots,
/// ids sorted by (height, lex).
struct RootSystem {
  FamilyType family;
  int rank = 0;

  std::vector<std::vector<int>> adj;        // sorted neighbor lists
  std::vector<std::pair<int, int>> edges;   // (u, v) with u < v, sorted
  std::vector<std::vector<int>> cartan;     // 2 / -1 / 0
  std::vector<int> eps;                     // bipartite signs, eps[0] = +1

  std::vector<std::vector<int>> roots;      // positive roots, coefficient vectors
  std::vector<int> height;                  // per root id
  std::vector<std::vector<int>> by_height;  // by_height[p] = ids of height p, ascending
  int theta = -1;                           // id of the highest root
  int coxeter = 0;                          // h = height(theta) + 1
  int num_roots = 0;                        // N = h * rank / 2
  std::vector<int> exponents;               // ascending

  int nodal = -1;                           // trivalent vertex, or -1 for type A
  std::vector<int> legs;                    // branch lengths at the nodal vertex, ascending

  std::map<std::vector<int>, int> index;    // coefficient vector -> root id

  int root_id(const std::vector<int>& coeff) const;  // -1 if not a positive root
  int simple_root_id(int vertex) const;
  bool is_root(const std::vector<int>& coeff) const { return root_id(coeff) >= 0; }
  int inner(int rid_a, int rid_b) const;              // (alpha, beta) via the Cartan form
  int inner_simple(int rid, int vertex) const;        // (alpha, alpha_vertex)
};

RootSystem build_root_system(FamilyType family, int rank);

QMatrix cartan_qmatrix(const RootSystem& rs);
QMatrix adjacency_qmatrix(const RootSystem& rs);  // 0/1, each edge once

// (mu, alpha) = sum_i mu_i a_i for a positive root alpha = sum a_i alpha_i.
Rat weight_pair(const RootSystem& rs, const std::vector<Rat>& mu, int root_id);
bool is_regular(const RootSystem& rs, const std::vector<Rat>& mu);
std::vector<Rat> rho_weight(int rank);

// Counts of positive roots by height: entry p holds the number of roots of
// height p + 1, for p = 0 .. h-2.
std::vector<int> height_counts(const RootSystem& rs);
// Same counts restricted to roots whose support contains the nodal vertex.
// Throws NoNodalVertex for type A.
std::vector<int> nodal_height_counts(const RootSystem& rs);

// Descending-path recursion from the highest root: W(theta) = 1 and
// W(alpha) = (sum over simple alpha_j with alpha + alpha_j a root of
// W(alpha + alpha_j)) / (mu, alpha). Requires mu regular. Indexed by root id.
std::vector<Rat> path_weights(const RootSystem& rs, const std::vector<Rat>& mu);
// Plain path counts (the same recursion without the 1/(mu, alpha) factor).
std::vector<Int> path_counts(const RootSystem& rs);

}  // namespace ceppa
