#pragma once

#include <cstdint>
#include <vector>

#include "exactlin.hpp"
#include "rootsys.hpp"

namespace ceppa {

// P[i][j] = 1 iff i == j, or i and j are adjacent with i < j
std::vector<std::vector<int>> asymmetry_matrix(const RootSystem& rs);

// (-1)^(sum_{i,j} a_i b_j P[i][j]) for coefficient vectors a, b
int epsilon_sign(const std::vector<std::vector<int>>& P, const std::vector<int>& a,
                 const std::vector<int>& b);

/// Nilpotent half of the simple Lie algebra, spanned by F_alpha over the
/// positive roots with [F_alpha, F_beta] = coeff[a][b] F_{sum_id[a][b]}
/// (coeff is 0 when alpha + beta is not a root). The tables are indexed by
/// root id; rs must outlive the struct.
struct NilpotentLie {
  const RootSystem* rs = nullptr;
  std::vector<std::vector<int>> sum_id;
  std::vector<std::vector<int>> coeff;
};

// Builds the bracket tables from the asymmetry sign and verifies them:
// antisymmetry, the Serre relations on simple generators, generation of
// every non-simple root space, and the Jacobi identity. Jacobi is checked
// on all triples when there are at most 100 roots; above that, on every
// triple extending a pair with nonzero bracket plus random_triples seeded
// random triples.
NilpotentLie build_nilpotent(const RootSystem& rs, std::uint64_t seed = 1,
                             int random_triples = 100000);

// Signs c making the raising operator act with unit coefficients:
// c = 1 on simple roots and c_{beta+alpha_i} = c_beta eps(alpha_i, beta)
// eps_i, which must be decomposition independent.
std::vector<int> lusztig_rescale(const NilpotentLie& lie);

// Matrix of ad(-h_lambda + sum_i eps_i F_i) composed with ad(h_mu)^(-1)
// on the basis F'_alpha = scale_alpha F_alpha, columns indexed by root id:
//   L F'_alpha = -1/(mu,alpha) [ (lambda,alpha) F'_alpha
//                + sum_i eps_i eps(alpha_i,alpha) (scale ratio) F'_{alpha+alpha_i} ].
// Empty lambda means zero, empty scale means the unscaled basis.
QMatrix l_operator(const NilpotentLie& lie, const std::vector<Rat>& mu,
                   const std::vector<Rat>& lambda = {}, const std::vector<int>& scale = {});

// Degree-raising transfer matrices T_1 .. T_{h-2}; entry k maps functions
// on height-(k+1) roots to functions on height-(k+2) roots by
//   (T f)(alpha) = sum over simple alpha_j with alpha - alpha_j a root of
//                  f(alpha - alpha_j) / (mu, alpha - alpha_j),
// bases ordered as in by_height.
std::vector<QMatrix> t_matrices(const RootSystem& rs, const std::vector<Rat>& mu);

// Block of a root-indexed operator from height h0 to height h0 + 1.
QMatrix height_block(const RootSystem& rs, const QMatrix& m, int from_height);

// Entry s = rank(T_s ... T_1) for s = 0 .. h-2 (s = 0 gives the rank).
std::vector<int> t_rank_chain(const RootSystem& rs, const std::vector<Rat>& mu);

// (T_{h-2} ... T_1 u_i)(theta) with u_i the indicator of alpha_i; equals
// the descending-path weight at alpha_i.
std::vector<Rat> t_path_traces(const RootSystem& rs, const std::vector<Rat>& mu);

// Whether z^s sum_i eps_i phi_i e_i lies in the commutator subspace,
// decided on the root system side: false for s = 0 unless phi = 0, true
// for s >= h-1, otherwise a kernel condition on phi.
bool t_membership(const RootSystem& rs, const std::vector<Rat>& mu, const std::vector<Rat>& phi,
                  int s);  // T_s ... T_1 u_phi = 0
bool l_membership(const NilpotentLie& lie, const std::vector<Rat>& mu,
                  const std::vector<Rat>& phi, int s);  // L^s (sum phi_i F'_i) = 0

// Coefficient tuples (f_1, ..., f_r), deg f_i <= h-2, solving the scalar
// system: for every positive root alpha, with x_alpha = -(lambda,alpha)/(mu,alpha),
//   sum_i f_i(x_alpha) eps_i a_i(alpha) = 0.
// Rows are the canonical kernel basis over columns (i, k) -> i (h-1) + k;
// throws NonGenericLambda unless the x_alpha are pairwise distinct.
QMatrix w_lambda_scalar(const RootSystem& rs, const std::vector<Rat>& mu,
                        const std::vector<Rat>& lambda);

// The same coefficient tuples cut out by the operator equation
// sum_i f_i(L_lambda) F_i = 0 in the Lusztig-scaled basis.
QMatrix w_lambda_operator(const NilpotentLie& lie, const std::vector<Rat>& mu,
                          const std::vector<Rat>& lambda);

}  // namespace ceppa
