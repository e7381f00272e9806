#pragma once

#include <cstdint>
#include <vector>

#include "gradealg.hpp"

namespace ceppa {

// Span of the commutators [x, y] inside the degree-d slice, over the
// coordinates of GradedAlgebra::basis(degree).
RrefBasis commutator_subspace(const GradedAlgebra& ga, int degree);

// dim A[d] - dim [A,A][d] for d = 0 .. through_degree.
std::vector<int> commutator_quotient_dims(const GradedAlgebra& ga, int through_degree);

// Canonical coordinate rows of the degree-d central elements: those
// commuting with every generator and every idempotent.
QMatrix center_subspace(const GradedAlgebra& ga, int degree);

// Values Tr(z^(h-2) e_i) of the functional on the top nonzero slice that
// annihilates the commutators there, scaled so the first nonzero value
// is 1. Throws MissingTopDegree unless the top slice has the expected
// basis { z^k e_i }, NonUniqueTrace unless the annihilator line is unique.
std::vector<Rat> trace_functional(const GradedAlgebra& ga);

/// Graded dimension and Jordan data of the commutator quotient and the
/// center, through the top nonzero degree. Computed, not asserted: the
/// palindrome, support and block-size identities are the caller's checks.
struct GradedTraceData {
  int top_degree = 0;
  std::vector<int> quotient_dims;       // degree 0 .. top
  std::vector<int> center_dims;
  std::vector<int> z_blocks_quotient;   // Jordan sizes of z, ascending
  std::vector<int> z_blocks_center;
};
GradedTraceData graded_trace_data(const GradedAlgebra& ga);

// For every degree d, the Gram pairing Tr(x y) between the degree-d
// center and the complementary commutator quotient slice must be square
// and invertible; also spot-checks Tr(x [y1, y2]) = 0 on seeded random
// samples. Throws DegeneratePairing.
void pairing_check(const GradedAlgebra& ga, std::uint64_t seed = 9);

// Canonical kernel rows of { phi : z^s sum_i eps_i phi_i e_i lies in the
// degree-2s commutator span }, straight from the algebra.
QMatrix e_membership_bruteforce(const GradedAlgebra& ga, const std::vector<int>& eps, int s);

/// One degree slice of the three-term complex
///   A^R[d-2] --d0--> sum over arrows b of (e_tail(b) A e_head(b))[d-1] --d1--> A^R[d]
/// with d0(x) = sum over edge arrows a of ([x,a] in slot a*, -[x,a*] in
/// slot a) and d1(y)_b = sum [y_b, b]; A^R is the diagonal part. Requires
/// the paired arrow layout of preprojective_presentation. Verifies
/// d1 d0 = 0 (ComplexNotChain) and reports dimensions, ranks and homology.
struct ComplexSlice {
  int degree = 0;
  int dim_d0 = 0, dim_d1 = 0, dim_d2 = 0;
  int rank_d0 = 0, rank_d1 = 0;
  int h0 = 0, h1 = 0, h2 = 0;
  int euler = 0;  // dim_d0 - dim_d1 + dim_d2
};
ComplexSlice complex_slice(const GradedAlgebra& ga, int degree);

// Witness y with ad(y) = D for the derivation fixing idempotents and z
// that sends each arrow g to images[g] (degree deg(g) + shift, matching
// block, or zero). Throws NotADerivation unless every relation maps into
// the ideal, NoSolution if no witness exists.
Element inner_derivation_witness(const GradedAlgebra& ga, const std::vector<Element>& images,
                                 int shift);

}  // namespace ceppa
