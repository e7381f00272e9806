#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "exactlin.hpp"
#include "rootsys.hpp"

namespace ceppa {

struct Generator {
  std::string name;
  int tail = 0;
  int head = 0;
  int degree = 1;
};

/// z^zpow * word, with word a composable sequence of generator ids,
/// word[0] the leftmost factor. Products read right to left: xy means
/// "first y, then x" and requires tail(x) = head(y). An empty word is the
/// idempotent e_vtx.
struct Monomial {
  int zpow = 0;
  std::vector<int> word;
  int vtx = -1;
  auto operator<=>(const Monomial&) const = default;
};

struct Term {
  Rat coeff;
  Monomial mono;
  bool operator==(const Term&) const = default;
};

// Sum of terms, kept sorted by monomial with zero coefficients dropped.
using Element = std::vector<Term>;

struct Presentation {
  int vertices = 1;
  bool has_z = true;  // central generator z of degree 2
  std::vector<Generator> gens;
  std::vector<Element> relations;

  int gen_id(const std::string& name) const;
  int mono_tail(const Monomial& m) const;
  int mono_head(const Monomial& m) const;
  int mono_degree(const Monomial& m) const;
  // single (degree, tail, head) shared by all terms; throws on mixed blocks
  std::tuple<int, int, int> element_type(const Element& x) const;
  void validate() const;
};

Element el_term(const Rat& c, Monomial m);
Element el_unit(const Presentation& p, int zpow = 0);  // sum of z^zpow e_v over v
void el_add_scaled(Element& dst, const Rat& c, const Element& src);
Element el_scale(const Element& x, const Rat& c);
Element el_mul(const Presentation& p, const Element& x, const Element& y);
Element el_commutator(const Presentation& p, const Element& x, const Element& y);
bool el_is_homogeneous(const Presentation& p, const Element& x, int* degree = nullptr);
std::string el_str(const Presentation& p, const Element& x);

/// Plain-text presentation format, 1-indexed vertices:
///   vertices <n>
///   central z                      (optional: adds the central degree-2 z)
///   gen <name> <tail> <head> <degree>
///   rel <term> [+|- <term>]...
/// where a term is an optional rational coefficient followed by a monomial:
/// dot-separated generator names, e_<v> idempotents, and z^<k> factors.
Presentation parse_presentation(std::istream& in);
Presentation parse_presentation_file(const std::string& path);
std::string print_presentation(const Presentation& p);

// Arrows a, a* per edge with one relation per vertex:
//   sum_{head(a)=i} a a*  -  sum_{tail(a)=i} a* a  =  mu_i z e_i,
// the right side dropped when include_z is false (the ordinary
// preprojective algebra). Each edge is oriented low -> high unless its
// entry in flip is set.
Presentation preprojective_presentation(const RootSystem& rs, const std::vector<Rat>& mu,
                                        bool include_z = true,
                                        const std::vector<bool>& flip = {});

// Single-vertex algebra on degree-2 generators U_1, U_2, U_3 with central z:
//   U_1 + U_2 + U_3 = z,   prod_{m=0}^{legs[i]} (U_i + m z) = 0.
// With eliminate set, U_3 is replaced by z - U_1 - U_2 throughout.
Presentation b_presentation(const std::vector<int>& legs, bool eliminate);

// Free-monomial counts per degree (saturating; no budget applied).
std::vector<std::int64_t> estimate_monomials(const Presentation& p, int max_degree);

constexpr std::int64_t kDefaultBudget = 2'000'000;

/// Degree-truncated quotient of the free path algebra by the two-sided
/// ideal generated by the relations. Per degree and per (tail, head) pair
/// the ideal slice is held in reduced row echelon form over the free
/// monomials of that block; the canonical basis is the non-pivot monomials.
/// Monomial columns are ordered by ascending z power, then word, so
/// reduction rewrites words into z-heavy normal forms and the top-degree
/// basis of A^mu comes out as { z^(h-2) e_i }.
class GradedAlgebra {
 public:
  GradedAlgebra(Presentation pres, int max_degree, std::int64_t budget = kDefaultBudget);

  const Presentation& pres() const { return pres_; }
  int max_degree() const { return max_degree_; }

  struct Block {
    std::vector<Monomial> monos;
    std::map<Monomial, int> mono_index;
    RrefBasis ideal;
    std::vector<int> basis;  // non-pivot monomial indices, ascending
  };
  const Block& block(int degree, int tail, int head) const;

  int dim(int degree) const;
  std::vector<int> dims() const;
  int block_dim(int degree, int tail, int head) const;

  Element reduce(const Element& x) const;  // normal form mod the ideal
  bool is_zero(const Element& x) const { return reduce(x).empty(); }

  // Coordinates of reduce(x) in the canonical basis of the degree-d slice;
  // blocks concatenated in ascending (tail, head) order. x homogeneous of
  // degree d (or zero).
  std::vector<Monomial> basis(int degree) const;
  SparseVec coords(const Element& x, int degree) const;
  Element from_coords(const SparseVec& v, int degree) const;

  Element product(const Element& x, const Element& y) const;  // reduced

 private:
  void build_degree(int d);
  bool word_less(const std::vector<int>& a, const std::vector<int>& b) const;

  Presentation pres_;
  int max_degree_;
  std::int64_t budget_;
  std::vector<int> name_rank_;  // generator id -> rank in name order
  // words_[wd][tail][head], each list sorted by name-rank lex order
  std::vector<std::vector<std::vector<std::vector<std::vector<int>>>>> words_;
  std::map<std::tuple<int, int, int>, Block> blocks_;
};

// Entry (i,j) holds the graded dimensions of e_i A e_j predicted by
// (1 - t^(2h))/(1 - t^2) (1 - Ct + t^2)^(-1) with C the 0/1 adjacency
// matrix, truncated at 2(h-2)+2; entries are checked to be nonnegative
// and to vanish above 2(h-2).
PolyMatrix hilbert_matrix_predicted(const RootSystem& rs);

}  // namespace ceppa
