#include "traceform.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>

#include "errors.hpp"

namespace ceppa {

namespace {

Element mono_el(const Monomial& m) { return el_term(Rat(1), m); }

Element gen_el(int g) { return el_term(Rat(1), Monomial{0, {g}, -1}); }

int top_nonzero(const GradedAlgebra& ga) {
  int top = ga.max_degree();
  while (top > 0 && ga.dim(top) == 0) --top;
  return top;
}

// local coordinates of a reduced single-block element
SparseVec block_coords(const GradedAlgebra::Block& blk, const Element& x) {
  SparseVec out;
  for (const auto& tm : x) {
    auto it = blk.mono_index.find(tm.mono);
    require(it != blk.mono_index.end(), errc::internal, "monomial outside its block");
    auto bit = std::lower_bound(blk.basis.begin(), blk.basis.end(), it->second);
    require(bit != blk.basis.end() && *bit == it->second, errc::internal,
            "non-basis monomial in a normal form");
    out.emplace_back(int(bit - blk.basis.begin()), tm.coeff);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

Element random_element(const GradedAlgebra& ga, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Element x;
  for (const auto& m : ga.basis(degree)) {
    int c = coef(rng);
    if (c) el_add_scaled(x, Rat(c), mono_el(m));
  }
  return x;
}

SparseVec qmatrix_row(const QMatrix& m, int i) {
  SparseVec v;
  for (int j = 0; j < m.cols(); ++j)
    if (m.at(i, j) != 0) v.emplace_back(j, m.at(i, j));
  return v;
}

// offsets of the per-vertex diagonal blocks inside one degree slice
struct DiagLayout {
  std::vector<int> off;
  int dim = 0;
};

DiagLayout diag_layout(const GradedAlgebra& ga, int degree) {
  DiagLayout lay;
  int v = ga.pres().vertices;
  lay.off.resize(v, 0);
  if (degree < 0) return lay;
  for (int i = 0; i < v; ++i) {
    lay.off[i] = lay.dim;
    lay.dim += ga.block_dim(degree, i, i);
  }
  return lay;
}

// offsets of the arrow slots e_tail(g) A e_head(g) at one degree
struct SlotLayout {
  std::vector<int> off;
  int dim = 0;
};

SlotLayout slot_layout(const GradedAlgebra& ga, int degree) {
  SlotLayout lay;
  const auto& gens = ga.pres().gens;
  lay.off.resize(gens.size(), 0);
  if (degree < 0) return lay;
  for (size_t g = 0; g < gens.size(); ++g) {
    lay.off[g] = lay.dim;
    lay.dim += ga.block_dim(degree, gens[g].head, gens[g].tail);
  }
  return lay;
}

void require_arrow_pairs(const Presentation& p) {
  bool ok = p.gens.size() % 2 == 0;
  for (size_t g = 0; ok && g < p.gens.size(); ++g) {
    ok = p.gens[g].degree == 1 && p.gens[g].tail == p.gens[g ^ 1].head &&
         p.gens[g].head == p.gens[g ^ 1].tail;
  }
  require(ok, errc::bad_argument, "expects the paired arrow layout of a double quiver");
}

// columns indexed by the diagonal slice at degree-2, rows by the arrow
// slots at degree-1: x -> sum over edge arrows ([x,a] in slot a*, -[x,a*]
// in slot a)
QMatrix d0_matrix(const GradedAlgebra& ga, int degree, const DiagLayout& dom,
                  const SlotLayout& cod) {
  const auto& p = ga.pres();
  QMatrix m(cod.dim, dom.dim);
  if (degree < 2) return m;
  for (int i = 0; i < p.vertices; ++i) {
    const auto& blk = ga.block(degree - 2, i, i);
    for (size_t lx = 0; lx < blk.basis.size(); ++lx) {
      int col = dom.off[i] + int(lx);
      Element x = mono_el(blk.monos[blk.basis[lx]]);
      for (size_t g = 0; g < p.gens.size(); ++g) {
        Element c = el_commutator(p, x, gen_el(int(g ^ 1)));
        if (g % 2 == 0) c = el_scale(c, Rat(-1));
        c = ga.reduce(c);
        if (c.empty()) continue;
        const auto& slot = ga.block(degree - 1, p.gens[g].head, p.gens[g].tail);
        for (const auto& [idx, val] : block_coords(slot, c)) m.at(cod.off[g] + idx, col) = val;
      }
    }
  }
  return m;
}

QMatrix d1_matrix(const GradedAlgebra& ga, int degree, const SlotLayout& dom,
                  const DiagLayout& cod) {
  const auto& p = ga.pres();
  QMatrix m(cod.dim, dom.dim);
  if (degree < 1) return m;
  for (size_t g = 0; g < p.gens.size(); ++g) {
    const auto& slot = ga.block(degree - 1, p.gens[g].head, p.gens[g].tail);
    for (size_t ly = 0; ly < slot.basis.size(); ++ly) {
      int col = dom.off[g] + int(ly);
      Element c = ga.reduce(el_commutator(p, mono_el(slot.monos[slot.basis[ly]]), gen_el(int(g))));
      // terms split over the diagonal blocks at tail(g) and head(g)
      for (int v : {p.gens[g].tail, p.gens[g].head}) {
        Element part;
        for (const auto& tm : c)
          if (p.mono_tail(tm.mono) == v) part.push_back(tm);
        if (part.empty()) continue;
        for (const auto& [idx, val] : block_coords(ga.block(degree, v, v), part))
          m.at(cod.off[v] + idx, col) = val;
      }
    }
  }
  return m;
}

}  // namespace

RrefBasis commutator_subspace(const GradedAlgebra& ga, int degree) {
  require(degree >= 0 && degree <= ga.max_degree(), errc::degree_overflow,
          "degree " + std::to_string(degree) + " outside the built range");
  const auto& p = ga.pres();
  RrefBasis span;
  for (int d1 = 0; 2 * d1 <= degree; ++d1) {
    int d2 = degree - d1;
    auto b1 = ga.basis(d1);
    auto b2 = ga.basis(d2);
    for (size_t i = 0; i < b1.size(); ++i) {
      size_t j0 = (d1 == d2) ? i + 1 : 0;
      for (size_t j = j0; j < b2.size(); ++j) {
        Element c = el_commutator(p, mono_el(b1[i]), mono_el(b2[j]));
        if (!c.empty()) span.insert(ga.coords(c, degree));
      }
    }
  }
  return span;
}

std::vector<int> commutator_quotient_dims(const GradedAlgebra& ga, int through_degree) {
  require(through_degree >= 0 && through_degree <= ga.max_degree(), errc::degree_overflow,
          "degree range outside the built range");
  std::vector<int> out(size_t(through_degree) + 1);
  for (int d = 0; d <= through_degree; ++d)
    out[size_t(d)] = ga.dim(d) - commutator_subspace(ga, d).dim();
  return out;
}

QMatrix center_subspace(const GradedAlgebra& ga, int degree) {
  const auto& p = ga.pres();
  int maxgen = 0;
  for (const auto& g : p.gens) maxgen = std::max(maxgen, g.degree);
  require(degree >= 0 && degree + maxgen <= ga.max_degree(), errc::degree_overflow,
          "centrality constraints in degree " + std::to_string(degree) +
              " land outside the built range");
  auto b = ga.basis(degree);
  int n = int(b.size());

  std::vector<Element> constraints;
  for (size_t g = 0; g < p.gens.size(); ++g) constraints.push_back(gen_el(int(g)));
  for (int v = 0; v < p.vertices; ++v) constraints.push_back(mono_el(Monomial{0, {}, v}));

  int nrows = 0;
  std::vector<int> offs;
  for (const auto& c : constraints) {
    int dc = 0;
    el_is_homogeneous(p, c, &dc);
    offs.push_back(nrows);
    nrows += ga.dim(degree + dc);
  }
  QMatrix m(nrows, n);
  for (int j = 0; j < n; ++j) {
    Element x = mono_el(b[size_t(j)]);
    for (size_t k = 0; k < constraints.size(); ++k) {
      int dc = 0;
      el_is_homogeneous(p, constraints[k], &dc);
      for (const auto& [idx, val] : ga.coords(el_commutator(p, x, constraints[k]), degree + dc))
        m.at(offs[k] + idx, j) = val;
    }
  }
  return kernel_basis(m);
}

std::vector<Rat> trace_functional(const GradedAlgebra& ga) {
  const auto& p = ga.pres();
  int top = top_nonzero(ga);
  auto b = ga.basis(top);
  bool shape = p.has_z && top % 2 == 0 && int(b.size()) == p.vertices;
  for (int i = 0; shape && i < p.vertices; ++i)
    shape = b[size_t(i)] == Monomial{top / 2, {}, i};
  require(shape, errc::missing_top_degree,
          "top slice is not spanned by one z^k e_i per vertex");

  auto rows = commutator_subspace(ga, top).canonical_rows();
  QMatrix m(int(rows.size()), p.vertices);
  for (size_t i = 0; i < rows.size(); ++i)
    for (const auto& [idx, val] : rows[i]) m.at(int(i), idx) = val;
  QMatrix ker = kernel_basis(m);
  require(ker.rows() == 1, errc::non_unique_trace,
          "trace annihilator has dimension " + std::to_string(ker.rows()));

  std::vector<Rat> t(size_t(p.vertices));
  Rat lead;
  for (int i = 0; i < p.vertices; ++i) {
    t[size_t(i)] = ker.at(0, i);
    if (lead == 0) lead = t[size_t(i)];
  }
  require(lead != 0, errc::non_unique_trace, "zero trace functional");
  for (auto& c : t) c /= lead;
  return t;
}

GradedTraceData graded_trace_data(const GradedAlgebra& ga) {
  const auto& p = ga.pres();
  require(p.has_z, errc::bad_argument, "graded trace data needs the central z");
  GradedTraceData data;
  int top = data.top_degree = top_nonzero(ga);
  require(top + 2 <= ga.max_degree(), errc::degree_overflow,
          "the z action needs two degrees of headroom above the top slice");

  std::vector<RrefBasis> comm(size_t(top) + 1);
  std::vector<std::vector<int>> qcols(size_t(top) + 1);
  std::vector<int> qoff(size_t(top) + 2, 0);
  for (int d = 0; d <= top; ++d) {
    comm[size_t(d)] = commutator_subspace(ga, d);
    const auto& piv = comm[size_t(d)].pivots();
    for (int c = 0; c < ga.dim(d); ++c)
      if (!piv.count(c)) qcols[size_t(d)].push_back(c);
    data.quotient_dims.push_back(int(qcols[size_t(d)].size()));
    qoff[size_t(d) + 1] = qoff[size_t(d)] + int(qcols[size_t(d)].size());
  }

  const Element z = el_unit(p, 1);
  QMatrix zq(qoff[size_t(top) + 1], qoff[size_t(top) + 1]);
  for (int d = 0; d <= top; ++d) {
    for (size_t c = 0; c < qcols[size_t(d)].size(); ++c) {
      Element zx = ga.product(z, ga.from_coords(sv_unit(qcols[size_t(d)][c]), d));
      if (d + 2 > top) {
        require(zx.empty(), errc::internal, "nonzero slice above the top degree");
        continue;
      }
      SparseVec v = comm[size_t(d) + 2].reduce(ga.coords(zx, d + 2));
      for (const auto& [idx, val] : v) {
        const auto& cols = qcols[size_t(d) + 2];
        auto it = std::lower_bound(cols.begin(), cols.end(), idx);
        require(it != cols.end() && *it == idx, errc::internal, "reduction left a pivot column");
        zq.at(qoff[size_t(d) + 2] + int(it - cols.begin()), qoff[size_t(d)] + int(c)) = val;
      }
    }
  }
  data.z_blocks_quotient = nilpotent_block_sizes(zq);

  std::vector<RrefBasis> cent(size_t(top) + 1);
  std::vector<int> zoff(size_t(top) + 2, 0);
  for (int d = 0; d <= top; ++d) {
    QMatrix rows = center_subspace(ga, d);
    for (int i = 0; i < rows.rows(); ++i) cent[size_t(d)].insert(qmatrix_row(rows, i));
    data.center_dims.push_back(cent[size_t(d)].dim());
    zoff[size_t(d) + 1] = zoff[size_t(d)] + cent[size_t(d)].dim();
  }
  QMatrix zc(zoff[size_t(top) + 1], zoff[size_t(top) + 1]);
  for (int d = 0; d <= top; ++d) {
    auto rows = cent[size_t(d)].canonical_rows();
    for (size_t k = 0; k < rows.size(); ++k) {
      Element zx = ga.product(z, ga.from_coords(rows[k], d));
      if (d + 2 > top) {
        require(zx.empty(), errc::internal, "nonzero slice above the top degree");
        continue;
      }
      auto cb = cent[size_t(d) + 2].coords_in_basis(ga.coords(zx, d + 2));
      require(cb.has_value(), errc::internal, "z image left the center");
      for (const auto& [idx, val] : *cb) zc.at(zoff[size_t(d) + 2] + idx, zoff[size_t(d)] + int(k)) = val;
    }
  }
  data.z_blocks_center = nilpotent_block_sizes(zc);
  return data;
}

void pairing_check(const GradedAlgebra& ga, std::uint64_t seed) {
  const auto& p = ga.pres();
  auto t = trace_functional(ga);
  int top = top_nonzero(ga);
  auto tr = [&](const Element& x) -> Rat {
    Rat s = 0;
    for (const auto& [i, c] : ga.coords(x, top)) s += t[size_t(i)] * c;
    return s;
  };

  std::mt19937_64 rng(seed);
  for (int d = 0; d <= top; ++d) {
    int e = top - d;
    QMatrix zrows = center_subspace(ga, d);
    RrefBasis comm = commutator_subspace(ga, e);
    std::vector<int> qc;
    for (int c = 0; c < ga.dim(e); ++c)
      if (!comm.pivots().count(c)) qc.push_back(c);
    require(zrows.rows() == int(qc.size()), errc::degenerate_pairing,
            "center and commutator quotient dimensions differ between degrees " +
                std::to_string(d) + " and " + std::to_string(e));
    int n = zrows.rows();
    if (n == 0) continue;

    std::vector<Element> zs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) zs[size_t(i)] = ga.from_coords(qmatrix_row(zrows, i), d);
    QMatrix gram(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        gram.at(i, j) = tr(ga.product(zs[size_t(i)], ga.from_coords(sv_unit(qc[size_t(j)]), e)));
    require(try_inverse(gram).has_value(), errc::degenerate_pairing,
            "singular Gram matrix in degree " + std::to_string(d));

    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_int_distribution<int> split(0, e);
    for (int s = 0; s < 2; ++s) {
      const Element& x = zs[size_t(pick(rng))];
      int d1 = split(rng);
      Element y = el_commutator(p, random_element(ga, d1, rng), random_element(ga, e - d1, rng));
      require(tr(ga.product(x, y)) == 0, errc::degenerate_pairing,
              "pairing fails to vanish on a commutator in degree " + std::to_string(e));
    }
  }
}

QMatrix e_membership_bruteforce(const GradedAlgebra& ga, const std::vector<int>& eps, int s) {
  const auto& p = ga.pres();
  require(int(eps.size()) == p.vertices, errc::bad_argument, "one sign per vertex required");
  require(s == 0 || p.has_z, errc::bad_argument, "z powers need the central z");
  require(s >= 0 && 2 * s <= ga.max_degree(), errc::degree_overflow,
          "degree 2s outside the built range");
  RrefBasis comm = commutator_subspace(ga, 2 * s);
  QMatrix m(ga.dim(2 * s), p.vertices);
  for (int i = 0; i < p.vertices; ++i) {
    Element x = el_term(Rat(eps[size_t(i)]), Monomial{s, {}, i});
    for (const auto& [idx, val] : comm.reduce(ga.coords(x, 2 * s))) m.at(idx, i) = val;
  }
  return kernel_basis(m);
}

ComplexSlice complex_slice(const GradedAlgebra& ga, int degree) {
  const auto& p = ga.pres();
  require_arrow_pairs(p);
  require(degree >= 0 && degree <= ga.max_degree(), errc::degree_overflow,
          "degree outside the built range");

  ComplexSlice s;
  s.degree = degree;
  DiagLayout dom = diag_layout(ga, degree - 2);
  SlotLayout mid = slot_layout(ga, degree - 1);
  DiagLayout cod = diag_layout(ga, degree);
  s.dim_d0 = dom.dim;
  s.dim_d1 = mid.dim;
  s.dim_d2 = cod.dim;

  QMatrix d0 = d0_matrix(ga, degree, dom, mid);
  QMatrix d1 = d1_matrix(ga, degree, mid, cod);
  require((d1 * d0).is_zero(), errc::complex_not_chain,
          "d1 d0 is nonzero in degree " + std::to_string(degree));
  s.rank_d0 = rank(d0);
  s.rank_d1 = rank(d1);
  s.h0 = s.dim_d0 - s.rank_d0;
  s.h1 = (s.dim_d1 - s.rank_d1) - s.rank_d0;
  s.h2 = s.dim_d2 - s.rank_d1;
  s.euler = s.dim_d0 - s.dim_d1 + s.dim_d2;
  return s;
}

Element inner_derivation_witness(const GradedAlgebra& ga, const std::vector<Element>& images,
                                 int shift) {
  const auto& p = ga.pres();
  require_arrow_pairs(p);
  require(images.size() == p.gens.size(), errc::bad_argument, "one image per arrow required");
  require(shift >= 0 && shift + 2 <= ga.max_degree(), errc::degree_overflow,
          "witness degree outside the built range");
  for (size_t g = 0; g < images.size(); ++g) {
    if (images[g].empty()) continue;
    auto [dg, tl, hd] = p.element_type(images[g]);
    require(dg == 1 + shift && tl == p.gens[g].tail && hd == p.gens[g].head, errc::bad_argument,
            "image of " + p.gens[g].name + " has the wrong degree or block");
  }

  auto d_word = [&](const Monomial& m) -> Element {
    Element out;
    for (size_t pos = 0; pos < m.word.size(); ++pos) {
      Element piece = images[size_t(m.word[pos])];
      if (piece.empty()) continue;
      if (pos > 0)
        piece = el_mul(p, mono_el(Monomial{0, {m.word.begin(), m.word.begin() + long(pos)}, -1}),
                       piece);
      if (pos + 1 < m.word.size())
        piece = el_mul(p, piece,
                       mono_el(Monomial{0, {m.word.begin() + long(pos) + 1, m.word.end()}, -1}));
      if (m.zpow) piece = el_mul(p, el_unit(p, m.zpow), piece);
      el_add_scaled(out, Rat(1), piece);
    }
    return out;
  };
  auto d_el = [&](const Element& x) -> Element {
    Element out;
    for (const auto& tm : x) el_add_scaled(out, tm.coeff, d_word(tm.mono));
    return out;
  };
  for (const auto& rel : p.relations)
    require(ga.is_zero(d_el(rel)), errc::not_a_derivation,
            "a relation does not map into the ideal");

  int d = shift + 2;
  DiagLayout dom = diag_layout(ga, d - 2);
  SlotLayout mid = slot_layout(ga, d - 1);
  QMatrix d0 = d0_matrix(ga, d, dom, mid);
  std::vector<Rat> b(size_t(mid.dim));
  for (size_t g = 0; g < p.gens.size(); ++g) {
    Element img = images[g ^ 1];
    if (g % 2 == 0) img = el_scale(img, Rat(-1));
    img = ga.reduce(img);
    if (img.empty()) continue;
    const auto& slot = ga.block(d - 1, p.gens[g].head, p.gens[g].tail);
    for (const auto& [idx, val] : block_coords(slot, img)) b[size_t(mid.off[g] + idx)] = val;
  }
  auto sol = solve_linear(d0, b);
  require(sol.has_value(), errc::no_solution, "no inner witness in degree " + std::to_string(shift));

  Element y;
  for (int i = 0; i < p.vertices; ++i) {
    const auto& blk = ga.block(d - 2, i, i);
    for (size_t lx = 0; lx < blk.basis.size(); ++lx)
      el_add_scaled(y, (*sol)[size_t(dom.off[i]) + lx], mono_el(blk.monos[blk.basis[lx]]));
  }
  for (size_t g = 0; g < p.gens.size(); ++g) {
    Element c = el_commutator(p, y, gen_el(int(g)));
    el_add_scaled(c, Rat(-1), images[g]);
    require(ga.is_zero(c), errc::internal, "witness fails to reproduce an image");
  }
  return y;
}

}  // namespace ceppa
