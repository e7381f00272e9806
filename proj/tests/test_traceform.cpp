#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gradealg.hpp"
#include "lietheory.hpp"
#include "rootsys.hpp"
#include "traceform.hpp"

using namespace ceppa;

namespace {

std::vector<Rat> random_mu(const RootSystem& rs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 100);
  std::vector<Rat> mu;
  do {
    mu.clear();
    for (int i = 0; i < rs.rank; ++i) mu.emplace_back(num(rng));
  } while (!is_regular(rs, mu));
  return mu;
}

GradedAlgebra build_a(const RootSystem& rs, const std::vector<Rat>& mu) {
  return GradedAlgebra(preprojective_presentation(rs, mu), 2 * rs.coxeter - 2);
}

QMatrix embed_simple(const RootSystem& rs) {
  const auto& h1 = rs.by_height[1];
  QMatrix e(int(h1.size()), rs.rank);
  for (int k = 0; k < int(h1.size()); ++k)
    for (int i = 0; i < rs.rank; ++i)
      if (h1[size_t(k)] == rs.simple_root_id(i)) e.at(k, i) = 1;
  return e;
}

bool proportional(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("commutator slices of the A2 quotient") {
  auto rs = build_root_system(FamilyType::A, 2);
  auto ga = build_a(rs, rho_weight(2));

  CHECK(commutator_subspace(ga, 0).dim() == 0);
  CHECK(commutator_subspace(ga, 1).dim() == 2);
  auto k2 = commutator_subspace(ga, 2);
  CHECK(k2.dim() == 1);
  Element zsum = el_unit(ga.pres(), 1);
  CHECK(k2.contains(ga.coords(zsum, 2)));

  CHECK(commutator_quotient_dims(ga, 4) == std::vector<int>{2, 0, 1, 0, 0});
}

TEST_CASE("center slices") {
  auto rs = build_root_system(FamilyType::A, 2);
  auto ga = build_a(rs, rho_weight(2));

  QMatrix c0 = center_subspace(ga, 0);
  QMatrix unit(1, 2);
  unit.at(0, 0) = 1;
  unit.at(0, 1) = 1;
  CHECK(c0 == unit);
  CHECK(center_subspace(ga, 1).rows() == 0);
  CHECK(center_subspace(ga, 2) == QMatrix::identity(2));

  auto rs4 = build_root_system(FamilyType::D, 4);
  auto ga4 = build_a(rs4, rho_weight(4));
  QMatrix c40 = center_subspace(ga4, 0);
  REQUIRE(c40.rows() == 1);
  for (int j = 0; j < 4; ++j) CHECK(c40.at(0, j) == 1);
}

TEST_CASE("trace functionals are the frozen ones") {
  auto rs2 = build_root_system(FamilyType::A, 2);
  auto t2 = trace_functional(build_a(rs2, rho_weight(2)));
  CHECK(t2 == std::vector<Rat>{Rat(1), Rat(-1)});

  auto rs3 = build_root_system(FamilyType::A, 3);
  auto t3 = trace_functional(build_a(rs3, rho_weight(3)));
  CHECK(t3 == std::vector<Rat>{Rat(1), Rat(-2), Rat(1)});

  std::vector<Rat> mu{Rat(3), Rat(1, 2)};
  auto tg = trace_functional(build_a(rs2, mu));
  CHECK(tg == std::vector<Rat>{Rat(1), Rat(-6)});
  CHECK(mu[0] * tg[0] + mu[1] * tg[1] == 0);
}

TEST_CASE("trace values follow the weighted path sums") {
  struct Case {
    FamilyType f;
    int rank;
    std::uint64_t seed;  // 0 = rho
  };
  for (auto [f, rank, seed] : {Case{FamilyType::A, 2, 0}, Case{FamilyType::A, 3, 23},
                               Case{FamilyType::D, 4, 0}, Case{FamilyType::D, 4, 57}}) {
    CAPTURE(family_name(f));
    CAPTURE(rank);
    CAPTURE(seed);
    auto rs = build_root_system(f, rank);
    auto mu = seed ? random_mu(rs, seed) : rho_weight(rank);
    auto ga = build_a(rs, mu);
    auto t = trace_functional(ga);
    auto pw = path_weights(rs, mu);
    std::vector<Rat> w(static_cast<size_t>(rank));
    for (int i = 0; i < rank; ++i) w[size_t(i)] = rs.eps[size_t(i)] * pw[size_t(rs.simple_root_id(i))];
    CHECK(proportional(t, w));
    bool some = false;
    for (const auto& c : w) some = some || c != 0;
    CHECK(some);
    Rat dot = 0;
    for (int i = 0; i < rank; ++i) dot += mu[size_t(i)] * t[size_t(i)];
    CHECK(dot == 0);
  }
}

TEST_CASE("graded trace data of A2") {
  auto rs = build_root_system(FamilyType::A, 2);
  auto data = graded_trace_data(build_a(rs, rho_weight(2)));
  CHECK(data.top_degree == 2);
  CHECK(data.quotient_dims == std::vector<int>{2, 0, 1});
  CHECK(data.center_dims == std::vector<int>{1, 0, 2});
  CHECK(data.z_blocks_quotient == std::vector<int>{1, 2});
  CHECK(data.z_blocks_center == std::vector<int>{1, 2});
}

TEST_CASE("graded trace data of D4") {
  auto rs = build_root_system(FamilyType::D, 4);
  auto data = graded_trace_data(build_a(rs, rho_weight(4)));
  CHECK(data.top_degree == 8);
  CHECK(data.quotient_dims == std::vector<int>{4, 0, 3, 0, 3, 0, 1, 0, 1});
  CHECK(data.center_dims == std::vector<int>{1, 0, 1, 0, 3, 0, 3, 0, 4});
  CHECK(data.z_blocks_quotient == std::vector<int>{1, 3, 3, 5});
  CHECK(data.z_blocks_center == std::vector<int>{1, 3, 3, 5});
  CHECK(data.z_blocks_center == rs.exponents);

  int top = data.top_degree;
  for (int d = 0; d <= top; ++d) {
    CAPTURE(d);
    CHECK(data.center_dims[size_t(d)] == data.quotient_dims[size_t(top - d)]);
    int lhs = data.quotient_dims[size_t(d)] + (d >= 2 ? data.center_dims[size_t(d - 2)] : 0);
    CHECK(lhs == (d % 2 ? 0 : rs.rank));
  }
}

TEST_CASE("graded trace data of A3 at a random weight") {
  auto rs = build_root_system(FamilyType::A, 3);
  auto data = graded_trace_data(build_a(rs, random_mu(rs, 101)));
  CHECK(data.z_blocks_quotient == rs.exponents);
  CHECK(data.z_blocks_center == rs.exponents);
  int top = data.top_degree;
  for (int d = 0; d <= top; ++d)
    CHECK(data.center_dims[size_t(d)] == data.quotient_dims[size_t(top - d)]);
}

TEST_CASE("pairing is nondegenerate") {
  auto rs2 = build_root_system(FamilyType::A, 2);
  CHECK_NOTHROW(pairing_check(build_a(rs2, rho_weight(2))));
  CHECK_NOTHROW(pairing_check(build_a(rs2, {Rat(3), Rat(1, 2)})));
  auto rs3 = build_root_system(FamilyType::A, 3);
  CHECK_NOTHROW(pairing_check(build_a(rs3, rho_weight(3))));
  auto rs4 = build_root_system(FamilyType::D, 4);
  CHECK_NOTHROW(pairing_check(build_a(rs4, rho_weight(4))));
}

TEST_CASE("membership brute force agrees with the transfer chain") {
  for (int rank : {2, 3}) {
    auto rs = build_root_system(FamilyType::A, rank);
    auto mu = rho_weight(rank);
    auto ga = build_a(rs, mu);
    auto ts = t_matrices(rs, mu);
    QMatrix m = embed_simple(rs);
    for (int s = 0; s <= rs.coxeter - 2; ++s) {
      CAPTURE(rank);
      CAPTURE(s);
      if (s > 0) m = ts[size_t(s - 1)] * m;
      QMatrix brute = e_membership_bruteforce(ga, rs.eps, s);
      CHECK(brute == kernel_basis(m));
    }
  }

  auto rs = build_root_system(FamilyType::A, 3);
  auto ga = build_a(rs, rho_weight(3));
  QMatrix b1 = e_membership_bruteforce(ga, rs.eps, 1);
  REQUIRE(b1.rows() == 1);
  CHECK(proportional({b1.at(0, 0), b1.at(0, 1), b1.at(0, 2)}, {Rat(1), Rat(-1), Rat(1)}));
  CHECK(e_membership_bruteforce(ga, rs.eps, 0).rows() == 0);

  auto qd = commutator_quotient_dims(ga, 4);
  CHECK(rs.rank - b1.rows() == qd[2]);
}

TEST_CASE("complex slices have vanishing middle homology") {
  for (int rank : {2, 3}) {
    auto rs = build_root_system(FamilyType::A, rank);
    auto ga = build_a(rs, rho_weight(rank));
    auto data = graded_trace_data(ga);
    for (int d = 0; d <= ga.max_degree(); ++d) {
      CAPTURE(rank);
      CAPTURE(d);
      auto s = complex_slice(ga, d);
      CHECK(s.h1 == 0);
      int h0 = (d >= 2 && d - 2 <= data.top_degree) ? data.center_dims[size_t(d - 2)] : 0;
      CHECK(s.h0 == h0);
      int h2 = d <= data.top_degree ? data.quotient_dims[size_t(d)] : 0;
      CHECK(s.h2 == h2);
      CHECK(s.euler == (d % 2 ? 0 : rs.rank));
    }
  }
}

TEST_CASE("inner derivation witnesses") {
  auto rs = build_root_system(FamilyType::A, 2);
  auto ga = build_a(rs, rho_weight(2));
  const auto& p = ga.pres();
  Element a = el_term(Rat(1), Monomial{0, {0}, -1});
  Element astar = el_term(Rat(1), Monomial{0, {1}, -1});
  Element za = el_term(Rat(1), Monomial{1, {0}, -1});
  Element zastar = el_term(Rat(1), Monomial{1, {1}, -1});

  Element y = inner_derivation_witness(ga, {el_scale(za, Rat(-1)), zastar}, 2);
  Element c = el_commutator(p, y, a);
  el_add_scaled(c, Rat(1), za);
  CHECK(ga.is_zero(c));
  c = el_commutator(p, y, astar);
  el_add_scaled(c, Rat(-1), zastar);
  CHECK(ga.is_zero(c));

  Element y0 = inner_derivation_witness(ga, {Element{}, Element{}}, 2);
  CHECK(ga.is_zero(el_commutator(p, y0, a)));

  CHECK_THROWS_WITH_AS(inner_derivation_witness(ga, {a, Element{}}, 0),
                       doctest::Contains("NotADerivation"), Error);
  CHECK_THROWS_WITH_AS(inner_derivation_witness(ga, {a, Element{}}, 2),
                       doctest::Contains("BadArgument"), Error);
}

TEST_CASE("single-vertex commutator quotients match the leg counts") {
  std::vector<int> legs{1, 1, 1};
  std::vector<int> expected{1, 0, 3, 0, 3, 0, 1, 0, 1};
  for (bool elim : {false, true}) {
    CAPTURE(elim);
    GradedAlgebra gb(b_presentation(legs, elim), 8);
    CHECK(commutator_quotient_dims(gb, 8) == expected);
  }
  auto rs = build_root_system(FamilyType::D, 4);
  auto counts = nodal_height_counts(rs);
  for (int pp = 0; pp <= 4; ++pp) CHECK(expected[size_t(2 * pp)] == counts[size_t(pp)]);
}

TEST_CASE("degree and argument guards") {
  auto rs = build_root_system(FamilyType::A, 2);
  auto ga = build_a(rs, rho_weight(2));
  CHECK_THROWS_WITH_AS(commutator_subspace(ga, 5), doctest::Contains("DegreeOverflow"), Error);
  CHECK_THROWS_WITH_AS(e_membership_bruteforce(ga, {1, -1, 1}, 1),
                       doctest::Contains("BadArgument"), Error);

  GradedAlgebra g0(preprojective_presentation(rs, {}, false), rs.coxeter);
  CHECK_THROWS_WITH_AS(trace_functional(g0), doctest::Contains("MissingTopDegree"), Error);
  CHECK_THROWS_WITH_AS(graded_trace_data(g0), doctest::Contains("BadArgument"), Error);
}
