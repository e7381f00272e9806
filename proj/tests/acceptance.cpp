#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exactlin.hpp"
#include "gradealg.hpp"
#include "lietheory.hpp"
#include "rootsys.hpp"
#include "traceform.hpp"
#include "verify.hpp"

using namespace ceppa;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string diagram_key(FamilyType f, int rank) {
  return family_name(f) + std::to_string(rank);
}

// Algebras at 2h-2, their graded trace data, and weights are shared across
// criteria; each is built once, inside the first criterion that needs it.
struct Registry {
  std::map<std::string, RootSystem> roots;
  std::map<std::string, std::vector<Rat>> mus;
  std::map<std::string, std::unique_ptr<GradedAlgebra>> algebras;
  std::map<std::string, GradedTraceData> gtd;

  const RootSystem& rs(FamilyType f, int rank) {
    std::string key = diagram_key(f, rank);
    auto it = roots.find(key);
    if (it == roots.end()) it = roots.emplace(key, build_root_system(f, rank)).first;
    return it->second;
  }

  const std::vector<Rat>& mu(FamilyType f, int rank, const std::string& kind) {
    std::string key = diagram_key(f, rank) + ":" + kind;
    auto it = mus.find(key);
    if (it == mus.end()) {
      std::uint64_t seed = 0x5eed + 8 * std::uint64_t(rank) + std::uint64_t(f);
      it = mus.emplace(key, resolve_mu(rs(f, rank), kind, {}, seed).first).first;
    }
    return it->second;
  }

  const GradedAlgebra& algebra(FamilyType f, int rank, const std::string& kind) {
    std::string key = diagram_key(f, rank) + ":" + kind;
    auto it = algebras.find(key);
    if (it == algebras.end()) {
      const RootSystem& r = rs(f, rank);
      auto ga = std::make_unique<GradedAlgebra>(
          preprojective_presentation(r, mu(f, rank, kind)), 2 * r.coxeter - 2);
      it = algebras.emplace(key, std::move(ga)).first;
    }
    return *it->second;
  }

  const GradedTraceData& trace_data(FamilyType f, int rank, const std::string& kind) {
    std::string key = diagram_key(f, rank) + ":" + kind;
    auto it = gtd.find(key);
    if (it == gtd.end())
      it = gtd.emplace(key, graded_trace_data(algebra(f, rank, kind))).first;
    return it->second;
  }
};

Registry& reg() {
  static Registry r;
  return r;
}

const std::vector<std::pair<FamilyType, int>> kMuRoster = {
    {FamilyType::A, 2}, {FamilyType::A, 3}, {FamilyType::A, 4},
    {FamilyType::A, 5}, {FamilyType::D, 4}, {FamilyType::D, 5}};
const char* kKinds[2] = {"rho", "random"};

const std::vector<std::pair<FamilyType, int>> kAllTypes = {
    {FamilyType::A, 1}, {FamilyType::A, 2}, {FamilyType::A, 3}, {FamilyType::A, 4},
    {FamilyType::A, 5}, {FamilyType::A, 6}, {FamilyType::A, 7}, {FamilyType::A, 8},
    {FamilyType::D, 4}, {FamilyType::D, 5}, {FamilyType::D, 6}, {FamilyType::D, 7},
    {FamilyType::D, 8}, {FamilyType::E, 6}, {FamilyType::E, 7}, {FamilyType::E, 8}};

struct Criterion {
  int id;
  std::string name;
  std::vector<std::string> problems;
  std::vector<std::string> notes;
  Clock::time_point t0 = Clock::now();

  Criterion(int id_, std::string name_) : id(id_), name(std::move(name_)) {}

  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }

  void run(const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      problems.push_back(std::string("unexpected error: ") + e.what());
    } catch (const std::exception& e) {
      problems.push_back(std::string("unexpected exception: ") + e.what());
    }
  }

  void finish(double limit_s = 0.0) {
    double el = elapsed_s(t0);
    if (limit_s > 0 && el > limit_s) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "runtime %.1fs exceeds the %.0fs budget", el, limit_s);
      problems.push_back(buf);
    }
    std::printf("[acceptance] criterion %2d: %s  %s (%.1fs)\n", id,
                problems.empty() ? "PASS" : "FAIL", name.c_str(), el);
    for (const auto& n : notes) std::printf("  - %s\n", n.c_str());
    for (const auto& p : problems) std::printf("  - %s\n", p.c_str());
    std::fflush(stdout);
    CHECK_MESSAGE(problems.empty(), "criterion ", id, ": ", name);
  }
};

std::string vec_str(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

QMatrix embed_simple(const RootSystem& rs) {
  QMatrix m(rs.rank, rs.rank);
  const auto& simples = rs.by_height[1];
  for (int i = 0; i < rs.rank; ++i) {
    int rid = rs.simple_root_id(i);
    int pos = -1;
    for (size_t p = 0; p < simples.size(); ++p)
      if (simples[p] == rid) pos = int(p);
    m.at(pos, i) = 1;
  }
  return m;
}

QMatrix embed_full(const RootSystem& rs) {
  QMatrix m(rs.num_roots, rs.rank);
  for (int i = 0; i < rs.rank; ++i) m.at(rs.simple_root_id(i), i) = 1;
  return m;
}

int at_or_zero(const std::vector<int>& v, int d) {
  return d >= 0 && d < int(v.size()) ? v[size_t(d)] : 0;
}

}  // namespace

TEST_CASE("criterion 1") {
  Criterion c(1, "type A commutator-quotient and center dimensions");
  c.run([&] {
    for (int n = 2; n <= 5; ++n) {
      for (const char* kind : kKinds) {
        const RootSystem& rs = reg().rs(FamilyType::A, n);
        const GradedTraceData& gt = reg().trace_data(FamilyType::A, n, kind);
        std::string tag = "A" + std::to_string(n) + ":" + kind;
        int qsum = 0, csum = 0;
        for (int d = 0; d < int(gt.quotient_dims.size()); ++d) {
          int expected = d % 2 == 0 ? std::max(n - d / 2, 0) : 0;
          c.expect(gt.quotient_dims[size_t(d)] == expected,
                   tag + ": quotient dim " + std::to_string(gt.quotient_dims[size_t(d)]) +
                       " at degree " + std::to_string(d) + ", expected " +
                       std::to_string(expected));
          qsum += gt.quotient_dims[size_t(d)];
          csum += gt.center_dims[size_t(d)];
        }
        int N = n * (n + 1) / 2;
        c.expect(N == rs.num_roots, tag + ": root count mismatch");
        c.expect(qsum == N, tag + ": total quotient dim " + std::to_string(qsum) +
                                " != " + std::to_string(N));
        c.expect(csum == N, tag + ": total center dim " + std::to_string(csum) +
                                " != " + std::to_string(N));
      }
    }
  });
  c.finish(300.0);
}

TEST_CASE("criterion 2") {
  Criterion c(2, "type D central Jordan blocks match exponents");
  c.run([&] {
    const std::map<int, std::vector<int>> expected = {{4, {1, 3, 3, 5}},
                                                      {5, {1, 3, 4, 5, 7}}};
    for (int n : {4, 5}) {
      for (const char* kind : kKinds) {
        const RootSystem& rs = reg().rs(FamilyType::D, n);
        const GradedTraceData& gt = reg().trace_data(FamilyType::D, n, kind);
        std::string tag = "D" + std::to_string(n) + ":" + kind;
        c.expect(gt.z_blocks_quotient == expected.at(n),
                 tag + ": quotient blocks " + vec_str(gt.z_blocks_quotient));
        c.expect(gt.z_blocks_center == expected.at(n),
                 tag + ": center blocks " + vec_str(gt.z_blocks_center));
        c.expect(rs.exponents == expected.at(n),
                 tag + ": exponents " + vec_str(rs.exponents));
        int top = gt.top_degree;
        for (int d = 0; d <= top; ++d) {
          c.expect(gt.quotient_dims[size_t(d)] == gt.center_dims[size_t(top - d)],
                   tag + ": palindrome broken at degree " + std::to_string(d));
          if (d % 2 == 1) {
            c.expect(gt.quotient_dims[size_t(d)] == 0,
                     tag + ": odd quotient dim at degree " + std::to_string(d));
            c.expect(gt.center_dims[size_t(d)] == 0,
                     tag + ": odd center dim at degree " + std::to_string(d));
          }
        }
      }
    }
  });
  c.finish(600.0);
}

TEST_CASE("criterion 3") {
  Criterion c(3, "graded dimensions match the Hilbert-series prediction");
  c.run([&] {
    for (auto [f, rank] : kMuRoster) {
      const RootSystem& rs = reg().rs(f, rank);
      PolyMatrix pred = hilbert_matrix_predicted(rs);
      for (const char* kind : kKinds) {
        const GradedAlgebra& ga = reg().algebra(f, rank, kind);
        std::string tag = diagram_key(f, rank) + ":" + kind;
        for (int d = 0; d <= ga.max_degree(); ++d)
          for (int i = 0; i < rs.rank; ++i)
            for (int j = 0; j < rs.rank; ++j)
              c.expect(pred.at(d).at(i, j) == Rat(ga.block_dim(d, i, j)),
                       tag + ": block (" + std::to_string(i) + "," + std::to_string(j) +
                           ") at degree " + std::to_string(d));
        int h = rs.coxeter;
        c.expect(ga.dim(2 * h - 3) == 0, tag + ": nonzero dim at degree 2h-3");
        c.expect(ga.dim(2 * h - 2) == 0, tag + ": nonzero dim at degree 2h-2");
      }
    }
  });
  c.finish();
}

TEST_CASE("criterion 4") {
  Criterion c(4, "trace uniqueness and pairing nondegeneracy");
  c.run([&] {
    for (auto [f, rank] : kMuRoster) {
      for (const char* kind : kKinds) {
        const GradedAlgebra& ga = reg().algebra(f, rank, kind);
        std::string tag = diagram_key(f, rank) + ":" + kind;
        try {
          trace_functional(ga);
        } catch (const Error& e) {
          c.expect(false, tag + ": trace: " + e.what());
        }
        try {
          pairing_check(ga);
        } catch (const Error& e) {
          c.expect(false, tag + ": pairing: " + e.what());
        }
      }
    }
  });
  c.finish();
}

TEST_CASE("criterion 5") {
  Criterion c(5, "three membership oracles coincide");
  c.run([&] {
    const std::vector<std::pair<FamilyType, int>> roster = {
        {FamilyType::A, 2}, {FamilyType::A, 3}, {FamilyType::A, 4}, {FamilyType::D, 4}};
    for (auto [f, rank] : roster) {
      const RootSystem& rs = reg().rs(f, rank);
      NilpotentLie lie = build_nilpotent(rs);
      std::vector<int> scale = lusztig_rescale(lie);
      QMatrix simple = embed_simple(rs);
      QMatrix full = embed_full(rs);
      for (const char* kind : kKinds) {
        const GradedAlgebra& ga = reg().algebra(f, rank, kind);
        const std::vector<Rat>& mu = reg().mu(f, rank, kind);
        std::vector<QMatrix> ts = t_matrices(rs, mu);
        QMatrix lop = l_operator(lie, mu, {}, scale);
        std::string tag = diagram_key(f, rank) + ":" + kind;
        QMatrix chain = simple;
        QMatrix lpow = full;
        for (int s = 0; s <= rs.coxeter - 2; ++s) {
          if (s > 0) {
            chain = ts[size_t(s - 1)] * chain;
            lpow = lop * lpow;
          }
          QMatrix brute = e_membership_bruteforce(ga, rs.eps, s);
          QMatrix from_chain = kernel_basis(chain);
          QMatrix from_op = kernel_basis(lpow);
          c.expect(brute == from_chain,
                   tag + ": brute force vs transfer chain at s = " + std::to_string(s));
          c.expect(from_chain == from_op,
                   tag + ": transfer chain vs operator kernel at s = " + std::to_string(s));
        }
      }
    }
  });
  c.finish();
}

TEST_CASE("criterion 6") {
  Criterion c(6, "single-vertex leg algebra commutator dimensions");
  c.run([&] {
    const std::vector<std::pair<FamilyType, int>> roster = {
        {FamilyType::D, 4}, {FamilyType::D, 5}, {FamilyType::D, 6}, {FamilyType::E, 6}};
    for (auto [f, rank] : roster) {
      const RootSystem& rs = reg().rs(f, rank);
      std::string tag = "B(" + diagram_key(f, rank) + ")";
      std::vector<int> npr = nodal_height_counts(rs);
      int top = 2 * (rs.coxeter - 2);
      GradedAlgebra b(b_presentation(rs.legs, false), top);
      std::vector<int> q = commutator_quotient_dims(b, top);
      for (int d = 0; d <= top; ++d) {
        int expected = d % 2 == 0 ? npr[size_t(d / 2)] : 0;
        c.expect(q[size_t(d)] == expected,
                 tag + ": quotient dim " + std::to_string(q[size_t(d)]) + " at degree " +
                     std::to_string(d) + ", expected " + std::to_string(expected));
      }
    }

    if (std::getenv("CEPPA_RUN_E7")) {
      Clock::time_point t7 = Clock::now();
      const RootSystem& rs = reg().rs(FamilyType::E, 7);
      std::vector<int> npr = nodal_height_counts(rs);
      int top = 2 * (rs.coxeter - 2);
      GradedAlgebra b(b_presentation(rs.legs, true), top);
      std::vector<int> q = commutator_quotient_dims(b, top);
      bool ok = true;
      for (int d = 0; d <= top; ++d)
        if (q[size_t(d)] != (d % 2 == 0 ? npr[size_t(d / 2)] : 0)) ok = false;
      char buf[128];
      std::snprintf(buf, sizeof buf, "E7 branch (non-gating): %s (%.1fs)",
                    ok ? "agrees" : "DISAGREES", elapsed_s(t7));
      c.notes.push_back(buf);
      if (!ok)
        c.notes.push_back("E7 dims " + vec_str(q) + " vs nodal counts " + vec_str(npr));
    } else {
      c.notes.push_back("E7 branch skipped (set CEPPA_RUN_E7=1 to run it)");
    }

    try {
      const RootSystem& rs = reg().rs(FamilyType::E, 8);
      GradedAlgebra b(b_presentation(rs.legs, true), 2 * (rs.coxeter - 2));
      c.expect(false, "B(E8) unexpectedly fit the default monomial budget");
    } catch (const Error& e) {
      c.expect(e.code() == errc::budget_exceeded,
               std::string("B(E8): expected the budget guard, got ") + e.what());
    }
  });
  c.finish();
}

TEST_CASE("criterion 7") {
  Criterion c(7, "transfer-matrix rank chain equals height counts");
  c.run([&] {
    for (auto [f, rank] : kAllTypes) {
      const RootSystem& rs = reg().rs(f, rank);
      std::vector<int> hc = height_counts(rs);
      for (const char* kind : kKinds) {
        const std::vector<Rat>& mu = reg().mu(f, rank, kind);
        std::vector<int> chain = t_rank_chain(rs, mu);
        c.expect(chain == hc, diagram_key(f, rank) + ":" + kind + ": rank chain " +
                                  vec_str(chain) + " vs height counts " + vec_str(hc));
      }
    }
  });
  c.finish(60.0);
}

TEST_CASE("criterion 8") {
  Criterion c(8, "three-term complexes and the dimension identity");
  c.run([&] {
    const std::vector<std::pair<FamilyType, int>> roster = {
        {FamilyType::A, 2}, {FamilyType::A, 3}, {FamilyType::D, 4}};
    for (auto [f, rank] : roster) {
      for (const char* kind : kKinds) {
        const GradedAlgebra& ga = reg().algebra(f, rank, kind);
        std::string tag = diagram_key(f, rank) + ":" + kind;
        for (int d = 0; d <= ga.max_degree(); ++d) {
          try {
            ComplexSlice cs = complex_slice(ga, d);
            c.expect(cs.h1 == 0, tag + ": H1 = " + std::to_string(cs.h1) +
                                     " at degree " + std::to_string(d));
          } catch (const Error& e) {
            c.expect(false, tag + ": degree " + std::to_string(d) + ": " + e.what());
          }
        }
      }
    }

    for (auto [f, rank] : kMuRoster) {
      const RootSystem& rs = reg().rs(f, rank);
      for (const char* kind : kKinds) {
        const GradedTraceData& gt = reg().trace_data(f, rank, kind);
        std::string tag = diagram_key(f, rank) + ":" + kind;
        for (int d = 0; d <= 2 * rs.coxeter - 2; ++d) {
          int lhs = at_or_zero(gt.quotient_dims, d) + at_or_zero(gt.center_dims, d - 2);
          int rhs = d % 2 == 0 ? rs.rank : 0;
          c.expect(lhs == rhs, tag + ": p(t) + t^2 p*(t) misses " + std::to_string(rhs) +
                                   " at degree " + std::to_string(d));
        }
      }
    }
  });
  c.finish();
}

TEST_CASE("criterion 9") {
  Criterion c(9, "scalar and operator polynomial criteria agree");
  c.run([&] {
    const std::vector<std::pair<FamilyType, int>> roster = {
        {FamilyType::A, 2}, {FamilyType::A, 3}, {FamilyType::A, 4}, {FamilyType::D, 4}};
    for (auto [f, rank] : roster) {
      const RootSystem& rs = reg().rs(f, rank);
      NilpotentLie lie = build_nilpotent(rs);
      int h = rs.coxeter;
      for (const char* kind : kKinds) {
        const std::vector<Rat>& mu = reg().mu(f, rank, kind);
        std::string tag = diagram_key(f, rank) + ":" + kind;
        std::mt19937_64 rng(0xbadd1ce0 + 8 * std::uint64_t(rank) + std::uint64_t(f));
        std::uniform_int_distribution<int> dist(-9, 9);
        int found = 0, attempts = 0;
        while (found < 5 && attempts < 200) {
          ++attempts;
          std::vector<Rat> lambda(size_t(rs.rank));
          for (auto& x : lambda) x = dist(rng);
          QMatrix ws(0, 0);
          try {
            ws = w_lambda_scalar(rs, mu, lambda);
          } catch (const Error& e) {
            if (e.code() == errc::non_generic_lambda) continue;
            throw;
          }
          ++found;
          QMatrix wo = w_lambda_operator(lie, mu, lambda);
          c.expect(ws == wo, tag + ": subspaces differ at sample " + std::to_string(found));
          int expected = (h - 1) * rs.rank - rs.num_roots;
          c.expect(ws.rows() == expected,
                   tag + ": dimension " + std::to_string(ws.rows()) + ", expected " +
                       std::to_string(expected));
        }
        c.expect(found == 5, tag + ": only " + std::to_string(found) +
                                 " generic draws in " + std::to_string(attempts) +
                                 " attempts");
      }
    }
  });
  c.finish();
}

TEST_CASE("criterion 10") {
  Criterion c(10, "trace matches signed path sums");
  c.run([&] {
    const std::vector<std::pair<FamilyType, int>> roster = {
        {FamilyType::A, 2}, {FamilyType::A, 3}, {FamilyType::A, 4}, {FamilyType::D, 4}};
    for (auto [f, rank] : roster) {
      const RootSystem& rs = reg().rs(f, rank);
      for (const char* kind : kKinds) {
        const GradedAlgebra& ga = reg().algebra(f, rank, kind);
        const std::vector<Rat>& mu = reg().mu(f, rank, kind);
        std::string tag = diagram_key(f, rank) + ":" + kind;
        std::vector<Rat> t = trace_functional(ga);
        std::vector<Rat> pw = path_weights(rs, mu);
        std::vector<Rat> side(size_t(rs.rank));
        for (int i = 0; i < rs.rank; ++i)
          side[size_t(i)] = Rat(rs.eps[size_t(i)]) * pw[size_t(rs.simple_root_id(i))];
        int i0 = -1;
        for (int i = 0; i < rs.rank && i0 < 0; ++i)
          if (side[size_t(i)] != 0) i0 = i;
        c.expect(i0 >= 0, tag + ": path sums all vanish");
        if (i0 >= 0) {
          Rat factor = t[size_t(i0)] / side[size_t(i0)];
          for (int i = 0; i < rs.rank; ++i)
            c.expect(t[size_t(i)] == factor * side[size_t(i)],
                     tag + ": entry " + std::to_string(i + 1) + ": " +
                         rat_str(t[size_t(i)]) + " vs " +
                         rat_str(factor * side[size_t(i)]));
        }
        Rat dot = 0;
        for (int i = 0; i < rs.rank; ++i) dot += mu[size_t(i)] * t[size_t(i)];
        c.expect(dot == 0, tag + ": Tr(z^(h-2) sum mu_i e_i) = " + rat_str(dot));
      }
    }
  });
  c.finish();
}

TEST_CASE("criterion 11") {
  Criterion c(11, "nilpotent Lie infrastructure");
  c.run([&] {
    for (auto [f, rank] : kAllTypes) {
      const RootSystem& rs = reg().rs(f, rank);
      std::string tag = diagram_key(f, rank);
      try {
        NilpotentLie lie = build_nilpotent(rs, 1, 100000);
        lusztig_rescale(lie);
      } catch (const Error& e) {
        c.expect(false, tag + ": " + e.what());
      }
    }
  });
  c.finish(120.0);
}

TEST_CASE("criterion 12") {
  Criterion c(12, "ordinary preprojective commutator quotient");
  c.run([&] {
    const std::vector<std::pair<FamilyType, int>> roster = {
        {FamilyType::A, 2}, {FamilyType::A, 3}, {FamilyType::A, 4}, {FamilyType::D, 4}};
    for (auto [f, rank] : roster) {
      const RootSystem& rs = reg().rs(f, rank);
      std::string tag = "A0(" + diagram_key(f, rank) + ")";
      int top = std::max(rs.coxeter - 2, 0);
      GradedAlgebra a0(preprojective_presentation(rs, {}, false), top);
      std::vector<int> q = commutator_quotient_dims(a0, top);
      c.expect(q[0] == rs.rank, tag + ": degree-0 dim " + std::to_string(q[0]));
      for (int d = 1; d <= top; ++d)
        c.expect(q[size_t(d)] == 0,
                 tag + ": nonzero dim " + std::to_string(q[size_t(d)]) + " at degree " +
                     std::to_string(d));
    }
  });
  c.finish();
}
