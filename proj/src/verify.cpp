#include "verify.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <optional>
#include <random>

#include "errors.hpp"
#include "lietheory.hpp"
#include "traceform.hpp"

namespace ceppa {

namespace {

using nlohmann::ordered_json;

std::string csv_int(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string csv_rat(const std::vector<Rat>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + rat_str(v[i]);
  return s;
}

std::string iso_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct Ctx {
  const VerifyOptions* opts = nullptr;
  RootSystem rs;
  std::vector<Rat> mu;

  std::optional<GradedAlgebra> alg;
  std::optional<Error> alg_err;
  std::optional<GradedTraceData> gdata;
  std::optional<NilpotentLie> lie;

  const GradedAlgebra& algebra() {
    if (alg_err) throw *alg_err;
    if (!alg) {
      try {
        alg.emplace(preprojective_presentation(rs, mu), 2 * rs.coxeter - 2, opts->budget);
      } catch (const Error& e) {
        if (e.code() == errc::budget_exceeded) alg_err = e;
        throw;
      }
    }
    return *alg;
  }
  const GradedTraceData& trace_data() {
    algebra();
    if (!gdata) gdata = graded_trace_data(*alg);
    return *gdata;
  }
  const NilpotentLie& nilpotent() {
    if (!lie) lie = build_nilpotent(rs, opts->seed);
    return *lie;
  }
};

QMatrix embed_simple(const RootSystem& rs) {
  const auto& h1 = rs.by_height[1];
  QMatrix e(int(h1.size()), rs.rank);
  for (int k = 0; k < int(h1.size()); ++k)
    for (int i = 0; i < rs.rank; ++i)
      if (h1[size_t(k)] == rs.simple_root_id(i)) e.at(k, i) = 1;
  return e;
}

void check_dims(Ctx& c, CheckResult& r) {
  const auto& ga = c.algebra();
  int top = 2 * (c.rs.coxeter - 2);
  r.expected = "per-entry dims of e_i A e_j equal the matrix series (1-t^2h)/(1-t^2) (1-Ct+t^2)^-1 through degree " +
               std::to_string(top);
  PolyMatrix pred = hilbert_matrix_predicted(c.rs);
  for (int d = 0; d <= top; ++d)
    for (int i = 0; i < c.rs.rank; ++i)
      for (int j = 0; j < c.rs.rank; ++j)
        if (pred.at(d).at(i, j) != ga.block_dim(d, i, j)) {
          r.status = "fail";
          r.actual = "entry (" + std::to_string(d) + "," + std::to_string(i) + "," +
                     std::to_string(j) + ") has dim " + std::to_string(ga.block_dim(d, i, j)) +
                     ", series says " + rat_str(pred.at(d).at(i, j));
          return;
        }
  r.actual = "all " + std::to_string((top + 1) * c.rs.rank * c.rs.rank) + " entries match";
}

void check_top_vanish(Ctx& c, CheckResult& r) {
  const auto& ga = c.algebra();
  int h = c.rs.coxeter;
  r.expected = "dim 0 in degrees " + std::to_string(2 * h - 3) + " and " + std::to_string(2 * h - 2);
  int d1 = ga.dim(2 * h - 3), d2 = ga.dim(2 * h - 2);
  r.actual = std::to_string(d1) + "," + std::to_string(d2);
  if (d1 || d2) {
    r.status = "fail";
    r.reason = "the quotient keeps growing above the socle degree";
  }
}

std::vector<int> interleave_even(const std::vector<int>& counts, int top) {
  std::vector<int> out(size_t(top) + 1, 0);
  for (int d = 0; d <= top; d += 2) out[size_t(d)] = counts[size_t(d / 2)];
  return out;
}

void check_comm_dims(Ctx& c, CheckResult& r) {
  const auto& data = c.trace_data();
  auto expect = interleave_even(height_counts(c.rs), data.top_degree);
  r.expected = csv_int(expect);
  r.actual = csv_int(data.quotient_dims);
  if (data.quotient_dims != expect) {
    r.status = "fail";
    r.reason = "commutator quotient dims differ from the root height counts";
  }
}

void check_jordan(Ctx& c, CheckResult& r) {
  const auto& data = c.trace_data();
  r.expected = "exponents " + csv_int(c.rs.exponents) + " on both quotient and center";
  r.actual = "quotient " + csv_int(data.z_blocks_quotient) + "; center " +
             csv_int(data.z_blocks_center);
  if (data.z_blocks_quotient != c.rs.exponents || data.z_blocks_center != c.rs.exponents) {
    r.status = "fail";
    r.reason = "Jordan blocks of z differ from the exponents";
  }
}

void check_center_identity(Ctx& c, CheckResult& r) {
  const auto& data = c.trace_data();
  int top = data.top_degree;
  r.expected =
      "center dims mirror quotient dims and t^2 p*(t) + p(t) = r (1-t^2h)/(1-t^2) through degree " +
      std::to_string(top);
  for (int d = 0; d <= top; ++d) {
    if (data.center_dims[size_t(d)] != data.quotient_dims[size_t(top - d)]) {
      r.status = "fail";
      r.reason = "p*_" + std::to_string(d) + " != p_" + std::to_string(top - d);
      return;
    }
    int lhs = data.quotient_dims[size_t(d)] + (d >= 2 ? data.center_dims[size_t(d - 2)] : 0);
    int rhs = d % 2 ? 0 : c.rs.rank;
    if (lhs != rhs) {
      r.status = "fail";
      r.reason = "degree " + std::to_string(d) + " sums to " + std::to_string(lhs) + ", not " +
                 std::to_string(rhs);
      return;
    }
  }
  r.actual = "p = " + csv_int(data.quotient_dims) + "; p* = " + csv_int(data.center_dims);
}

void check_trace_unique(Ctx& c, CheckResult& r) {
  r.expected = "one-dimensional annihilator of the top-degree commutators";
  r.actual = "trace values " + csv_rat(trace_functional(c.algebra()));
}

void check_pairing(Ctx& c, CheckResult& r) {
  r.expected = "square invertible Gram pairing between center and quotient in every degree";
  pairing_check(c.algebra(), c.opts->seed);
  r.actual = "verified, including vanishing on sampled commutators";
}

void check_trace_paths(Ctx& c, CheckResult& r) {
  r.expected =
      "Tr(z^(h-2) e_i) proportional to eps_i W(alpha_i) with sum_i mu_i Tr(z^(h-2) e_i) = 0";
  auto t = trace_functional(c.algebra());
  auto pw = path_weights(c.rs, c.mu);
  std::vector<Rat> w(static_cast<size_t>(c.rs.rank));
  bool nonzero = false;
  for (int i = 0; i < c.rs.rank; ++i) {
    w[size_t(i)] = Rat(c.rs.eps[size_t(i)]) * pw[size_t(c.rs.simple_root_id(i))];
    nonzero = nonzero || w[size_t(i)] != 0;
  }
  if (!nonzero) {
    r.status = "fail";
    r.reason = "the weighted path sums vanish at every vertex; nothing to corroborate";
    return;
  }
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = i + 1; j < w.size(); ++j)
      if (t[i] * w[j] != t[j] * w[i]) {
        r.status = "fail";
        r.reason = "vertices " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                   " break proportionality";
        return;
      }
  Rat dot = 0;
  for (int i = 0; i < c.rs.rank; ++i) dot += c.mu[size_t(i)] * t[size_t(i)];
  if (dot != 0) {
    r.status = "fail";
    r.reason = "sum_i mu_i t_i = " + rat_str(dot);
    return;
  }
  r.actual = "trace " + csv_rat(t) + " matches path sums " + csv_rat(w) + " up to one scale";
}

void check_membership(Ctx& c, CheckResult& r) {
  int h = c.rs.coxeter;
  r.expected = "equal solution spaces from the quotient, the transfer chain and the scaled "
               "operator for every 0 <= s <= " +
               std::to_string(h - 2);
  const auto& ga = c.algebra();
  const auto& lie = c.nilpotent();
  QMatrix lop = l_operator(lie, c.mu, {}, lusztig_rescale(lie));
  auto ts = t_matrices(c.rs, c.mu);
  QMatrix chain = embed_simple(c.rs);
  QMatrix efull(c.rs.num_roots, c.rs.rank);
  for (int i = 0; i < c.rs.rank; ++i) efull.at(c.rs.simple_root_id(i), i) = 1;
  QMatrix lpow = QMatrix::identity(c.rs.num_roots);
  std::vector<int> dims;
  for (int s = 0; s <= h - 2; ++s) {
    if (s > 0) {
      chain = ts[size_t(s - 1)] * chain;
      lpow = lop * lpow;
    }
    QMatrix brute = e_membership_bruteforce(ga, c.rs.eps, s);
    QMatrix kt = kernel_basis(chain);
    QMatrix kl = kernel_basis(lpow * efull);
    if (!(brute == kt) || !(brute == kl)) {
      r.status = "fail";
      r.reason = "oracles disagree at s = " + std::to_string(s) + " (dims " +
                 std::to_string(brute.rows()) + "/" + std::to_string(kt.rows()) + "/" +
                 std::to_string(kl.rows()) + ")";
      return;
    }
    dims.push_back(brute.rows());
  }
  r.actual = "identical kernels, dims " + csv_int(dims);
}

void check_complex_h1(Ctx& c, CheckResult& r) {
  const auto& ga = c.algebra();
  const auto& data = c.trace_data();
  r.expected = "H1 = 0, H0 = Z[d-2] and H2 = (A/[A,A])[d] in every degree";
  for (int d = 0; d <= ga.max_degree(); ++d) {
    auto s = complex_slice(ga, d);
    int h0 = (d >= 2 && d - 2 <= data.top_degree) ? data.center_dims[size_t(d - 2)] : 0;
    int h2 = d <= data.top_degree ? data.quotient_dims[size_t(d)] : 0;
    if (s.h1 != 0 || s.h0 != h0 || s.h2 != h2) {
      r.status = "fail";
      r.reason = "degree " + std::to_string(d) + ": H = (" + std::to_string(s.h0) + "," +
                 std::to_string(s.h1) + "," + std::to_string(s.h2) + "), expected (" +
                 std::to_string(h0) + ",0," + std::to_string(h2) + ")";
      return;
    }
  }
  r.actual = "verified through degree " + std::to_string(ga.max_degree());
}

void check_euler(Ctx& c, CheckResult& r) {
  const auto& ga = c.algebra();
  r.expected = "Euler characteristic r in even degrees, 0 in odd, through degree " +
               std::to_string(ga.max_degree());
  for (int d = 0; d <= ga.max_degree(); ++d) {
    auto s = complex_slice(ga, d);
    int want = d % 2 ? 0 : c.rs.rank;
    if (s.euler != want) {
      r.status = "fail";
      r.reason = "degree " + std::to_string(d) + " has Euler characteristic " +
                 std::to_string(s.euler);
      return;
    }
  }
  r.actual = "verified";
}

void check_a0(Ctx& c, CheckResult& r) {
  int top = std::max(c.rs.coxeter - 2, 0);
  std::vector<int> expect(size_t(top) + 1, 0);
  expect[0] = c.rs.rank;
  r.expected = csv_int(expect);
  GradedAlgebra ga(preprojective_presentation(c.rs, {}, false), top, c.opts->budget);
  auto dims = commutator_quotient_dims(ga, top);
  r.actual = csv_int(dims);
  if (dims != expect) {
    r.status = "fail";
    r.reason = "the z-less quotient has commutator classes above degree 0";
  }
}

void check_orientation(Ctx& c, CheckResult& r) {
  const auto& ga = c.algebra();
  r.expected = "per-entry dims unchanged when the first edge is flipped";
  std::vector<bool> flip(c.rs.edges.size(), false);
  flip[0] = true;
  GradedAlgebra gb(preprojective_presentation(c.rs, c.mu, true, flip), ga.max_degree(),
                   c.opts->budget);
  for (int d = 0; d <= ga.max_degree(); ++d)
    for (int i = 0; i < c.rs.rank; ++i)
      for (int j = 0; j < c.rs.rank; ++j)
        if (ga.block_dim(d, i, j) != gb.block_dim(d, i, j)) {
          r.status = "fail";
          r.reason = "entry (" + std::to_string(d) + "," + std::to_string(i) + "," +
                     std::to_string(j) + ") changed";
          return;
        }
  r.actual = "verified";
}

void check_b_dims(Ctx& c, CheckResult& r) {
  auto counts = nodal_height_counts(c.rs);  // NoNodalVertex on type A
  int top = 2 * (c.rs.coxeter - 2);
  auto expect = interleave_even(counts, top);
  r.expected = csv_int(expect);
  GradedAlgebra gb(b_presentation(c.rs.legs, true), top, c.opts->budget);
  auto dims = commutator_quotient_dims(gb, top);
  r.actual = csv_int(dims);
  if (dims != expect) {
    r.status = "fail";
    r.reason = "single-vertex commutator quotient dims differ from the nodal height counts";
  }
}

void check_bracket(Ctx& c, CheckResult& r) {
  r.expected = "antisymmetry, Serre relations, generation and Jacobi hold for the bracket table";
  c.nilpotent();
  r.actual = "verified on " + std::to_string(c.rs.num_roots) + " positive roots";
}

void check_rescale(Ctx& c, CheckResult& r) {
  r.expected = "a consistent unit rescaling of the root basis exists";
  auto scale = lusztig_rescale(c.nilpotent());
  r.actual = "c_theta = " + std::to_string(scale[size_t(c.rs.theta)]);
}

void check_rank_chain(Ctx& c, CheckResult& r) {
  auto counts = height_counts(c.rs);
  r.expected = csv_int(counts);
  auto ranks = t_rank_chain(c.rs, c.mu);
  r.actual = csv_int(ranks);
  if (ranks != counts) {
    r.status = "fail";
    r.reason = "transfer chain ranks differ from the root height counts";
  }
}

void check_w_lambda(Ctx& c, CheckResult& r) {
  int h = c.rs.coxeter, rk = c.rs.rank;
  int target = (h - 1) * rk - c.rs.num_roots;
  r.expected = "scalar and operator solution spaces coincide with dimension " +
               std::to_string(target) + " for 5 generic lambda samples";
  const auto& lie = c.nilpotent();
  std::mt19937_64 rng(c.opts->seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_int_distribution<int> val(-9, 9);
  int draws = 0;
  for (int sample = 0; sample < 5; ++sample) {
    std::vector<Rat> lam;
    QMatrix ws;
    for (;;) {
      require(++draws <= 200, errc::non_generic_lambda, "no generic lambda in 200 draws");
      lam.clear();
      for (int i = 0; i < rk; ++i) lam.emplace_back(val(rng));
      try {
        ws = w_lambda_scalar(c.rs, c.mu, lam);
        break;
      } catch (const Error& e) {
        if (e.code() != errc::non_generic_lambda) throw;
      }
    }
    QMatrix wo = w_lambda_operator(lie, c.mu, lam);
    if (!(ws == wo)) {
      r.status = "fail";
      r.reason = "scalar and operator kernels differ at lambda = " + csv_rat(lam);
      return;
    }
    if (ws.rows() != target) {
      r.status = "fail";
      r.reason = "solution dimension " + std::to_string(ws.rows()) + " at lambda = " + csv_rat(lam);
      return;
    }
    if (h >= 3) {
      RrefBasis span;
      for (int i = 0; i < ws.rows(); ++i) {
        SparseVec row;
        for (int j = 0; j < ws.cols(); ++j)
          if (ws.at(i, j) != 0) row.emplace_back(j, ws.at(i, j));
        span.insert(std::move(row));
      }
      SparseVec trivial;
      for (int i = 0; i < rk; ++i) {
        Rat c0 = Rat(c.rs.eps[size_t(i)]) * lam[size_t(i)];
        Rat c1 = Rat(c.rs.eps[size_t(i)]) * c.mu[size_t(i)];
        if (c0 != 0) trivial.emplace_back(i * (h - 1), c0);
        if (c1 != 0) trivial.emplace_back(i * (h - 1) + 1, c1);
      }
      if (!span.contains(trivial)) {
        r.status = "fail";
        r.reason = "the tuple f_i = eps_i (mu_i x + lambda_i) is missing at lambda = " +
                   csv_rat(lam);
        return;
      }
    }
  }
  r.actual = "5 samples agree, dimension " + std::to_string(target) + " (" +
             std::to_string(draws) + " draws)";
}

struct CheckDef {
  const char* name;
  const char* suite;
  void (*fn)(Ctx&, CheckResult&);
};

constexpr CheckDef kChecks[] = {
    {"dims-match-hilbert-formula", "algebra", check_dims},
    {"top-degrees-vanish", "algebra", check_top_vanish},
    {"commutator-quotient-dims-equal-height-counts", "algebra", check_comm_dims},
    {"jordan-blocks-z-quotient-equal-exponents", "algebra", check_jordan},
    {"center-quotient-hilbert-identity", "algebra", check_center_identity},
    {"trace-annihilator-unique", "algebra", check_trace_unique},
    {"pairing-gram-invertible", "algebra", check_pairing},
    {"trace-matches-path-sums", "algebra", check_trace_paths},
    {"membership-oracles-coincide", "algebra", check_membership},
    {"complex-h1-vanishes", "algebra", check_complex_h1},
    {"complex-euler-identity", "algebra", check_euler},
    {"a0-commutator-quotient-dims", "algebra", check_a0},
    {"orientation-independence", "algebra", check_orientation},
    {"b-commutator-dims-equal-nodal-height-counts", "b-algebra", check_b_dims},
    {"bracket-antisymmetry-jacobi", "lie", check_bracket},
    {"rescaling-consistent", "lie", check_rescale},
    {"rank-chain-equals-height-counts", "lie", check_rank_chain},
    {"poly-membership-criteria-agree", "lie", check_w_lambda},
};

}  // namespace

std::pair<std::vector<Rat>, int> resolve_mu(const RootSystem& rs, const std::string& mode,
                                            const std::vector<Rat>& explicit_mu,
                                            std::uint64_t seed) {
  if (mode == "rho") return {rho_weight(rs.rank), 1};
  if (mode == "random") {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(1, 100);
    for (int attempt = 1; attempt <= 100; ++attempt) {
      std::vector<Rat> mu;
      for (int i = 0; i < rs.rank; ++i) mu.emplace_back(num(rng));
      if (is_regular(rs, mu)) return {mu, attempt};
    }
    fail(errc::irregular_weight, "no regular weight in 100 random draws");
  }
  if (mode == "csv") {
    require(int(explicit_mu.size()) == rs.rank, errc::bad_argument,
            "weight needs " + std::to_string(rs.rank) + " entries");
    require(is_regular(rs, explicit_mu), errc::irregular_weight,
            "weight pairs to zero against a positive root");
    return {explicit_mu, 1};
  }
  fail(errc::bad_argument, "unknown weight mode '" + mode + "'");
}

VerifyReport run_verify(const VerifyOptions& opts) {
  require(opts.suite == "all" || opts.suite == "algebra" || opts.suite == "b-algebra" ||
              opts.suite == "lie",
          errc::bad_argument, "unknown suite '" + opts.suite + "'");
  VerifyReport rep;
  rep.opts = opts;

  Ctx ctx;
  ctx.opts = &opts;
  ctx.rs = build_root_system(opts.family, opts.rank);
  auto [mu, attempts] = resolve_mu(ctx.rs, opts.mu_mode, opts.mu, opts.seed);
  ctx.mu = rep.mu = mu;
  rep.mu_attempts = attempts;
  if (opts.timings) rep.timestamp = iso_now();

  for (const auto& def : kChecks) {
    if (opts.suite != "all" && opts.suite != def.suite) continue;
    CheckResult res;
    res.name = def.name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      def.fn(ctx, res);
      if (res.status.empty()) res.status = "pass";
      if (res.status == "fail" && res.reason.empty()) res.reason = res.actual;
    } catch (const Error& e) {
      bool graceful = e.code() == errc::budget_exceeded || e.code() == errc::no_nodal_vertex;
      res.status = graceful ? "skip" : "fail";
      res.reason = e.what();
    } catch (const std::exception& e) {
      res.status = "fail";
      res.reason = e.what();
    }
    if (opts.timings) {
      std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
      res.runtime_ms = dt.count();
    }
    if (res.status == "pass") ++rep.passed;
    else if (res.status == "fail") ++rep.failed;
    else ++rep.skipped;
    rep.checks.push_back(std::move(res));
  }
  rep.verdict = rep.failed ? "fail" : "pass";
  return rep;
}

std::string report_json(const VerifyReport& r) {
  ordered_json j;
  j["schema"] = 1;
  j["tool"] = "ceppa";
  j["version"] = "0.1.0";
  j["timestamp"] = r.timestamp;
  j["family"] = family_name(r.opts.family);
  j["rank"] = r.opts.rank;
  j["suite"] = r.opts.suite;
  j["mu_mode"] = r.opts.mu_mode;
  ordered_json mu = ordered_json::array();
  for (const auto& q : r.mu) mu.push_back(rat_str(q));
  j["mu"] = mu;
  j["mu_attempts"] = r.mu_attempts;
  j["seed"] = r.opts.seed;
  j["budget"] = r.opts.budget;
  j["notes"] = ordered_json::array(
      {"transfer matrices divide by the weight of the source root (mu, alpha - alpha_j)"});
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["status"] = c.status;
    e["expected"] = c.expected;
    e["actual"] = c.actual;
    e["reason"] = c.reason;
    e["runtime_ms"] = c.runtime_ms;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["passed"] = r.passed;
  j["failed"] = r.failed;
  j["skipped"] = r.skipped;
  j["verdict"] = r.verdict;
  return j.dump(2) + "\n";
}

}  // namespace ceppa
