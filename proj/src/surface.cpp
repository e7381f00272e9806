#include "surface.hpp"

#include <json.hpp>

#include <sstream>

#include "errors.hpp"
#include "lietheory.hpp"
#include "rootsys.hpp"
#include "traceform.hpp"
#include "verify.hpp"

namespace ceppa {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json json_header() {
  ordered_json j;
  j["schema"] = 1;
  j["tool"] = "ceppa";
  return j;
}

ordered_json rat_array(const std::vector<Rat>& v) {
  ordered_json a = ordered_json::array();
  for (const Rat& x : v) a.push_back(rat_str(x));
  return a;
}

std::vector<Rat> resolve_weight(const RootSystem& rs, const std::string& spec,
                                std::uint64_t seed) {
  if (spec == "rho") return resolve_mu(rs, "rho", {}, seed).first;
  if (spec == "random") return resolve_mu(rs, "random", {}, seed).first;
  return resolve_mu(rs, "csv", parse_rat_csv(spec), seed).first;
}

}  // namespace

std::vector<Rat> parse_rat_csv(const std::string& s) {
  std::vector<Rat> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    require(a != std::string::npos, errc::parse_error, "empty entry in rational list");
    out.push_back(parse_rat(item.substr(a, b - a + 1)));
  }
  require(!out.empty(), errc::parse_error, "empty rational list");
  return out;
}

std::string roots_json(const std::string& family, int rank) {
  RootSystem rs = build_root_system(parse_family(family), rank);
  ordered_json j = json_header();
  j["family"] = family_name(rs.family);
  j["rank"] = rs.rank;
  j["num_roots"] = rs.num_roots;
  j["coxeter"] = rs.coxeter;
  j["exponents"] = rs.exponents;
  j["height_counts"] = height_counts(rs);
  j["theta"] = rs.roots[size_t(rs.theta)];
  j["eps"] = rs.eps;
  ordered_json edges = ordered_json::array();
  for (auto [u, v] : rs.edges) edges.push_back({u + 1, v + 1});
  j["edges"] = edges;
  if (rs.nodal >= 0) {
    j["nodal"] = rs.nodal + 1;
    j["legs"] = rs.legs;
    j["nodal_height_counts"] = nodal_height_counts(rs);
  } else {
    j["nodal"] = nullptr;
    j["legs"] = ordered_json::array();
  }
  return j.dump() + "\n";
}

std::string trace_json(const std::string& family, int rank, const std::string& mu_spec,
                       std::uint64_t seed, std::int64_t budget) {
  RootSystem rs = build_root_system(parse_family(family), rank);
  std::vector<Rat> mu = resolve_weight(rs, mu_spec, seed);
  GradedAlgebra ga(preprojective_presentation(rs, mu), 2 * rs.coxeter - 2, budget);
  std::vector<Rat> t = trace_functional(ga);

  std::vector<Rat> pw = path_weights(rs, mu);
  std::vector<Rat> side(size_t(rs.rank));
  for (int i = 0; i < rs.rank; ++i)
    side[size_t(i)] = Rat(rs.eps[size_t(i)]) * pw[size_t(rs.simple_root_id(i))];

  bool proportional = true;
  for (int i = 0; i < rs.rank; ++i)
    for (int k = i + 1; k < rs.rank; ++k)
      if (t[size_t(i)] * side[size_t(k)] != t[size_t(k)] * side[size_t(i)])
        proportional = false;
  Rat dot = 0;
  for (int i = 0; i < rs.rank; ++i) dot += mu[size_t(i)] * t[size_t(i)];

  ordered_json j = json_header();
  j["family"] = family_name(rs.family);
  j["rank"] = rs.rank;
  j["coxeter"] = rs.coxeter;
  j["mu"] = rat_array(mu);
  j["top_degree"] = 2 * (rs.coxeter - 2);
  j["trace"] = rat_array(t);
  j["path_side"] = rat_array(side);
  j["proportional_to_path_side"] = proportional;
  j["mu_pairing_zero"] = (dot == 0);
  return j.dump() + "\n";
}

std::string membership_json(const std::string& family, int rank, const std::string& mu_spec,
                            const std::vector<Rat>& phi, int s, std::uint64_t seed,
                            std::int64_t budget) {
  RootSystem rs = build_root_system(parse_family(family), rank);
  std::vector<Rat> mu = resolve_weight(rs, mu_spec, seed);
  require(int(phi.size()) == rs.rank, errc::bad_argument,
          "phi needs one entry per vertex");
  require(s >= 0 && s <= rs.coxeter - 1, errc::bad_argument,
          "s must lie in 0..h-1");

  GradedAlgebra ga(preprojective_presentation(rs, mu), 2 * s, budget);
  RrefBasis comm = commutator_subspace(ga, 2 * s);
  Element x;
  for (int i = 0; i < rs.rank; ++i) {
    Element unit{Term{Rat(1), Monomial{s, {}, i}}};
    el_add_scaled(x, Rat(rs.eps[size_t(i)]) * phi[size_t(i)], unit);
  }
  bool in_quotient = comm.contains(ga.coords(x, 2 * s));
  bool in_chain = t_membership(rs, mu, phi, s);
  NilpotentLie lie = build_nilpotent(rs, seed);
  bool in_operator = l_membership(lie, mu, phi, s);
  bool agree = (in_quotient == in_chain) && (in_chain == in_operator);

  ordered_json j = json_header();
  j["family"] = family_name(rs.family);
  j["rank"] = rs.rank;
  j["mu"] = rat_array(mu);
  j["phi"] = rat_array(phi);
  j["s"] = s;
  j["in_commutator_quotient_kernel"] = in_quotient;
  j["in_transfer_chain_kernel"] = in_chain;
  j["in_operator_kernel"] = in_operator;
  j["agree"] = agree;
  return j.dump() + "\n";
}

std::string verify_json(const std::string& family, int rank, const std::string& mu_spec,
                        const std::string& suite, std::uint64_t seed, std::int64_t budget,
                        bool timings) {
  VerifyOptions opts;
  opts.family = parse_family(family);
  opts.rank = rank;
  if (mu_spec == "rho" || mu_spec == "random") {
    opts.mu_mode = mu_spec;
  } else {
    opts.mu_mode = "csv";
    opts.mu = parse_rat_csv(mu_spec);
  }
  opts.suite = suite;
  opts.seed = seed;
  opts.budget = budget;
  opts.timings = timings;
  return report_json(run_verify(opts));
}

std::string build_json(const std::string& variant, const std::string& family, int rank,
                       const std::string& mu_spec, int max_degree, std::uint64_t seed,
                       std::int64_t budget) {
  RootSystem rs = build_root_system(parse_family(family), rank);
  int h = rs.coxeter;

  Presentation pres;
  std::vector<Rat> mu;
  int deg = max_degree;
  if (variant == "mu") {
    mu = resolve_weight(rs, mu_spec, seed);
    pres = preprojective_presentation(rs, mu, true);
    if (deg < 0) deg = 2 * h - 2;
  } else if (variant == "a0") {
    pres = preprojective_presentation(rs, {}, false);
    if (deg < 0) deg = std::max(h - 2, 0);
  } else if (variant == "b" || variant == "b-elim") {
    require(rs.nodal >= 0, errc::no_nodal_vertex,
            family_name(rs.family) + " diagrams have no trivalent vertex");
    pres = b_presentation(rs.legs, variant == "b-elim");
    if (deg < 0) deg = 2 * (h - 2);
  } else {
    fail(errc::bad_argument, "unknown variant '" + variant +
                                 "' (expected mu, a0, b or b-elim)");
  }

  GradedAlgebra ga(pres, deg, budget);
  std::vector<int> dims = ga.dims();
  long total = 0;
  for (int d : dims) total += d;

  ordered_json j = json_header();
  j["variant"] = variant;
  j["family"] = family_name(rs.family);
  j["rank"] = rs.rank;
  j["coxeter"] = h;
  if (variant == "mu") j["mu"] = rat_array(mu);
  j["max_degree"] = deg;
  j["vertices"] = ga.pres().vertices;
  j["generators"] = ga.pres().gens.size();
  j["dims"] = dims;
  j["total_dim"] = total;
  return j.dump() + "\n";
}

std::string build_text_json(const std::string& presentation_text, int max_degree,
                            std::int64_t budget) {
  require(max_degree >= 0, errc::bad_argument,
          "a max degree is required when building from presentation text");
  std::istringstream in(presentation_text);
  Presentation pres = parse_presentation(in);
  GradedAlgebra ga(pres, max_degree, budget);
  std::vector<int> dims = ga.dims();
  long total = 0;
  for (int d : dims) total += d;

  ordered_json j = json_header();
  j["variant"] = "text";
  j["max_degree"] = max_degree;
  j["vertices"] = pres.vertices;
  j["generators"] = pres.gens.size();
  j["relations"] = pres.relations.size();
  j["dims"] = dims;
  j["total_dim"] = total;
  return j.dump() + "\n";
}

}  // namespace ceppa
