#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exactlin.hpp"
#include "gradealg.hpp"

namespace ceppa {

// JSON-producing entry points shared by the C API and the CLI. Weight
// specs are "rho", "random" (drawn from the seed until regular), or
// comma-separated rationals.

std::vector<Rat> parse_rat_csv(const std::string& s);

std::string roots_json(const std::string& family, int rank);

std::string trace_json(const std::string& family, int rank, const std::string& mu_spec,
                       std::uint64_t seed, std::int64_t budget);

// Decides z^s sum_i eps_i phi_i e_i membership in the commutator subspace
// three independent ways and reports whether they agree.
std::string membership_json(const std::string& family, int rank, const std::string& mu_spec,
                            const std::vector<Rat>& phi, int s, std::uint64_t seed,
                            std::int64_t budget);

std::string verify_json(const std::string& family, int rank, const std::string& mu_spec,
                        const std::string& suite, std::uint64_t seed, std::int64_t budget,
                        bool timings);

// variant: "mu", "a0", "b" or "b-elim"; max_degree < 0 picks the variant default.
std::string build_json(const std::string& variant, const std::string& family, int rank,
                       const std::string& mu_spec, int max_degree, std::uint64_t seed,
                       std::int64_t budget);

std::string build_text_json(const std::string& presentation_text, int max_degree,
                            std::int64_t budget);

}  // namespace ceppa
