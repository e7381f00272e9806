#include "ceppa.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <new>
#include <string>

#include "errors.hpp"
#include "gradealg.hpp"
#include "surface.hpp"

struct ceppa_session {
  std::string last_error;
};

namespace {

ceppa_status map_code(ceppa::errc c) {
  using ceppa::errc;
  switch (c) {
    case errc::unsupported_type:
      return CEPPA_ERR_UNSUPPORTED_TYPE;
    case errc::parse_error:
    case errc::incomposable_relation:
      return CEPPA_ERR_PARSE;
    case errc::irregular_weight:
      return CEPPA_ERR_IRREGULAR_WEIGHT;
    case errc::budget_exceeded:
      return CEPPA_ERR_BUDGET_EXCEEDED;
    case errc::degree_overflow:
      return CEPPA_ERR_DEGREE_OVERFLOW;
    case errc::bad_argument:
    case errc::no_nodal_vertex:
      return CEPPA_ERR_BAD_ARGUMENT;
    case errc::internal:
      return CEPPA_ERR_INTERNAL;
    default:
      return CEPPA_ERR_MATH;
  }
}

std::int64_t pick_budget(int64_t budget) {
  return budget < 0 ? ceppa::kDefaultBudget : budget;
}

ceppa_status wrap(ceppa_session* s, char** out, const std::function<std::string()>& fn) {
  if (!s) return CEPPA_ERR_BAD_ARGUMENT;
  s->last_error.clear();
  if (!out) {
    s->last_error = "null output pointer";
    return CEPPA_ERR_BAD_ARGUMENT;
  }
  *out = nullptr;
  try {
    std::string j = fn();
    char* buf = static_cast<char*>(std::malloc(j.size() + 1));
    if (!buf) {
      s->last_error = "out of memory";
      return CEPPA_ERR_NOMEM;
    }
    std::memcpy(buf, j.c_str(), j.size() + 1);
    *out = buf;
    return CEPPA_OK;
  } catch (const ceppa::Error& e) {
    s->last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    s->last_error = "out of memory";
    return CEPPA_ERR_NOMEM;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return CEPPA_ERR_INTERNAL;
  }
}

ceppa_status require_cstr(ceppa_session* s, const char* p, const char* what) {
  if (p) return CEPPA_OK;
  if (s) s->last_error = std::string("null ") + what;
  return CEPPA_ERR_BAD_ARGUMENT;
}

}  // namespace

extern "C" {

ceppa_session* ceppa_session_new(void) { return new (std::nothrow) ceppa_session; }

void ceppa_session_free(ceppa_session* s) { delete s; }

const char* ceppa_last_error(const ceppa_session* s) {
  return s ? s->last_error.c_str() : "null session";
}

void ceppa_string_free(char* s) { std::free(s); }

ceppa_status ceppa_roots_json(ceppa_session* s, const char* family, int rank, char** out) {
  if (auto st = require_cstr(s, family, "family string"); st != CEPPA_OK) return st;
  return wrap(s, out, [&] { return ceppa::roots_json(family, rank); });
}

ceppa_status ceppa_trace_json(ceppa_session* s, const char* family, int rank,
                              const char* mu, uint64_t seed, int64_t budget, char** out) {
  if (auto st = require_cstr(s, family, "family string"); st != CEPPA_OK) return st;
  if (auto st = require_cstr(s, mu, "mu string"); st != CEPPA_OK) return st;
  return wrap(s, out, [&] {
    return ceppa::trace_json(family, rank, mu, seed, pick_budget(budget));
  });
}

ceppa_status ceppa_membership_json(ceppa_session* s, const char* family, int rank,
                                   const char* mu, const char* phi, int s_power,
                                   uint64_t seed, int64_t budget, char** out) {
  if (auto st = require_cstr(s, family, "family string"); st != CEPPA_OK) return st;
  if (auto st = require_cstr(s, mu, "mu string"); st != CEPPA_OK) return st;
  if (auto st = require_cstr(s, phi, "phi string"); st != CEPPA_OK) return st;
  return wrap(s, out, [&] {
    return ceppa::membership_json(family, rank, mu, ceppa::parse_rat_csv(phi), s_power,
                                  seed, pick_budget(budget));
  });
}

ceppa_status ceppa_verify_json(ceppa_session* s, const char* family, int rank,
                               const char* mu, const char* suite, uint64_t seed,
                               int64_t budget, int with_timings, char** out) {
  if (auto st = require_cstr(s, family, "family string"); st != CEPPA_OK) return st;
  if (auto st = require_cstr(s, mu, "mu string"); st != CEPPA_OK) return st;
  if (auto st = require_cstr(s, suite, "suite string"); st != CEPPA_OK) return st;
  return wrap(s, out, [&] {
    return ceppa::verify_json(family, rank, mu, suite, seed, pick_budget(budget),
                              with_timings != 0);
  });
}

ceppa_status ceppa_build_json(ceppa_session* s, const char* variant, const char* family,
                              int rank, const char* mu, int max_degree, uint64_t seed,
                              int64_t budget, char** out) {
  if (auto st = require_cstr(s, variant, "variant string"); st != CEPPA_OK) return st;
  if (auto st = require_cstr(s, family, "family string"); st != CEPPA_OK) return st;
  if (auto st = require_cstr(s, mu, "mu string"); st != CEPPA_OK) return st;
  return wrap(s, out, [&] {
    return ceppa::build_json(variant, family, rank, mu, max_degree, seed,
                             pick_budget(budget));
  });
}

ceppa_status ceppa_build_text_json(ceppa_session* s, const char* text, int max_degree,
                                   int64_t budget, char** out) {
  if (auto st = require_cstr(s, text, "presentation text"); st != CEPPA_OK) return st;
  return wrap(s, out, [&] {
    return ceppa::build_text_json(text, max_degree, pick_budget(budget));
  });
}

}  // extern "C"
