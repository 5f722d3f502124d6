#include "freelip/freelip.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "constructions.hpp"
#include "error.hpp"
#include "extremal.hpp"
#include "free_space.hpp"
#include "io.hpp"
#include "metric_core.hpp"
#include "parallel.hpp"
#include "suites.hpp"

struct freelip_space {
  freelip::SpacePtr ptr;
};

struct freelip_function {
  freelip::LipFunction value;
};

struct freelip_vector {
  freelip::FreeVector value;
};

namespace {

using freelip::ErrorCode;
using freelip::Json;
using freelip::rational_to_json;

thread_local std::string last_error;

// Runs fn, translating exceptions into status codes and the thread-local
// message.
template <class Fn>
int guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return FREELIP_OK;
  } catch (const freelip::Error& e) {
    last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return FREELIP_PARSE_ERROR;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FREELIP_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FREELIP_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw freelip::Error(ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
}

void emit(char** out, const std::string& text) {
  require(out, "out");
  char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buffer) throw std::bad_alloc();
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  *out = buffer;
}

void emit(char** out, const Json& doc) { emit(out, doc.dump()); }

double tolerance_or_default(double tol) { return tol > 0 ? tol : freelip::kDefaultTolerance; }

std::optional<std::string> optional_text(const char* text) {
  return text ? std::optional<std::string>(text) : std::nullopt;
}

Json molecule_json(const freelip::MetricSpace& s, const freelip::Molecule& m) {
  return Json::array({s.label(m.x), s.label(m.y)});
}

Json optional_rational(const std::optional<freelip::Rational>& v, const char* sentinel) {
  return v ? rational_to_json(*v) : Json(sentinel);
}

Json classification_rows(const freelip::SpacePtr& s, std::size_t threads) {
  Json rows = Json::array();
  if (s->is_exact()) {
    for (const auto& row : freelip::classify_all_molecules(s, threads)) {
      if (row.molecule.x.index > row.molecule.y.index) continue;
      rows.push_back(Json{{"x", s->label(row.molecule.x)},
                          {"y", s->label(row.molecule.y)},
                          {"eps0", optional_rational(row.eps0, "inf")},
                          {"margin", rational_to_json(row.margin)},
                          {"trivial_segment", row.trivial_segment},
                          {"strongly_exposed", row.strongly_exposed},
                          {"consistent", row.consistent}});
    }
    return rows;
  }
  for (freelip::PointId x : s->points()) {
    for (freelip::PointId y : s->points()) {
      if (y <= x) continue;
      auto eps0 = freelip::gromov_exposure_constant_approx(*s, x, y);
      bool trivial = freelip::metric_segment(*s, x, y).size() == 2;
      bool exposed = !eps0 || *eps0 > s->tolerance();
      rows.push_back(Json{{"x", s->label(x)},
                          {"y", s->label(y)},
                          {"eps0", eps0 ? Json(*eps0) : Json("inf")},
                          {"margin", nullptr},
                          {"trivial_segment", trivial},
                          {"strongly_exposed", exposed},
                          {"consistent", exposed == trivial}});
    }
  }
  return rows;
}

Json space_report(const freelip::SpacePtr& s, std::size_t threads) {
  Json out;
  out["size"] = s->size();
  out["base"] = s->label(s->base());
  out["backend"] = s->is_exact() ? "exact" : "float";
  auto concave = freelip::is_concave(*s);
  out["concave"] = concave.concave;
  if (concave.witness) {
    const auto& w = *concave.witness;
    out["segment_witness"] = Json::array({s->label(w[0]), s->label(w[1]), s->label(w[2])});
  }
  const auto all = freelip::all_molecules(*s);
  out["molecules"] = all.size();
  if (!s->is_exact()) {
    auto rot = all.empty() ? std::nullopt : freelip::uniform_gromov_rotundity_approx(*s, all);
    out["rotundity"] = rot ? Json(*rot) : Json("inf");
    return out;
  }
  if (auto gap = freelip::alpha_concave_gap(*s)) {
    out["concave_gap"] = rational_to_json(gap->gap);
    out["concave_gap_at"] = Json::array({s->label(gap->argmin[0]), s->label(gap->argmin[1]), s->label(gap->argmin[2])});
    out["quasi_alpha_eps"] = optional_rational(freelip::quasi_alpha_condition(*s).eps, "none");
  }
  if (all.empty()) return out;
  out["rotundity"] = optional_rational(freelip::uniform_gromov_rotundity(*s, all), "inf");
  auto table = freelip::classify_all_molecules(s, threads);
  std::vector<freelip::Molecule> exposed;
  std::size_t disagreements = 0;
  for (const auto& row : table) {
    if (row.strongly_exposed) exposed.push_back(row.molecule);
    if (!row.consistent) ++disagreements;
  }
  out["strongly_exposed"] = exposed.size();
  out["classification_disagreements"] = disagreements;
  if (!exposed.empty())
    out["rotundity_exposed"] = optional_rational(freelip::uniform_gromov_rotundity(*s, exposed), "inf");
  auto census = freelip::vertex_census(table);
  Json a = Json::array(), b = Json::array();
  for (const auto& m : census.exposed_not_vertex) a.push_back(molecule_json(*s, m));
  for (const auto& m : census.vertex_not_trivial) b.push_back(molecule_json(*s, m));
  out["exposed_not_vertex"] = a;
  out["vertex_not_trivial"] = b;
  // Pairwise molecule distances need one program per pair; kept to small spaces.
  if (s->size() <= 8 && all.size() >= 2) {
    auto disc = freelip::molecule_set_uniform_discreteness(s, all);
    out["discreteness"] = Json{{"delta", rational_to_json(disc.delta)},
                               {"min_distance", rational_to_json(disc.min_distance)},
                               {"lower_ok", disc.lower_ok},
                               {"upper_ok", disc.upper_ok}};
  }
  return out;
}

}  // namespace

extern "C" {

const char* freelip_version(void) { return "1.0.0"; }

const char* freelip_status_name(int status) { return freelip::error_name(static_cast<ErrorCode>(status)); }

const char* freelip_last_error(void) { return last_error.c_str(); }

void freelip_free_string(char* text) { std::free(text); }

size_t freelip_default_threads(void) { return freelip::default_threads(); }

int freelip_space_load(const char* path, const char* base, double tol, freelip_space** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new freelip_space{freelip::load_space(path, optional_text(base), tolerance_or_default(tol))};
  });
}

int freelip_space_parse(const char* json_text, const char* base, double tol, freelip_space** out) {
  return guard([&] {
    require(json_text, "json_text");
    require(out, "out");
    auto doc = freelip::parse_json_text(json_text);
    *out = new freelip_space{freelip::space_from_json(doc, optional_text(base), tolerance_or_default(tol))};
  });
}

int freelip_space_generate(const char* family, const char* params_json, uint64_t seed, freelip_space** out) {
  return guard([&] {
    require(family, "family");
    require(out, "out");
    freelip::Params params;
    if (params_json) {
      auto doc = freelip::parse_json_text(params_json);
      if (!doc.is_object()) throw freelip::Error(ErrorCode::kParseError, "params must be a JSON object");
      for (const auto& [k, v] : doc.items()) params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    *out = new freelip_space{freelip::generate_space(family, params, seed)};
  });
}

void freelip_space_free(freelip_space* space) { delete space; }

size_t freelip_space_size(const freelip_space* space) { return space ? space->ptr->size() : 0; }

int freelip_space_is_exact(const freelip_space* space) { return space && space->ptr->is_exact() ? 1 : 0; }

int freelip_space_to_json(const freelip_space* space, char** out) {
  return guard([&] {
    require(space, "space");
    emit(out, freelip::space_to_json(*space->ptr));
  });
}

int freelip_space_to_csv(const freelip_space* space, char** out) {
  return guard([&] {
    require(space, "space");
    emit(out, freelip::space_to_csv(*space->ptr));
  });
}

int freelip_function_load(const char* path, freelip_function** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new freelip_function{freelip::load_function(path)};
  });
}

int freelip_function_parse(const char* json_text, const char* dir, freelip_function** out) {
  return guard([&] {
    require(json_text, "json_text");
    require(out, "out");
    *out = new freelip_function{freelip::function_from_json(freelip::parse_json_text(json_text), dir ? dir : ".")};
  });
}

void freelip_function_free(freelip_function* f) { delete f; }

int freelip_vector_load(const char* path, freelip_vector** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new freelip_vector{freelip::load_vector(path)};
  });
}

int freelip_vector_parse(const char* json_text, const char* dir, freelip_vector** out) {
  return guard([&] {
    require(json_text, "json_text");
    require(out, "out");
    *out = new freelip_vector{freelip::vector_from_json(freelip::parse_json_text(json_text), dir ? dir : ".")};
  });
}

void freelip_vector_free(freelip_vector* mu) { delete mu; }

int freelip_function_norm(const freelip_function* f, char** out) {
  return guard([&] {
    require(f, "f");
    auto rep = freelip::lip_norm(f->value);
    Json pairs = Json::array();
    for (const auto& m : rep.pairs) pairs.push_back(molecule_json(f->value.space(), m));
    emit(out, Json{{"norm", rational_to_json(rep.norm)}, {"pairs", pairs}});
  });
}

int freelip_vector_norm(const freelip_vector* mu, int with_plan, char** out) {
  return guard([&] {
    require(mu, "mu");
    auto dual = freelip::free_norm_dual(mu->value);
    Json doc{{"norm", rational_to_json(dual.norm)},
             {"witness", freelip::function_to_json(dual.witness)["values"]},
             {"pivots", dual.pivots}};
    if (with_plan) {
      const auto& s = mu->value.space();
      auto flow = freelip::free_norm_flow(mu->value);
      Json plan = Json::array();
      for (const auto& f : flow.plan.flows)
        plan.push_back(Json{{"from", s.label(f.from)}, {"to", s.label(f.to)}, {"amount", rational_to_json(f.amount)}});
      doc["plan"] = plan;
      doc["flow_norm"] = rational_to_json(flow.norm);
    }
    emit(out, doc);
  });
}

int freelip_classify(const freelip_space* space, size_t threads, char** out) {
  return guard([&] {
    require(space, "space");
    emit(out, classification_rows(space->ptr, threads));
  });
}

int freelip_alpha(const freelip_space* space, int gromov, uint64_t seed, size_t threads, char** out) {
  return guard([&] {
    require(space, "space");
    const auto& s = *space->ptr;
    auto kind = gromov ? freelip::AlphaFunctionals::kGromov : freelip::AlphaFunctionals::kMargin;
    auto cert = freelip::property_alpha_certificate(space->ptr, kind, 16, seed, threads);
    Json functionals = Json::array();
    for (std::size_t i = 0; i < cert.molecules.size(); ++i) {
      Json row{{"molecule", molecule_json(s, cert.molecules[i])},
               {"values", freelip::function_to_json(cert.functionals[i])["values"]}};
      if (i < cert.margins.size()) row["margin"] = rational_to_json(cert.margins[i]);
      functionals.push_back(std::move(row));
    }
    Json doc{{"functionals_kind", gromov ? "gromov" : "margin"},
             {"molecules", cert.molecules.size()},
             {"rho", rational_to_json(cert.rho)},
             {"rho_at", nullptr},
             {"functionals_ok", cert.functionals_ok},
             {"norming_ok", cert.norming_ok},
             {"valid", cert.valid},
             {"functionals", functionals}};
    if (cert.rho_argmax) {
      const auto& [i, m] = *cert.rho_argmax;
      doc["rho_at"] = Json{{"functional", molecule_json(s, cert.molecules[i])}, {"molecule", molecule_json(s, m)}};
    }
    emit(out, doc);
  });
}

int freelip_report(const freelip_space* space, size_t threads, char** out) {
  return guard([&] {
    require(space, "space");
    emit(out, space_report(space->ptr, threads));
  });
}

int freelip_suite_names(char** out) {
  return guard([&] { emit(out, Json(freelip::suite_names())); });
}

int freelip_family_names(char** out) {
  return guard([&] { emit(out, Json(freelip::family_names())); });
}

int freelip_verify(const char* suite, const char* spaces_spec, uint64_t seed, size_t threads, char** out,
                   int* passed) {
  return guard([&] {
    require(suite, "suite");
    std::string spec = spaces_spec ? spaces_spec : freelip::default_spaces(suite);
    auto spaces = freelip::spaces_from_spec(spec);
    auto report = freelip::run_suite(suite, spaces, seed, threads);
    Json doc = report.to_json();
    doc["spaces_spec"] = spec;
    emit(out, doc);
    if (passed) *passed = report.ok() ? 1 : 0;
  });
}

}  // extern "C"
