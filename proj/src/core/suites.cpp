#include "suites.hpp"

#include <algorithm>
#include <sstream>

#include "constructions.hpp"
#include "error.hpp"
#include "extremal.hpp"
#include "free_space.hpp"
#include "lip_core.hpp"
#include "metric_core.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace freelip {
namespace {

[[noreturn]] void bad_param(const std::string& what) { throw Error(ErrorCode::kInvalidParameter, what); }

long int_param(const Params& p, const std::string& key, long fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    std::size_t used = 0;
    long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    bad_param("parameter " + key + " must be an integer, got '" + it->second + "'");
  }
}

Rational rational_param(const Params& p, const std::string& key, const Rational& fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    return parse_rational(it->second);
  } catch (const Error&) {
    bad_param("parameter " + key + " must be a rational, got '" + it->second + "'");
  }
}

void allow_only(const Params& p, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& [k, v] : p) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) bad_param("unknown parameter '" + k + "' for " + where);
  }
}

Params parse_params(const std::string& text, std::size_t from) {
  Params out;
  std::stringstream in(text.substr(from));
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) bad_param("expected key=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

Json labels_of(const MetricSpace& s, std::initializer_list<PointId> pts) {
  Json out = Json::array();
  for (PointId p : pts) out.push_back(s.label(p));
  return out;
}

Json molecule_json(const MetricSpace& s, const Molecule& m) { return labels_of(s, {m.x, m.y}); }

// Per-space partial report, merged in input order.
struct Partial {
  std::size_t instances = 0;
  std::size_t skipped = 0;
  std::vector<Json> failures;
  Extremes extremes;
};

void fail(Partial& out, const MetricSpace& s, Json tuple, Json detail) {
  Json f;
  f["space"] = space_to_json(s);
  f["tuple"] = std::move(tuple);
  f["detail"] = std::move(detail);
  out.failures.push_back(std::move(f));
}

Json error_json(const Error& e) {
  Json out;
  out["error"] = error_name(e.code());
  out["code"] = static_cast<int>(e.code());
  out["message"] = e.what();
  return out;
}

LipFunction unit_distance(const SpacePtr& s, PointId p) {
  LipFunction f = LipFunction::distance_to(s, p);
  Rational n = lip_norm(f).norm;
  return f.scaled(1 / n);
}

// 1-Lipschitz bumps around up to five random centers with pairwise disjoint
// supports, each vanishing at the base.
std::vector<LipFunction> bump_family(const SpacePtr& s, Rng& rng) {
  std::vector<PointId> others;
  for (PointId p : s->points())
    if (p != s->base()) others.push_back(p);
  std::vector<PointId> centers;
  const std::size_t want = std::min<std::size_t>(others.size(), 1 + rng.below(5));
  while (centers.size() < want) {
    PointId c = others[rng.below(others.size())];
    if (std::find(centers.begin(), centers.end(), c) == centers.end()) centers.push_back(c);
  }
  std::vector<LipFunction> out;
  for (PointId c : centers) {
    Rational radius = s->d(c, s->base());
    for (PointId o : centers)
      if (o != c) radius = std::min(radius, s->d(c, o));
    radius /= 2;
    std::vector<Rational> v(s->size());
    for (PointId p : s->points()) v[p.index] = std::max(Rational(0), Rational(radius - s->d(p, c)));
    out.emplace_back(s, std::move(v));
  }
  return out;
}

Rational random_coefficient(Rng& rng) { return make_rational(rng.between(-12, 12), rng.between(1, 4)); }

SpacePtr relabel(const MetricSpace& s, const std::string& prefix) {
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> dist(s.size(), std::vector<Rational>(s.size()));
  for (PointId p : s.points()) {
    labels.push_back(prefix + s.label(p));
    for (PointId q : s.points()) dist[p.index][q.index] = s.d(p, q);
  }
  return MetricSpace::exact(std::move(labels), std::move(dist), prefix + s.label(s.base()));
}

void suite_lemma1_5(const SpacePtr& s, std::uint64_t, Partial& out) {
  const auto mols = all_molecules(*s);
  for (const Molecule& a : mols) {
    for (const Molecule& b : mols) {
      auto c = check_molecule_distance(s, a, b);
      ++out.instances;
      out.extremes.low("upper_slack", c.upper - c.distance);
      if (c.lower) out.extremes.low("lower_slack", c.distance - *c.lower);
      if (!c.upper_ok || !c.lower_ok) {
        Json d;
        d["distance"] = rational_to_json(c.distance);
        d["upper"] = rational_to_json(c.upper);
        d["lower"] = c.lower ? rational_to_json(*c.lower) : Json(nullptr);
        fail(out, *s, Json{{"m1", molecule_json(*s, a)}, {"m2", molecule_json(*s, b)}}, d);
      }
    }
  }
}

void suite_lemma1_7(const SpacePtr& s, std::uint64_t seed, Partial& out) {
  if (s->size() < 2) return;
  Rng rng(seed);
  for (int trial = 0; trial < 5; ++trial) {
    auto fs = bump_family(s, rng);
    std::vector<Rational> coeffs;
    for (std::size_t i = 0; i < fs.size(); ++i) coeffs.push_back(random_coefficient(rng));
    ++out.instances;
    auto rep = disjoint_support_combination(fs, coeffs);
    if (sgn(rep.bound) > 0) out.extremes.high("norm_over_bound", rep.norm / rep.bound);
    if (!rep.bound_holds) {
      Json coeff_json = Json::array();
      for (const auto& c : coeffs) coeff_json.push_back(rational_to_json(c));
      Json funcs = Json::array();
      for (const auto& f : fs) funcs.push_back(function_to_json(f)["values"]);
      fail(out, *s, Json{{"coeffs", coeff_json}, {"functions", funcs}},
           Json{{"norm", rational_to_json(rep.norm)}, {"bound", rational_to_json(rep.bound)}});
    }
  }
}

void suite_lemma2_1(const SpacePtr& s, std::uint64_t, Partial& out) {
  for (PointId p : s->points()) {
    for (PointId q : s->points()) {
      if (p == q) continue;
      LipFunction f = LipFunction::distance_to(s, q);
      for (PointId z : s->points()) {
        for (PointId w : s->points()) {
          std::vector<PointId> pts{p};
          for (PointId v : {z, w, q})
            if (v != pts.back()) pts.push_back(v);
          CurveSample curve = make_curve(*s, pts);
          Rational eps = curve.length - s->d(p, q);
          ++out.instances;
          auto rep = curve_attainment_check(f, p, q, curve, eps);
          out.extremes.low("min_slack", rep.min_slack);
          if (!rep.holds)
            fail(out, *s, Json{{"p", s->label(p)}, {"q", s->label(q)}, {"curve", labels_of(*s, {p, z, w, q})}},
                 Json{{"eps", rational_to_json(eps)}, {"min_slack", rational_to_json(rep.min_slack)}});
        }
      }
    }
  }
}

void suite_lemma3_4(const SpacePtr& s, std::uint64_t, Partial& out) {
  for (const auto& row : classify_all_molecules(s)) {
    if (!row.strongly_exposed) continue;
    if (!row.eps0) {
      ++out.skipped;
      continue;
    }
    ++out.instances;
    const Molecule& m = row.molecule;
    try {
      auto fn = build_exposing_functional(s, m.x, m.y, *row.eps0);
      auto modulus = exposure_modulus(s, m.x, m.y, fn.h, {Rational(1, 4)});
      Rational p = pairing(fn.h, m);
      out.extremes.low("modulus_at_1/4", modulus.front().delta);
      out.extremes.low("eps0", *row.eps0);
      if (fn.h_norm != 1 || p != 1 || sgn(modulus.front().delta) <= 0)
        fail(out, *s, Json{{"molecule", molecule_json(*s, m)}},
             Json{{"h_norm", rational_to_json(fn.h_norm)},
                  {"pairing", rational_to_json(p)},
                  {"modulus_at_1/4", rational_to_json(modulus.front().delta)}});
    } catch (const Error& e) {
      fail(out, *s, Json{{"molecule", molecule_json(*s, m)}}, error_json(e));
    }
  }
}

void suite_lemma3_5(const SpacePtr& s, std::uint64_t, Partial& out) {
  for (const Molecule& m : all_molecules(*s)) {
    auto witness = free_norm_dual(molecule_vector(s, m)).witness;
    ++out.instances;
    auto violations = check_pairing_lower_bounds(witness, m.x, m.y);
    for (const auto& v : violations) {
      fail(out, *s, Json{{"molecule", molecule_json(*s, m)}, {"z", s->label(v.z)}},
           Json{{"at_xz", v.at_xz},
                {"pairing", rational_to_json(v.pairing)},
                {"bound", rational_to_json(v.bound)},
                {"witness", function_to_json(witness)["values"]}});
    }
  }
}

void suite_lemma4_2(const SpacePtr& s, std::uint64_t seed, Partial& out) {
  Rng rng(seed);
  const PointId base = s->base();
  for (const Molecule& m : all_molecules(*s)) {
    if (m.x == base || m.y == base) continue;
    const Rational d = s->d(m.x, m.y);
    const Rational room = s->d(m.x, base) - d;
    if (sgn(room) <= 0) {
      ++out.skipped;
      continue;
    }
    std::vector<LipFunction> gs{unit_distance(s, m.y), unit_distance(s, base)};
    std::vector<PartialValue> partial{{base, 0}};
    std::vector<Rational> raw(s->size());
    std::vector<PointId> domain{base};
    for (PointId p : s->points()) {
      if (p == base) continue;
      raw[p.index] = random_coefficient(rng);
      partial.push_back({p, raw[p.index]});
      domain.push_back(p);
    }
    Rational L = lipschitz_constant(*s, raw, domain);
    if (sgn(L) > 0) gs.push_back(mcshane_extend(s, partial, L).scaled(1 / L));
    for (const Rational& r : {Rational(d + room / 2), Rational(d + room / 8)}) {
      for (const auto& g : gs) {
        ++out.instances;
        try {
          auto rep = sna_perturbation(g, m.x, m.y, r);
          bool small_ok = !(d / r < Rational(1, 9)) || rep.K - 1 < Rational(1, 4);
          out.extremes.high("K", rep.K);
          out.extremes.high("closeness_ratio", rep.sup_difference / rep.closeness_bound);
          if (!rep.holds() || !small_ok)
            fail(out, *s, Json{{"molecule", molecule_json(*s, m)}, {"r", rational_to_json(r)}, {"g", function_to_json(g)["values"]}},
                 Json{{"K", rational_to_json(rep.K)},
                      {"norm", rational_to_json(rep.norm)},
                      {"support_ok", rep.support_ok},
                      {"fixed_at_y", rep.fixed_at_y},
                      {"attains_at_xy", rep.attains_at_xy},
                      {"closeness_ok", rep.closeness_ok}});
        } catch (const Error& e) {
          fail(out, *s, Json{{"molecule", molecule_json(*s, m)}, {"r", rational_to_json(r)}}, error_json(e));
        }
      }
    }
  }
}

bool precondition_error(ErrorCode c) {
  return c == ErrorCode::kBallTooLarge || c == ErrorCode::kBaseInBall || c == ErrorCode::kInnerBallEmpty;
}

void suite_lemma5_4(const SpacePtr& s, std::uint64_t, Partial& out) {
  for (PointId x : s->points()) {
    if (x == s->base()) continue;
    // Nearest neighbour of x, lowest index on ties.
    std::optional<PointId> y;
    for (PointId p : s->points())
      if (p != x && (!y || s->d(x, p) < s->d(x, *y))) y = p;
    if (!y) continue;
    std::vector<LipFunction> fs{unit_distance(s, s->base()), unit_distance(s, *y)};
    for (long n : {8L, 27L, 64L}) {
      try {
        auto w = ssd2p_witness(fs, x, *y, n);
        ++out.instances;
        for (std::size_t i = 0; i < w.bounds.size(); ++i) {
          const auto& b = w.bounds[i];
          out.extremes.high("g_norm_minus_bound_n" + std::to_string(n), b.g_norm - b.g_bound);
          if (!(b.g_ok && b.sum_ok && b.lower_ok))
            fail(out, *s, Json{{"x", s->label(x)}, {"y", s->label(*y)}, {"n", n}, {"f", i == 0 ? "d(., base)" : "d(., y)"}},
                 Json{{"g_norm", rational_to_json(b.g_norm)},
                      {"g_bound", rational_to_json(b.g_bound)},
                      {"g_bound_reachable", rational_to_json(b.g_bound_reachable)},
                      {"plus_norm", rational_to_json(b.plus_norm)},
                      {"minus_norm", rational_to_json(b.minus_norm)},
                      {"sum_bound", rational_to_json(b.sum_bound)}});
        }
      } catch (const Error& e) {
        if (!precondition_error(e.code())) throw;
        ++out.skipped;
      }
    }
  }
}

void suite_l1sum(const SpacePtr& a, const SpacePtr& b, std::uint64_t seed, Partial& out) {
  auto sum = ell1_sum({relabel(*a, "a."), relabel(*b, "b.")});
  ++out.instances;
  Rational glue = l1_glue_constant(*sum.space, sum.parts);
  if (glue != 1) fail(out, *sum.space, Json{{"check", "glue_constant"}}, Json{{"constant", rational_to_json(glue)}});
  Rng rng(seed);
  for (int trial = 0; trial < 4; ++trial) {
    std::map<std::size_t, Rational> mu_c, nu_c;
    for (PointId p : sum.parts[0]) mu_c[p.index] = Rational(rng.between(-5, 5));
    for (PointId p : sum.parts[1]) nu_c[p.index] = Rational(rng.between(-5, 5));
    FreeVector mu(sum.space, mu_c), nu(sum.space, nu_c);
    ++out.instances;
    Rational total = free_norm_dual(mu + nu).norm;
    Rational parts = free_norm_dual(mu).norm + free_norm_dual(nu).norm;
    if (total != parts)
      fail(out, *sum.space, Json{{"mu", vector_to_json(mu)["coeffs"]}, {"nu", vector_to_json(nu)["coeffs"]}},
           Json{{"norm_sum", rational_to_json(total)}, {"sum_of_norms", rational_to_json(parts)}});
  }
}

void suite_alpha(const SpacePtr& s, std::uint64_t seed, Partial& out) {
  auto cert = property_alpha_certificate(s, AlphaFunctionals::kMargin, 16, seed);
  ++out.instances;
  out.extremes.high("rho", cert.rho);
  if (!cert.valid) {
    Json d{{"rho", rational_to_json(cert.rho)}, {"functionals_ok", cert.functionals_ok}, {"norming_ok", cert.norming_ok}};
    if (cert.rho_argmax) {
      const auto& [i, m] = *cert.rho_argmax;
      d["rho_at"] = Json{{"functional", molecule_json(*s, cert.molecules[i])}, {"molecule", molecule_json(*s, m)}};
    }
    fail(out, *s, Json{{"molecules", cert.molecules.size()}}, d);
  }
}

}  // namespace

void Extremes::update(const std::string& key, const Rational& value, bool is_max) {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(key, Entry{is_max, value});
  } else if (is_max ? value > it->second.value : value < it->second.value) {
    it->second.value = value;
  }
}

void Extremes::low(const std::string& key, const Rational& value) { update(key, value, false); }
void Extremes::high(const std::string& key, const Rational& value) { update(key, value, true); }

void Extremes::merge(const Extremes& other) {
  for (const auto& [k, e] : other.entries_) update(k, e.value, e.is_max);
}

Json Extremes::to_json() const {
  Json out = Json::object();
  for (const auto& [k, e] : entries_) out[(e.is_max ? "max_" : "min_") + k] = rational_to_json(e.value);
  return out;
}

Json SuiteReport::to_json() const {
  Json out;
  out["suite"] = suite;
  out["spaces"] = spaces;
  out["instances"] = instances;
  out["skipped"] = skipped;
  out["failures"] = failures;
  out["extremes"] = extremes.to_json();
  out["ok"] = ok();
  return out;
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"example_3_13", "example_3_17", "tripod",  "grid",
                                              "fat_cantor",   "uniform_gap",  "random", "snowflake"};
  return names;
}

SpacePtr generate_space(const std::string& family, const Params& p, std::uint64_t seed) {
  if (family == "example_3_13") {
    allow_only(p, {"N"}, family);
    return concave_sup_norm_family(static_cast<int>(int_param(p, "N", 10)));
  }
  if (family == "example_3_17") {
    allow_only(p, {"N"}, family);
    return tripod_ell1_sum(static_cast<int>(int_param(p, "N", 10))).space;
  }
  if (family == "tripod") {
    allow_only(p, {"n"}, family);
    return tripod(static_cast<int>(int_param(p, "n", 2)));
  }
  if (family == "grid") {
    allow_only(p, {"n"}, family);
    long n = int_param(p, "n", 11);
    if (n < 2) bad_param("grid needs n >= 2");
    return grid_interval(static_cast<std::size_t>(n));
  }
  if (family == "fat_cantor") {
    allow_only(p, {"k"}, family);
    return fat_cantor(static_cast<int>(int_param(p, "k", 2))).space;
  }
  if (family == "uniform_gap") {
    allow_only(p, {"n", "D", "seed"}, family);
    long n = int_param(p, "n", 8);
    if (n < 2) bad_param("uniform_gap needs n >= 2");
    return uniform_gap_space(static_cast<std::size_t>(n), rational_param(p, "D", Rational(9, 5)),
                             static_cast<std::uint64_t>(int_param(p, "seed", static_cast<long>(seed))));
  }
  if (family == "random") {
    allow_only(p, {"n", "dim", "side", "seed"}, family);
    long n = int_param(p, "n", 6), dim = int_param(p, "dim", 2), side = int_param(p, "side", 4);
    if (n < 1 || dim < 1 || side < 1) bad_param("random needs n, dim, side >= 1");
    return random_linf_space(static_cast<std::size_t>(n), static_cast<std::size_t>(dim),
                             static_cast<std::uint64_t>(side),
                             static_cast<std::uint64_t>(int_param(p, "seed", static_cast<long>(seed))));
  }
  if (family == "snowflake") {
    allow_only(p, {"n", "theta"}, family);
    long n = int_param(p, "n", 11);
    if (n < 2) bad_param("snowflake needs n >= 2");
    return snowflake(*grid_interval(static_cast<std::size_t>(n)), rational_param(p, "theta", Rational(1, 2)));
  }
  bad_param("unknown family '" + family + "'");
}

std::vector<SpacePtr> spaces_from_spec(const std::string& spec) {
  std::vector<SpacePtr> out;
  if (spec.rfind("random:", 0) == 0) {
    Params p = parse_params(spec, 7);
    allow_only(p, {"count", "maxn", "minn", "seed", "dim", "side"}, "random spaces");
    long count = int_param(p, "count", 10), maxn = int_param(p, "maxn", 8), minn = int_param(p, "minn", 3);
    long side = int_param(p, "side", 4);
    if (count < 0 || minn < 2 || maxn < minn || side < 1) bad_param("random spaces need count >= 0, 2 <= minn <= maxn");
    Rng rng(static_cast<std::uint64_t>(int_param(p, "seed", 0)));
    for (long i = 0; i < count; ++i) {
      auto n = static_cast<std::size_t>(minn + static_cast<long>(rng.below(static_cast<std::uint64_t>(maxn - minn + 1))));
      auto dim = static_cast<std::size_t>(p.count("dim") ? int_param(p, "dim", 2) : 1 + static_cast<long>(rng.below(3)));
      std::uint64_t cells = 1;
      for (std::size_t k = 0; k < dim; ++k) cells *= static_cast<std::uint64_t>(side + 1);
      while (cells < n) {
        ++dim;
        cells *= static_cast<std::uint64_t>(side + 1);
      }
      out.push_back(random_linf_space(n, dim, static_cast<std::uint64_t>(side), rng.next()));
    }
    return out;
  }
  if (spec.rfind("gap:", 0) == 0) {
    Params p = parse_params(spec, 4);
    allow_only(p, {"count", "n", "D", "seed"}, "gap spaces");
    long count = int_param(p, "count", 10), n = int_param(p, "n", 8);
    if (count < 0 || n < 2) bad_param("gap spaces need count >= 0 and n >= 2");
    Rational D = rational_param(p, "D", Rational(9, 5));
    Rng rng(static_cast<std::uint64_t>(int_param(p, "seed", 0)));
    for (long i = 0; i < count; ++i) out.push_back(uniform_gap_space(static_cast<std::size_t>(n), D, rng.next()));
    return out;
  }
  if (spec.rfind("family:", 0) == 0) {
    auto comma = spec.find(',', 7);
    std::string name = spec.substr(7, comma == std::string::npos ? std::string::npos : comma - 7);
    Params p = comma == std::string::npos ? Params{} : parse_params(spec, comma + 1);
    out.push_back(generate_space(name, p, 0));
    return out;
  }
  out.push_back(load_space(spec));
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma1_5", "lemma1_7", "lemma2_1", "lemma3_4", "lemma3_5",
                                              "lemma4_2", "lemma5_4", "l1sum",    "alpha"};
  return names;
}

std::string default_spaces(const std::string& suite) {
  if (suite == "lemma5_4") return "family:grid,n=101";
  if (suite == "lemma1_5") return "random:count=20,maxn=6,seed=1";
  return "random:count=50,maxn=8,seed=1";
}

SuiteReport run_suite(const std::string& suite, const std::vector<SpacePtr>& spaces, std::uint64_t seed,
                      std::size_t threads) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) bad_param("unknown suite '" + suite + "'");
  for (const auto& s : spaces) {
    if (!s->is_exact()) throw Error(ErrorCode::kFloatBackendUnsupported, "suites run on exact-backend spaces only");
  }
  std::vector<Partial> parts(spaces.size());
  parallel_for(spaces.size(), threads, [&](std::size_t i) {
    const SpacePtr& s = spaces[i];
    const std::uint64_t local = seed * 1000003ULL + i;
    Partial& out = parts[i];
    try {
      if (suite == "lemma1_5") suite_lemma1_5(s, local, out);
      else if (suite == "lemma1_7") suite_lemma1_7(s, local, out);
      else if (suite == "lemma2_1") suite_lemma2_1(s, local, out);
      else if (suite == "lemma3_4") suite_lemma3_4(s, local, out);
      else if (suite == "lemma3_5") suite_lemma3_5(s, local, out);
      else if (suite == "lemma4_2") suite_lemma4_2(s, local, out);
      else if (suite == "lemma5_4") suite_lemma5_4(s, local, out);
      else if (suite == "l1sum") suite_l1sum(s, spaces[(i + 1) % spaces.size()], local, out);
      else suite_alpha(s, local, out);
    } catch (const Error& e) {
      ++out.instances;
      fail(out, *s, Json{{"stage", suite}}, error_json(e));
    }
  });
  SuiteReport report;
  report.suite = suite;
  report.spaces = spaces.size();
  for (auto& p : parts) {
    report.instances += p.instances;
    report.skipped += p.skipped;
    for (auto& f : p.failures) report.failures.push_back(std::move(f));
    report.extremes.merge(p.extremes);
  }
  return report;
}

}  // namespace freelip
