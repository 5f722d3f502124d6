#include "extremal.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "error.hpp"
#include "metric_core.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "simplex.hpp"

namespace freelip {
namespace {

void check_pair(const MetricSpace& space, PointId x, PointId y) { make_molecule(space, x, y); }

template <class T>
T distance(const MetricSpace& s, PointId p, PointId q);

template <>
Rational distance<Rational>(const MetricSpace& s, PointId p, PointId q) {
  return s.d(p, q);
}

template <>
double distance<double>(const MetricSpace& s, PointId p, PointId q) {
  return s.df(p, q);
}

template <class T>
std::optional<T> exposure_constant(const MetricSpace& s, PointId x, PointId y) {
  check_pair(s, x, y);
  std::optional<T> best;
  const T dxy = distance<T>(s, x, y);
  for (PointId z : s.points()) {
    if (z == x || z == y) continue;
    const T dxz = distance<T>(s, x, z);
    const T dyz = distance<T>(s, y, z);
    T ratio = (dxz + dyz - dxy) / 2 / std::min(dxz, dyz);
    if (!best || ratio < *best) best = ratio;
  }
  return best;
}

template <class T, class Constant>
std::optional<T> rotundity(const MetricSpace& s, const std::vector<Molecule>& A, Constant constant) {
  if (A.empty()) throw Error(ErrorCode::kEmptySet, "molecule set is empty");
  std::optional<T> best;
  for (const Molecule& m : A) {
    auto c = constant(s, m.x, m.y);
    if (c && (!best || *c < *best)) best = c;
  }
  return best;
}

bool positive_or_infinite(const std::optional<Rational>& v) { return !v || sgn(*v) > 0; }

}  // namespace

std::optional<Rational> gromov_exposure_constant(const MetricSpace& space, PointId x, PointId y) {
  return exposure_constant<Rational>(space, x, y);
}

std::optional<double> gromov_exposure_constant_approx(const MetricSpace& space, PointId x, PointId y) {
  return exposure_constant<double>(space, x, y);
}

MarginResult margin_lp(SpacePtr space, const Molecule& m) {
  const MetricSpace& s = *space;
  check_pair(s, m.x, m.y);
  const PointId o = s.base();
  if (s.size() == 2) {
    return MarginResult{Rational(1), LipFunction::distance_to(space, m.y), 0};
  }

  // Variables w_p = f(p) + d(p,0) for p != 0, then t. The shift keeps every
  // right-hand side nonnegative.
  std::vector<std::ptrdiff_t> var(s.size(), -1);
  std::size_t count = 0;
  for (PointId p : s.points()) {
    if (p != o) var[p.index] = static_cast<std::ptrdiff_t>(count++);
  }
  const std::size_t t_var = count;
  lp::Problem problem;
  problem.num_vars = count + 1;
  problem.objective.assign(count + 1, Rational(0));
  problem.objective[t_var] = 1;

  auto put = [&](lp::Constraint& c, PointId p, int sign) {
    if (var[p.index] >= 0) c.coeffs[static_cast<std::size_t>(var[p.index])] += sign;
  };
  auto shift = [&](PointId p) { return p == o ? Rational(0) : s.d(p, o); };

  auto& eq = problem.add(lp::Relation::kEqual, s.d(m.x, m.y) + shift(m.x) - shift(m.y));
  put(eq, m.x, 1);
  put(eq, m.y, -1);
  for (PointId u : s.points()) {
    for (PointId v : s.points()) {
      if (u == v) continue;
      if ((u == m.x && v == m.y) || (u == m.y && v == m.x)) continue;
      const Rational& duv = s.d(u, v);
      auto& c = problem.add(lp::Relation::kLessEqual, duv + shift(u) - shift(v));
      put(c, u, 1);
      put(c, v, -1);
      c.coeffs[t_var] = duv;
    }
  }

  lp::Solution sol = lp::solve(problem);
  if (sol.status != lp::Status::kOptimal)
    throw Error(ErrorCode::kLpInfeasible, "margin program has no optimum for " + s.label(m.x) + "," + s.label(m.y));
  std::vector<Rational> values(s.size());
  for (PointId p : s.points()) {
    if (p != o) values[p.index] = sol.x[static_cast<std::size_t>(var[p.index])] - s.d(p, o);
  }
  return MarginResult{sol.x[t_var], LipFunction(space, std::move(values)), sol.pivots};
}

std::vector<MoleculeClassification> classify_all_molecules(SpacePtr space, std::size_t threads) {
  const MetricSpace& s = *space;
  if (!s.is_exact()) throw Error(ErrorCode::kFloatBackendUnsupported, "classification needs an exact-backend space");
  const auto molecules = all_molecules(s);
  std::vector<MoleculeClassification> table(molecules.size());
  parallel_for(molecules.size(), threads, [&](std::size_t i) {
    const Molecule& m = molecules[i];
    MoleculeClassification& row = table[i];
    row.molecule = m;
    row.eps0 = gromov_exposure_constant(s, m.x, m.y);
    row.margin = margin_lp(space, m).t_star;
    row.trivial_segment = metric_segment(s, m.x, m.y).size() == 2;
    row.strongly_exposed = positive_or_infinite(row.eps0);
    const bool by_margin = sgn(row.margin) > 0;
    row.consistent = row.strongly_exposed == by_margin && by_margin == row.trivial_segment;
  });
  return table;
}

std::optional<Rational> uniform_gromov_rotundity(const MetricSpace& space, const std::vector<Molecule>& A) {
  return rotundity<Rational>(space, A, gromov_exposure_constant);
}

std::optional<double> uniform_gromov_rotundity_approx(const MetricSpace& space, const std::vector<Molecule>& A) {
  return rotundity<double>(space, A, gromov_exposure_constant_approx);
}

DiscretenessReport molecule_set_uniform_discreteness(SpacePtr space, const std::vector<Molecule>& A) {
  const MetricSpace& s = *space;
  std::set<Molecule> unique;
  for (const Molecule& m : A) {
    check_pair(s, m.x, m.y);
    unique.insert(m);
  }
  if (unique.size() < 2) throw Error(ErrorCode::kTooFew, "need at least two distinct molecules");
  const std::vector<Molecule> members(unique.begin(), unique.end());

  DiscretenessReport report;
  bool first = true;
  for (const Molecule& a : members) {
    for (const Molecule& b : members) {
      if (a == b) continue;
      Rational ratio = (s.d(a.x, b.x) + s.d(a.y, b.y)) / s.d(a.x, a.y);
      if (first || ratio < report.delta) {
        report.delta = ratio;
        report.argmin = {a, b};
        first = false;
      }
    }
  }
  first = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      Rational dist = molecule_distance(space, members[i], members[j]);
      if (first || dist < report.min_distance) {
        report.min_distance = dist;
        first = false;
      }
    }
  }
  report.lower_ok = report.min_distance >= std::min(Rational(1), Rational(report.delta / 2));
  report.upper_ok = report.min_distance <= 2 * report.delta;
  return report;
}

ExposingFunctional build_exposing_functional(SpacePtr space, PointId x, PointId y, const Rational& eps0) {
  const MetricSpace& s = *space;
  check_pair(s, x, y);
  if (sgn(eps0) <= 0) throw Error(ErrorCode::kNotExposed, "exposure constant must be positive");
  auto actual = gromov_exposure_constant(s, x, y);
  if (actual && eps0 > *actual)
    throw Error(ErrorCode::kInvalidArgument, "eps0 exceeds the exposure constant " + to_string(*actual));

  Rational ratio = 4 / eps0;
  mpz_class k = ratio.get_num() / ratio.get_den();
  if (k * ratio.get_den() != ratio.get_num()) k += 1;
  k += 2;
  ExposingFunctional out{Rational(1) / Rational(k), {}, {}, LipFunction::zero(space), LipFunction::zero(space),
                         LipFunction::zero(space), 0, 0, 0};
  const Rational& e1 = out.eps1;
  const Rational& dxy = s.d(x, y);
  const Rational half = dxy / 2;

  out.g_raw.resize(s.size());
  out.f_raw.resize(s.size());
  for (PointId z : s.points()) {
    const Rational& dzx = s.d(z, x);
    const Rational& dzy = s.d(z, y);
    Rational g = 0;
    if (dzy >= dzx && dzy + (1 - 2 * e1) * dzx >= dxy) {
      g = std::max(Rational(half - (1 - e1) * dzx), Rational(0));
    } else if (dzx >= dzy && dzx + (1 - 2 * e1) * dzy >= dxy) {
      g = -std::max(Rational(half - (1 - e1) * dzy), Rational(0));
    }
    out.g_raw[z.index] = g;
    out.f_raw[z.index] = half * (dzy - dzx) / (dzy + dzx);
  }

  auto rebased = [&](const std::vector<Rational>& raw) {
    std::vector<Rational> v(raw);
    const Rational at_base = raw[s.base().index];
    for (auto& value : v) value -= at_base;
    return LipFunction(space, std::move(v));
  };
  out.g = rebased(out.g_raw);
  out.f = rebased(out.f_raw);
  out.h = (out.g + out.f).scaled(Rational(1, 2));
  out.g_norm = lip_norm(out.g).norm;
  out.f_norm = lip_norm(out.f).norm;
  out.h_norm = lip_norm(out.h).norm;

  const Molecule m{x, y};
  std::string failed;
  if (out.g_norm > 1) failed += " ||g|| = " + to_string(out.g_norm);
  if (out.f_norm > 1) failed += " ||f|| = " + to_string(out.f_norm);
  if (out.h_norm != 1) failed += " ||h|| = " + to_string(out.h_norm);
  if (Rational p = pairing(out.h, m); p != 1) failed += " <h,m> = " + to_string(p);
  if (!failed.empty())
    throw Error(ErrorCode::kConstructionAssertFailed,
                "exposing functional for " + s.label(x) + "," + s.label(y) + ":" + failed);
  return out;
}

std::vector<ModulusEntry> exposure_modulus(SpacePtr space, PointId x, PointId y, const LipFunction& h,
                                           const std::vector<Rational>& eps_grid) {
  const MetricSpace& s = *space;
  check_pair(s, x, y);
  if (!h.space().same_as(s)) throw Error(ErrorCode::kSpaceMismatch, "functional lives on another space");
  const Molecule m{x, y};
  std::vector<std::pair<Rational, Rational>> others;  // (distance to m, pairing)
  for (const Molecule& other : all_molecules(s)) {
    if (other == m) continue;
    others.emplace_back(molecule_distance(space, m, other), pairing(h, other));
  }
  std::vector<ModulusEntry> table;
  for (const Rational& eps : eps_grid) {
    if (sgn(eps) <= 0) throw Error(ErrorCode::kInvalidArgument, "modulus needs eps > 0");
    std::optional<Rational> worst;
    for (const auto& [dist, value] : others) {
      if (dist >= eps && (!worst || value > *worst)) worst = value;
    }
    table.push_back({eps, worst ? Rational(1 - *worst) : Rational(2)});
  }
  return table;
}

AlphaCertificate property_alpha_certificate(SpacePtr space, AlphaFunctionals kind, std::size_t probes,
                                            std::uint64_t seed, std::size_t threads) {
  const MetricSpace& s = *space;
  const auto table = classify_all_molecules(space, threads);
  AlphaCertificate cert;
  std::vector<std::optional<Rational>> eps;
  for (const auto& row : table) {
    if (row.strongly_exposed && row.molecule.x < row.molecule.y) {
      cert.molecules.push_back(row.molecule);
      cert.margins.push_back(row.margin);
      eps.push_back(row.eps0);
    }
  }

  std::vector<std::optional<LipFunction>> functionals(cert.molecules.size());
  parallel_for(cert.molecules.size(), threads, [&](std::size_t i) {
    const Molecule& m = cert.molecules[i];
    if (kind == AlphaFunctionals::kMargin) {
      functionals[i] = margin_lp(space, m).exposing;
    } else {
      functionals[i] = build_exposing_functional(space, m.x, m.y, eps[i] ? *eps[i] : Rational(1)).h;
    }
  });
  for (auto& f : functionals) cert.functionals.push_back(std::move(*f));

  cert.functionals_ok = true;
  for (std::size_t i = 0; i < cert.molecules.size(); ++i) {
    const LipFunction& h = cert.functionals[i];
    if (lip_norm(h).norm != 1 || pairing(h, cert.molecules[i]) != 1) cert.functionals_ok = false;
  }

  const auto molecules = all_molecules(s);
  cert.rho = 0;
  for (std::size_t i = 0; i < cert.molecules.size(); ++i) {
    const Molecule& m = cert.molecules[i];
    for (const Molecule& other : molecules) {
      if (other == m || other == m.reversed()) continue;
      Rational value = abs(pairing(cert.functionals[i], other));
      if (!cert.rho_argmax || value > cert.rho) {
        cert.rho = value;
        cert.rho_argmax = std::make_pair(i, other);
      }
    }
  }

  // Every vertex of the ball must be +-m for some m in the set, and the set
  // must norm a sample of random functions.
  bool census_ok = true;
  for (const auto& row : table) {
    if (sgn(row.margin) > 0 && !row.strongly_exposed) census_ok = false;
  }
  bool probes_ok = true;
  Rng rng(seed);
  for (std::size_t k = 0; k < probes && probes_ok; ++k) {
    std::vector<Rational> values(s.size());
    for (PointId p : s.points()) {
      if (p != s.base()) values[p.index] = make_rational(rng.between(-12, 12), rng.between(1, 4));
    }
    LipFunction f(space, std::move(values));
    Rational best = 0;
    for (const Molecule& m : cert.molecules) best = std::max(best, Rational(abs(pairing(f, m))));
    if (best != lip_norm(f).norm) probes_ok = false;
  }
  cert.norming_ok = census_ok && probes_ok;
  cert.valid = cert.rho < 1 && cert.functionals_ok && cert.norming_ok;
  return cert;
}

std::optional<ConcaveGap> alpha_concave_gap(const MetricSpace& space) {
  if (space.size() < 3) return std::nullopt;
  std::optional<ConcaveGap> best;
  const auto pts = space.points();
  for (PointId x : pts) {
    for (PointId y : pts) {
      if (y <= x) continue;
      for (PointId z : pts) {
        if (z == x || z == y) continue;
        Rational gap = space.d(x, z) + space.d(z, y) - space.d(x, y);
        if (!best || gap < best->gap) best = ConcaveGap{gap, {x, y, z}};
      }
    }
  }
  return best;
}

QuasiAlphaReport quasi_alpha_condition(const MetricSpace& space) {
  if (space.size() < 3) throw Error(ErrorCode::kTooFew, "need at least three points");
  QuasiAlphaReport report;
  const auto pts = space.points();
  for (PointId x : pts) {
    for (PointId y : pts) {
      if (y <= x) continue;
      std::optional<Rational> inf;
      for (PointId z : pts) {
        if (z == x || z == y) continue;
        Rational g = gromov_product(space, x, y, z);
        if (!inf || g < *inf) inf = g;
      }
      if (sgn(*inf) > 0 && (!report.eps || *inf < *report.eps)) report.eps = *inf;
      report.table.push_back({x, y, *inf});
    }
  }
  return report;
}

VertexCensus vertex_census(const std::vector<MoleculeClassification>& table) {
  VertexCensus census;
  for (const auto& row : table) {
    const bool vertex = sgn(row.margin) > 0;
    if (row.strongly_exposed && !vertex) census.exposed_not_vertex.push_back(row.molecule);
    if (vertex && !row.trivial_segment) census.vertex_not_trivial.push_back(row.molecule);
  }
  return census;
}

std::vector<PairingBoundViolation> check_pairing_lower_bounds(const LipFunction& f, PointId x, PointId y) {
  const MetricSpace& s = f.space();
  check_pair(s, x, y);
  if (lip_norm(f).norm != 1 || pairing(f, Molecule{x, y}) != 1)
    throw Error(ErrorCode::kInvalidArgument, "function must have norm 1 and norm the molecule");
  std::vector<PairingBoundViolation> violations;
  for (PointId z : s.points()) {
    if (z == x || z == y) continue;
    const Rational g = gromov_product(s, x, y, z);
    Rational at_xz = pairing(f, Molecule{x, z});
    Rational bound_xz = 1 - 2 * g / s.d(x, z);
    if (at_xz < bound_xz) violations.push_back({z, true, at_xz, bound_xz});
    Rational at_zy = pairing(f, Molecule{z, y});
    Rational bound_zy = 1 - 2 * g / s.d(y, z);
    if (at_zy < bound_zy) violations.push_back({z, false, at_zy, bound_zy});
  }
  return violations;
}

}  // namespace freelip
