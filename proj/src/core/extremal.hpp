#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "free_space.hpp"

namespace freelip {

// min over z outside {x, y} of (x,y)_z / min(d(x,z), d(y,z)). Empty on a
// two-point space, where no z exists and the constant is +infinity.
std::optional<Rational> gromov_exposure_constant(const MetricSpace& space, PointId x, PointId y);
std::optional<double> gromov_exposure_constant_approx(const MetricSpace& space, PointId x, PointId y);

struct MarginResult {
  Rational t_star;
  LipFunction exposing;  // norm 1, pairing with m equal to 1
  std::size_t pivots = 0;
};

// max t subject to <f, m> = 1, ||f||_L <= 1 and <f, m'> <= 1 - t for every
// molecule m' other than m and -m. A two-point space returns t = 1.
MarginResult margin_lp(SpacePtr space, const Molecule& m);

struct MoleculeClassification {
  Molecule molecule;
  std::optional<Rational> eps0;  // empty: +infinity on a two-point space
  Rational margin;
  bool trivial_segment = false;
  bool strongly_exposed = false;
  bool consistent = false;  // eps0 > 0, margin > 0 and trivial_segment agree
};

// Every ordered molecule, lexicographic, classified by the Gromov criterion,
// the margin program and the metric segment.
std::vector<MoleculeClassification> classify_all_molecules(SpacePtr space, std::size_t threads = 1);

// min of the exposure constant over A; empty when every member has the
// infinite sentinel.
std::optional<Rational> uniform_gromov_rotundity(const MetricSpace& space, const std::vector<Molecule>& A);
std::optional<double> uniform_gromov_rotundity_approx(const MetricSpace& space, const std::vector<Molecule>& A);

struct DiscretenessReport {
  Rational delta;  // min (d(x,u) + d(y,v)) / d(x,y) over distinct members
  std::array<Molecule, 2> argmin;
  Rational min_distance;  // min ||m1 - m2|| over distinct members
  bool lower_ok = false;  // min_distance >= min(1, delta / 2)
  bool upper_ok = false;  // min_distance <= 2 delta
};

DiscretenessReport molecule_set_uniform_discreteness(SpacePtr space, const std::vector<Molecule>& A);

struct ExposingFunctional {
  Rational eps1;
  std::vector<Rational> g_raw;  // before shifting to vanish at the base
  std::vector<Rational> f_raw;
  LipFunction g;
  LipFunction f;
  LipFunction h;
  Rational g_norm;
  Rational f_norm;
  Rational h_norm;
};

// g, f and h = (g + f) / 2 for the molecule m_{x,y}, using eps1 = 1/k with
// k = ceil(4 / eps0) + 2. Throws NotExposed when eps0 <= 0 and
// ConstructionAssertFailed when a norm or pairing check fails.
ExposingFunctional build_exposing_functional(SpacePtr space, PointId x, PointId y, const Rational& eps0);

struct ModulusEntry {
  Rational eps;
  Rational delta;  // 2 when no molecule lies at distance >= eps
};

// For each eps: 1 - max <h, m'> over molecules with ||m_{x,y} - m'|| >= eps.
std::vector<ModulusEntry> exposure_modulus(SpacePtr space, PointId x, PointId y, const LipFunction& h,
                                           const std::vector<Rational>& eps_grid);

enum class AlphaFunctionals { kMargin, kGromov };

struct AlphaCertificate {
  std::vector<Molecule> molecules;  // one orientation per unordered pair
  std::vector<LipFunction> functionals;
  std::vector<Rational> margins;
  Rational rho;
  std::optional<std::pair<std::size_t, Molecule>> rho_argmax;  // (index into molecules, m')
  bool functionals_ok = false;
  bool norming_ok = false;
  bool valid = false;  // rho < 1 and both flags
};

AlphaCertificate property_alpha_certificate(SpacePtr space, AlphaFunctionals kind = AlphaFunctionals::kMargin,
                                            std::size_t probes = 16, std::uint64_t seed = 0,
                                            std::size_t threads = 1);

struct ConcaveGap {
  Rational gap;
  std::array<PointId, 3> argmin;  // (x, y, z) with d(x,z) + d(z,y) - d(x,y) minimal
};

// Empty on spaces with fewer than three points.
std::optional<ConcaveGap> alpha_concave_gap(const MetricSpace& space);

struct PairInfimum {
  PointId x;
  PointId y;
  Rational infimum;  // min over z of (x,y)_z
};

struct QuasiAlphaReport {
  bool gap_ok = true;
  std::optional<Rational> eps;  // smallest positive infimum
  std::vector<PairInfimum> table;
};

QuasiAlphaReport quasi_alpha_condition(const MetricSpace& space);

struct VertexCensus {
  std::vector<Molecule> exposed_not_vertex;  // eps0 > 0 but margin 0; must stay empty
  std::vector<Molecule> vertex_not_trivial;  // margin > 0 with a nontrivial segment; experiment
};

VertexCensus vertex_census(const std::vector<MoleculeClassification>& table);

struct PairingBoundViolation {
  PointId z;
  bool at_xz;  // true: <f, m_{x,z}> bound; false: <f, m_{z,y}> bound
  Rational pairing;
  Rational bound;
};

// For f with ||f||_L = 1 and <f, m_{x,y}> = 1, checks for every z outside
// {x, y} that <f, m_{x,z}> >= 1 - 2 (x,y)_z / d(x,z) and
// <f, m_{z,y}> >= 1 - 2 (x,y)_z / d(y,z). Returns the violations.
std::vector<PairingBoundViolation> check_pairing_lower_bounds(const LipFunction& f, PointId x, PointId y);

}  // namespace freelip
