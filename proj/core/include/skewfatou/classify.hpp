#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skewfatou/current_link.hpp"
#include "skewfatou/potential.hpp"
#include "skewfatou/sets.hpp"

namespace skewfatou {

enum class WitnessKind { BaseCriticalEscape, FiberCriticalEscape, InfinityCriticalEscape, GapPair };
const char* to_string(WitnessKind k);

/// Machine-checkable evidence. For escape witnesses `orbit` is the tracked
/// coordinate from the critical point to the first value above bailout; fiber
/// witnesses also carry the base points z_n driving each step. Gap pairs store
/// the two closest points in `location` and their distance in `distance`.
struct Witness {
  WitnessKind kind = WitnessKind::BaseCriticalEscape;
  std::vector<Complex> location;
  std::vector<Complex> orbit;
  std::vector<Complex> base;
  double distance = 0.0;
  bool certified = false;
};

/// Replays an escape witness step by step: every stored value must match the
/// map applied to its predecessor within tol (relative), and the last value
/// must exceed bailout.
bool replay_witness(const SkewProduct& sp, const Witness& w, double bailout, double tol = 1e-10);

enum class Outcome { Pass, Fail, Undecided };
const char* to_string(Outcome o);

struct CheckResult {
  std::string name;
  Outcome outcome = Outcome::Pass;
  int tested = 0;
  int passed = 0;
  int failed = 0;
  int undecided = 0;
  std::vector<Witness> witnesses;
};

struct ClassifyConfig {
  int n_base_samples = 512;
  int max_period = 6;
  /// grid x grid base points for the all-z check
  int grid = 16;
  std::uint64_t seed = 1;
  int n_max = kDefaultNMax;
  double bailout = kDefaultBailout;
  unsigned threads = 0;
  /// witnesses kept per check
  int max_witnesses = 16;
};

enum class Connectivity { Connected, Disconnected, Undecided };
const char* to_string(Connectivity c);

struct ConnectivityReport {
  Connectivity verdict = Connectivity::Undecided;
  /// base, infinity, fiber over J_p samples, fiber over the base grid
  std::array<CheckResult, 4> checks;
  std::vector<Witness> witnesses;
  ClassifyConfig config;
  int n_periodic_samples = 0;
};

CheckResult check_base_critical(const SkewProduct& sp, const EscapeParams& params, int max_witnesses = 16);
CheckResult check_infinity_critical(const SkewProduct& sp, const EscapeParams& params, int max_witnesses = 16);
/// Fiber critical orbits along base orbits lying in J_p: bounded for
/// params.n_max steps passes, escape past bailout fails with a witness.
CheckResult check_fiber_critical(const SkewProduct& sp, const std::vector<BaseOrbit>& z_samples,
                                 const EscapeParams& params, int max_witnesses = 16, unsigned threads = 0);
/// Fiber criterion at explicit base points using G_z = 0 membership.
CheckResult check_fiber_critical_grid(const SkewProduct& sp, const std::vector<Complex>& z_points,
                                      const EscapeParams& params, int max_witnesses = 16, unsigned threads = 0);

/// Base orbits tested by the J_p fiber check: periodic points of period
/// <= max_period, their non-periodic preimages, then n random J_p orbits.
std::vector<BaseOrbit> base_test_orbits(const Poly1& p, const ClassifyConfig& config, int* n_periodic = nullptr);

ConnectivityReport classify_connectivity(const SkewProduct& sp, const ClassifyConfig& config = {});
/// Same, reusing base orbits from base_test_orbits (shared across a family
/// with a common base polynomial).
ConnectivityReport classify_connectivity(const SkewProduct& sp, const ClassifyConfig& config,
                                         const std::vector<BaseOrbit>& orbits, int n_periodic);

struct AxiomAConfig {
  double eps = 0.02;
  int cloud_size = 4096;
  int n_fibers = 256;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  PostcriticalOptions postcritical;
  int cycle_budget = 20000;
};

struct GapEntry {
  std::string name;
  int condition = 0;
  /// +inf when one of the clouds is empty
  double value = 0.0;
  std::size_t n_postcritical = 0;
  std::size_t n_julia = 0;
  int escaping_orbits = 0;
  std::optional<Witness> pair;
  bool vacuous() const;
};

enum class AxiomAVerdict { PlausiblyAxiomA, Fails, Undecided };
const char* to_string(AxiomAVerdict v);

struct AxiomAReport {
  std::array<GapEntry, 4> gaps;
  double threshold = 0.02;
  AxiomAVerdict verdict = AxiomAVerdict::Undecided;
  std::vector<int> failed_conditions;
  std::vector<std::string> notes;
  AxiomAConfig config;
};

/// Heuristic gap test of the four postcritical disjointness conditions.
/// Throws InvalidArgument when eps <= 0.
AxiomAReport axiom_a_check(const SkewProduct& sp, const AxiomAConfig& config = {});

enum class Route { BallComponents, FiberWitness, BaseCase, Undecided };
const char* to_string(Route r);

struct DichotomyConfig {
  ClassifyConfig classify;
  AxiomAConfig axiom_a;
  int link_depth = 6;
  MeasureOptions link;
};

struct DichotomyReport {
  Route route = Route::Undecided;
  ConnectivityReport connectivity;
  AxiomAReport axiom_a;
  bool infinity_has_attracting_cycle = false;
  std::string conclusion;
  std::vector<std::string> caveats;
  std::optional<WitnessCycles> cycles;
  std::optional<HomologyCertificate> certificate;
};

DichotomyReport fatou_dichotomy(const SkewProduct& sp, const DichotomyConfig& config = {});

/// Report documents with keys verdict, checks, witnesses, sampling, gaps,
/// conclusion, citations.
std::string to_report(const ConnectivityReport& r);
std::string to_report(const AxiomAReport& r);
std::string to_report(const DichotomyReport& r);

}  // namespace skewfatou
