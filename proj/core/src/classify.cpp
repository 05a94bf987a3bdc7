#include "skewfatou/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "skewfatou/errors.hpp"
#include "skewfatou/parallel.hpp"
#include "skewfatou/roots.hpp"

namespace skewfatou {

const char* to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::BaseCriticalEscape:
      return "base-critical-escape";
    case WitnessKind::FiberCriticalEscape:
      return "fiber-critical-escape";
    case WitnessKind::InfinityCriticalEscape:
      return "infinity-critical-escape";
    case WitnessKind::GapPair:
      return "gap-pair";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::Fail:
      return "fail";
    case Outcome::Undecided:
      return "undecided";
  }
  return "?";
}

const char* to_string(Connectivity c) {
  switch (c) {
    case Connectivity::Connected:
      return "connected";
    case Connectivity::Disconnected:
      return "disconnected";
    case Connectivity::Undecided:
      return "undecided";
  }
  return "?";
}

const char* to_string(AxiomAVerdict v) {
  switch (v) {
    case AxiomAVerdict::PlausiblyAxiomA:
      return "plausibly-axiom-a";
    case AxiomAVerdict::Fails:
      return "fails";
    case AxiomAVerdict::Undecided:
      return "undecided";
  }
  return "?";
}

const char* to_string(Route r) {
  switch (r) {
    case Route::BallComponents:
      return "a";
    case Route::FiberWitness:
      return "b";
    case Route::BaseCase:
      return "c";
    case Route::Undecided:
      return "d";
  }
  return "?";
}

bool GapEntry::vacuous() const { return !std::isfinite(value); }

namespace {

bool close(Complex expected, Complex stored, double tol) {
  return std::abs(expected - stored) <= tol * (1.0 + std::abs(stored));
}

std::vector<Complex> distinct_roots(const Poly1& poly) {
  std::vector<Complex> out;
  if (poly.degree() < 1) return out;
  for (const auto& r : roots(poly)) {
    if (std::none_of(out.begin(), out.end(), [&](Complex o) { return std::abs(o - r) <= 1e-9 * (1.0 + std::abs(r)); })) {
      out.push_back(r + Complex(0.0, 0.0));  // no negative zeros in reports
    }
  }
  return out;
}

Membership track_1d(const Poly1& map, double radius, Complex x, const EscapeParams& params,
                    std::vector<Complex>& orbit) {
  bool left = false;
  orbit.assign(1, x);
  for (int n = 0;; ++n) {
    const double a = std::abs(x);
    if (a > params.bailout) return Membership::Outside;
    if (a > radius) left = true;
    if (n == params.n_max) break;
    x = map(x);
    orbit.push_back(x);
  }
  return left ? Membership::Undecided : Membership::Inside;
}

Membership track_fiber(const SkewProduct& sp, const BaseOrbit& orbit, Complex w, const EscapeParams& params,
                       std::vector<Complex>& zs, std::vector<Complex>& ws) {
  bool left = false;
  zs.assign(1, orbit.at(0));
  ws.assign(1, w);
  for (std::size_t n = 0;; ++n) {
    const double a = std::abs(w);
    if (a > params.bailout) return Membership::Outside;
    if (a > params.r_fiber) left = true;
    if (n == static_cast<std::size_t>(params.n_max) || n + 1 >= orbit.length()) break;
    w = sp.q(orbit.at(n), w);
    zs.push_back(orbit.at(n + 1));
    ws.push_back(w);
  }
  return left ? Membership::Undecided : Membership::Inside;
}

void tally(CheckResult& r, Membership m) {
  ++r.tested;
  switch (m) {
    case Membership::Inside:
      ++r.passed;
      break;
    case Membership::Outside:
      ++r.failed;
      break;
    case Membership::Undecided:
      ++r.undecided;
      break;
  }
}

void finish(CheckResult& r) {
  r.outcome = r.failed > 0 ? Outcome::Fail : r.undecided > 0 ? Outcome::Undecided : Outcome::Pass;
}

CheckResult check_1d(const Poly1& map, double radius, const EscapeParams& params, int max_witnesses,
                     WitnessKind kind, std::string name) {
  CheckResult r;
  r.name = std::move(name);
  std::vector<Complex> orbit;
  for (const auto& c : distinct_roots(map.derivative())) {
    const Membership m = track_1d(map, radius, c, params, orbit);
    tally(r, m);
    if (m == Membership::Outside && static_cast<int>(r.witnesses.size()) < max_witnesses) {
      Witness w;
      w.kind = kind;
      w.location = {c};
      w.orbit = orbit;
      w.certified = is_finite(orbit.back());
      r.witnesses.push_back(std::move(w));
    }
  }
  finish(r);
  return r;
}

}  // namespace

bool replay_witness(const SkewProduct& sp, const Witness& w, double bailout, double tol) {
  if (w.kind == WitnessKind::GapPair || w.orbit.empty()) return false;
  if (!(std::abs(w.orbit.back()) > bailout)) return false;
  if (w.kind == WitnessKind::FiberCriticalEscape) {
    if (w.base.size() != w.orbit.size()) return false;
    for (std::size_t n = 0; n + 1 < w.orbit.size(); ++n) {
      if (!close(sp.p(w.base[n]), w.base[n + 1], tol)) return false;
      if (!close(sp.q(w.base[n], w.orbit[n]), w.orbit[n + 1], tol)) return false;
    }
    return true;
  }
  const Poly1 map = w.kind == WitnessKind::BaseCriticalEscape ? sp.base() : infinity_map(sp);
  for (std::size_t n = 0; n + 1 < w.orbit.size(); ++n) {
    if (!close(map(w.orbit[n]), w.orbit[n + 1], tol)) return false;
  }
  return true;
}

CheckResult check_base_critical(const SkewProduct& sp, const EscapeParams& params, int max_witnesses) {
  return check_1d(sp.base(), params.r_base, params, max_witnesses, WitnessKind::BaseCriticalEscape,
                  "C_p in K_p");
}

CheckResult check_infinity_critical(const SkewProduct& sp, const EscapeParams& params, int max_witnesses) {
  const Poly1 f_pi = infinity_map(sp);
  return check_1d(f_pi, escape_radius(f_pi), params, max_witnesses, WitnessKind::InfinityCriticalEscape,
                  "C_Pi in K_Pi");
}

CheckResult check_fiber_critical(const SkewProduct& sp, const std::vector<BaseOrbit>& z_samples,
                                 const EscapeParams& params, int max_witnesses, unsigned threads) {
  const FiberPoly dq = vertical_derivative(sp);
  struct Item {
    std::vector<Membership> outcome;
    std::vector<Witness> witnesses;
  };
  std::vector<Item> items(z_samples.size());
  parallel_for(items.size(), threads, [&](std::size_t i) {
    const BaseOrbit& orbit = z_samples[i];
    std::vector<Complex> zs, ws;
    for (const auto& c : distinct_roots(dq.fiber(orbit.start()))) {
      const Membership m = track_fiber(sp, orbit, c, params, zs, ws);
      items[i].outcome.push_back(m);
      if (m == Membership::Outside) {
        Witness w;
        w.kind = WitnessKind::FiberCriticalEscape;
        w.location = {orbit.start(), c};
        w.orbit = ws;
        w.base = zs;
        w.certified = is_finite(ws.back());
        items[i].witnesses.push_back(std::move(w));
      }
    }
  });
  CheckResult r;
  r.name = "C_z in K_z over J_p samples";
  for (auto& item : items) {
    for (auto m : item.outcome) tally(r, m);
    for (auto& w : item.witnesses) {
      if (static_cast<int>(r.witnesses.size()) < max_witnesses) r.witnesses.push_back(std::move(w));
    }
  }
  finish(r);
  return r;
}

CheckResult check_fiber_critical_grid(const SkewProduct& sp, const std::vector<Complex>& z_points,
                                      const EscapeParams& params, int max_witnesses, unsigned threads) {
  const PotentialEvaluator pot(sp, params);
  const FiberPoly dq = vertical_derivative(sp);
  struct Item {
    std::vector<Membership> outcome;
    std::vector<Witness> witnesses;
  };
  std::vector<Item> items(z_points.size());
  parallel_for(items.size(), threads, [&](std::size_t i) {
    const Complex z0 = z_points[i];
    const bool base_bounded = pot.in_base(z0) == Membership::Inside;
    for (const auto& c : distinct_roots(dq.fiber(z0))) {
      const Membership m = pot.in_fiber(z0, c);
      items[i].outcome.push_back(m);
      if (m != Membership::Outside) continue;
      Witness w;
      w.kind = WitnessKind::FiberCriticalEscape;
      w.location = {z0, c};
      Complex z = z0, v = c;
      w.base = {z};
      w.orbit = {v};
      for (int n = 0; n < params.n_max && std::abs(v) <= params.bailout && is_finite(v) && is_finite(z); ++n) {
        v = sp.q(z, v);
        z = sp.p(z);
        w.base.push_back(z);
        w.orbit.push_back(v);
      }
      // over an escaping base point, escape of w alone does not show G_z > 0
      w.certified = base_bounded && is_finite(v) && std::abs(v) > params.bailout;
      items[i].witnesses.push_back(std::move(w));
    }
  });
  CheckResult r;
  r.name = "C_z in K_z over base grid";
  for (auto& item : items) {
    for (auto m : item.outcome) tally(r, m);
    for (auto& w : item.witnesses) {
      if (static_cast<int>(r.witnesses.size()) < max_witnesses) r.witnesses.push_back(std::move(w));
    }
  }
  finish(r);
  return r;
}

std::vector<BaseOrbit> base_test_orbits(const Poly1& p, const ClassifyConfig& config, int* n_periodic) {
  std::vector<BaseOrbit> orbits;
  for (const auto& cyc : periodic_cycles(p, config.max_period)) {
    const std::size_t k = cyc.points.size();
    for (std::size_t s = 0; s < k; ++s) {
      BaseOrbit periodic;
      for (std::size_t t = 0; t < k; ++t) periodic.cycle.push_back(cyc.points[(s + t) % k]);
      const Complex predecessor = periodic.cycle.back();
      orbits.push_back(periodic);
      // each periodic point is followed by its strictly preperiodic preimages
      for (const auto& y : preimages(p, periodic.cycle.front())) {
        if (std::abs(y - predecessor) <= 1e-8 * (1.0 + std::abs(y))) continue;
        BaseOrbit o;
        o.prefix = {y};
        o.cycle = periodic.cycle;
        orbits.push_back(std::move(o));
      }
    }
  }
  if (n_periodic) *n_periodic = static_cast<int>(orbits.size());
  auto random = sample_base_orbits(p, config.n_base_samples, config.n_max, kDefaultSampleDepth, config.seed,
                                   config.threads);
  orbits.insert(orbits.end(), std::make_move_iterator(random.begin()), std::make_move_iterator(random.end()));
  return orbits;
}

ConnectivityReport classify_connectivity(const SkewProduct& sp, const ClassifyConfig& config) {
  int n_periodic = 0;
  const auto orbits = base_test_orbits(sp.base(), config, &n_periodic);
  return classify_connectivity(sp, config, orbits, n_periodic);
}

ConnectivityReport classify_connectivity(const SkewProduct& sp, const ClassifyConfig& config,
                                         const std::vector<BaseOrbit>& orbits, int n_periodic) {
  if (config.grid < 1 || config.n_base_samples < 1) throw InvalidArgument("classify needs positive sample sizes");
  const EscapeParams params = escape_params(sp, config.n_max, config.bailout);
  ConnectivityReport report;
  report.config = config;
  report.n_periodic_samples = n_periodic;
  report.checks[0] = check_base_critical(sp, params, config.max_witnesses);
  report.checks[1] = check_infinity_critical(sp, params, config.max_witnesses);
  report.checks[2] = check_fiber_critical(sp, orbits, params, config.max_witnesses, config.threads);

  std::vector<Complex> grid;
  const double r = params.r_base;
  const double step = 2.0 * r / config.grid;
  for (int iy = 0; iy < config.grid; ++iy) {
    for (int ix = 0; ix < config.grid; ++ix) grid.emplace_back(-r + (ix + 0.5) * step, -r + (iy + 0.5) * step);
  }
  report.checks[3] = check_fiber_critical_grid(sp, grid, params, config.max_witnesses, config.threads);

  bool certified = false;
  bool all_pass = true;
  for (const auto& c : report.checks) {
    all_pass = all_pass && c.outcome == Outcome::Pass;
    for (const auto& w : c.witnesses) {
      certified = certified || w.certified;
      report.witnesses.push_back(w);
    }
  }
  report.verdict = certified ? Connectivity::Disconnected : all_pass ? Connectivity::Connected : Connectivity::Undecided;
  return report;
}

namespace {

std::vector<Complex> cloud_point(const PointCloud& c, std::size_t i) {
  if (c.is_product()) return {c.z()[i], c.w()[i]};
  return {c.points()[i]};
}

GapEntry make_gap(std::string name, int condition, const PointCloud& post, const PointCloud& julia) {
  GapEntry g;
  g.name = std::move(name);
  g.condition = condition;
  g.n_postcritical = post.size();
  g.n_julia = julia.size();
  g.escaping_orbits = post.meta().escaping_orbits;
  const ClosestPair pair = closest_pair(post, julia);
  g.value = pair.distance;
  if (std::isfinite(pair.distance)) {
    Witness w;
    w.kind = WitnessKind::GapPair;
    w.location = cloud_point(post, pair.first);
    for (const auto& x : cloud_point(julia, pair.second)) w.location.push_back(x);
    w.distance = pair.distance;
    g.pair = std::move(w);
  }
  return g;
}

}  // namespace

AxiomAReport axiom_a_check(const SkewProduct& sp, const AxiomAConfig& config) {
  if (!(config.eps > 0.0)) throw InvalidArgument("eps must be > 0");
  if (config.cloud_size < 1 || config.n_fibers < 1) throw InvalidArgument("cloud sizes must be positive");
  AxiomAReport report;
  report.config = config;
  report.threshold = config.eps;
  PostcriticalOptions post = config.postcritical;
  post.seed = config.seed;
  post.threads = config.threads;
  post.cycle_budget = config.cycle_budget;

  const auto base_search = find_attracting_cycles(sp.base(), config.cycle_budget);
  const auto inf_search = find_attracting_cycles(infinity_map(sp), config.cycle_budget);

  const auto j_p = sample_J_base(sp, config.cloud_size, kDefaultSampleDepth, config.seed, config.threads);
  report.gaps[0] = make_gap("D_p<->J_p", 1, postcritical_cloud(sp, Postcritical::D_p, post), j_p);

  const int per_fiber = std::max(1, config.cloud_size / config.n_fibers);
  const auto j2 = sample_J2(sp, config.n_fibers, per_fiber, config.seed + 1, config.threads);
  report.gaps[1] = make_gap("D_Jp<->J_2", 2, postcritical_cloud(sp, Postcritical::D_Jp, post), j2);

  int cycle_points = 0;
  for (const auto& c : base_search.cycles) cycle_points += c.period;
  const int per_cycle_fiber = std::max(16, config.cloud_size / std::max(1, cycle_points));
  const auto j_ap = sample_J_Ap(sp, base_search.cycles, per_cycle_fiber, config.seed + 2, config.threads);
  report.gaps[2] = make_gap("D_Ap<->J_Ap", 3, postcritical_cloud(sp, Postcritical::D_Ap, post), j_ap);

  const auto j_pi = sample_J_infinity(sp, config.cloud_size, kDefaultSampleDepth, config.seed + 3, config.threads);
  report.gaps[3] = make_gap("D_Pi<->J_Pi", 4, postcritical_cloud(sp, Postcritical::D_Pi, post), j_pi);

  for (auto& g : report.gaps) {
    if (g.value < config.eps) {
      report.failed_conditions.push_back(g.condition);
      if (g.pair) g.pair->certified = true;
    }
    if (g.vacuous()) report.notes.push_back(g.name + ": postcritical cloud empty, condition holds vacuously");
  }
  if (base_search.unresolved > 0) {
    report.notes.push_back(std::to_string(base_search.unresolved) +
                           " base critical orbit(s) stayed bounded without settling on a cycle");
  }
  if (inf_search.unresolved > 0) {
    report.notes.push_back(std::to_string(inf_search.unresolved) +
                           " critical orbit(s) at infinity stayed bounded without settling on a cycle");
  }
  if (!report.failed_conditions.empty()) {
    report.verdict = AxiomAVerdict::Fails;
  } else if (base_search.unresolved > 0 || inf_search.unresolved > 0) {
    report.verdict = AxiomAVerdict::Undecided;
  } else {
    report.verdict = AxiomAVerdict::PlausiblyAxiomA;
  }
  report.notes.push_back("heuristic: finite gap test on sampled clouds, not a proof of hyperbolicity");
  return report;
}

DichotomyReport fatou_dichotomy(const SkewProduct& sp, const DichotomyConfig& config) {
  DichotomyReport report;
  report.connectivity = classify_connectivity(sp, config.classify);
  report.axiom_a = axiom_a_check(sp, config.axiom_a);
  report.infinity_has_attracting_cycle = !attracting_cycles(infinity_map(sp), config.axiom_a.cycle_budget).empty();

  const auto& checks = report.connectivity.checks;
  bool fiber_witness = false;
  for (const auto& w : report.connectivity.witnesses) {
    fiber_witness = fiber_witness || (w.kind == WitnessKind::FiberCriticalEscape && w.certified);
  }
  const bool fibers_pass = checks[2].outcome == Outcome::Pass;
  const bool base_fails = checks[0].outcome == Outcome::Fail;

  if (report.connectivity.verdict == Connectivity::Connected &&
      report.axiom_a.verdict == AxiomAVerdict::PlausiblyAxiomA) {
    report.route = Route::BallComponents;
    report.conclusion = "all Fatou components are balls (connected and plausibly Axiom-A)";
  } else if (fiber_witness) {
    report.route = Route::FiberWitness;
    report.conclusion =
        "W^s([0:1:0]) has infinitely generated first homology: some J_z over J_p is disconnected "
        "(no Axiom-A hypothesis needed)";
  } else if (fibers_pass && base_fails) {
    if (!report.infinity_has_attracting_cycle) {
      report.route = Route::Undecided;
      report.conclusion =
          "undecided: fibers pass and J_p is disconnected, but f_Pi has no attracting cycle, so the "
          "basin-at-infinity argument does not apply";
    } else {
      report.route = Route::BaseCase;
      report.conclusion =
          "some attracting-basin component at infinity has infinitely generated first homology "
          "(fibers connected on samples, J_p disconnected)";
      report.caveats.push_back(
          "Without Axiom-A this conclusion can fail: for (z^2 - 6, w^2 + i) the basin of [0:1:0] is a ball "
          "and is the only Fatou component.");
      report.caveats.push_back("conditional on f_Pi having an attracting cycle (checked: present)");
      if (report.axiom_a.verdict != AxiomAVerdict::PlausiblyAxiomA) {
        report.caveats.push_back(std::string("Axiom-A gap test verdict is ") + to_string(report.axiom_a.verdict) +
                                 "; the conclusion is not established for this map");
      }
      try {
        report.cycles = witness_cycles(sp, config.link_depth, config.link, true);
        report.certificate = homology_certificate(report.cycles->entries);
      } catch (const Error& e) {
        report.caveats.push_back(std::string("witness cycles: ") + e.what());
      }
    }
  } else {
    report.route = Route::Undecided;
    report.conclusion = "undecided: the connectivity and Axiom-A tests do not select a case";
  }
  return report;
}

namespace {

using nlohmann::json;

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
json pt(Complex z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

json witness_json(const Witness& w) {
  json loc = json::array();
  for (const auto& x : w.location) loc.push_back(pt(x));
  json orbit = json::array();
  for (std::size_t n = 0; n < w.orbit.size(); ++n) {
    if (w.kind == WitnessKind::FiberCriticalEscape) {
      orbit.push_back({{"z", pt(w.base[n])}, {"w", pt(w.orbit[n])}});
    } else {
      orbit.push_back(pt(w.orbit[n]));
    }
  }
  json j = {{"kind", to_string(w.kind)}, {"location", loc}, {"orbit_prefix", orbit}, {"certified", w.certified}};
  if (w.kind == WitnessKind::GapPair) j["distance"] = num(w.distance);
  return j;
}

json checks_json(const ConnectivityReport& r) {
  json out = json::array();
  for (const auto& c : r.checks) {
    out.push_back({{"name", c.name},
                   {"outcome", to_string(c.outcome)},
                   {"tested", c.tested},
                   {"passed", c.passed},
                   {"failed", c.failed},
                   {"undecided", c.undecided}});
  }
  return out;
}

json classify_sampling(const ConnectivityReport& r) {
  return {{"n_base_samples", r.config.n_base_samples},
          {"n_periodic_samples", r.n_periodic_samples},
          {"max_period", r.config.max_period},
          {"grid", r.config.grid},
          {"seeds", {r.config.seed}},
          {"budgets", {{"n_max", r.config.n_max}, {"bailout", r.config.bailout}}}};
}

json gaps_json(const AxiomAReport& r) {
  json out = json::object();
  for (const auto& g : r.gaps) {
    json e = {{"condition", g.condition},
              {"value", num(g.value)},
              {"vacuous", g.vacuous()},
              {"n_postcritical", g.n_postcritical},
              {"n_julia", g.n_julia},
              {"escaping_orbits", g.escaping_orbits}};
    out[g.name] = e;
  }
  return out;
}

json axiom_sampling(const AxiomAReport& r) {
  const auto& c = r.config;
  return {{"cloud_size", c.cloud_size},
          {"n_fibers", c.n_fibers},
          {"threshold", r.threshold},
          {"seeds", {c.seed, c.seed + 1, c.seed + 2, c.seed + 3}},
          {"postcritical",
           {{"n_starts", c.postcritical.n_starts}, {"n_iter", c.postcritical.n_iter}, {"transient", c.postcritical.transient}}},
          {"budgets", {{"cycle_budget", c.cycle_budget}}},
          {"notes", r.notes}};
}

std::string axiom_verdict(const AxiomAReport& r) {
  std::string v = to_string(r.verdict);
  if (r.verdict == AxiomAVerdict::Fails) {
    v += "(";
    for (std::size_t i = 0; i < r.failed_conditions.size(); ++i) {
      if (i) v += ",";
      v += std::to_string(r.failed_conditions[i]);
    }
    v += ")";
  }
  return v;
}

json gap_witnesses(const AxiomAReport& r) {
  json out = json::array();
  for (const auto& g : r.gaps) {
    if (g.pair && g.pair->certified) out.push_back(witness_json(*g.pair));
  }
  return out;
}

const char* kConnectivityCitations[] = {
    "connectedness: J_p connected and J_z connected for every z in J_p",
    "connectivity criterion: f connected iff C_p in K_p and C_z in K_z",
};
const char* kAxiomACitations[] = {
    "Axiom-A characterization: D_p, D_Jp, D_Ap, D_Pi disjoint from J_p, J_2, J_Ap, J_Pi",
};
const char* kDichotomyCitations[] = {
    "Fatou dichotomy: for Axiom-A skew products every Fatou component is a ball or some component has "
    "infinitely generated first homology",
    "disconnected fiber over J_p implies infinitely generated first homology of W^s([0:1:0])",
    "linking numbers arbitrarily close to 0 in Q/Z imply infinitely generated first homology",
    "linking formula: lk = (d-1) <region, mu_p> mod 1 when every J_z is connected",
};

std::string connectivity_conclusion(const ConnectivityReport& r) {
  switch (r.verdict) {
    case Connectivity::Disconnected:
      return "disconnected: certified escape witness(es) present";
    case Connectivity::Connected:
      return "connected on samples: C_p in K_p, C_Pi in K_Pi and C_z in K_z passed on every sampled z; "
             "the set-level claim for all z in J_p is not certified by sampling";
    case Connectivity::Undecided:
      break;
  }
  return "undecided: some orbit neither escaped nor stayed inside its escape radius within budget";
}

}  // namespace

std::string to_report(const ConnectivityReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(witness_json(w));
  json doc = {{"verdict", to_string(r.verdict)},
              {"checks", checks_json(r)},
              {"witnesses", witnesses},
              {"sampling", classify_sampling(r)},
              {"gaps", json::object()},
              {"conclusion", connectivity_conclusion(r)},
              {"citations", kConnectivityCitations}};
  return doc.dump(2) + "\n";
}

std::string to_report(const AxiomAReport& r) {
  std::string conclusion;
  switch (r.verdict) {
    case AxiomAVerdict::PlausiblyAxiomA:
      conclusion = "all four postcritical gaps are at least the threshold";
      break;
    case AxiomAVerdict::Fails:
      conclusion = "postcritical set meets the Julia set sample for condition(s) listed in the verdict";
      break;
    case AxiomAVerdict::Undecided:
      conclusion = "gaps pass but some critical orbit was unresolved";
      break;
  }
  json doc = {{"verdict", axiom_verdict(r)},
              {"checks", json::array()},
              {"witnesses", gap_witnesses(r)},
              {"sampling", axiom_sampling(r)},
              {"gaps", gaps_json(r)},
              {"conclusion", conclusion},
              {"citations", kAxiomACitations}};
  return doc.dump(2) + "\n";
}

std::string to_report(const DichotomyReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.connectivity.witnesses) witnesses.push_back(witness_json(w));
  for (const auto& w : gap_witnesses(r.axiom_a)) witnesses.push_back(w);
  json sampling = {{"connectivity", classify_sampling(r.connectivity)}, {"axiom_a", axiom_sampling(r.axiom_a)}};
  if (r.cycles) {
    json lk = json::array();
    for (const auto& e : r.cycles->entries) {
      lk.push_back({{"lk", e.lk}, {"stderr", e.degree_factor * e.measure.std_error}, {"certified_nonzero", e.certified_nonzero}});
    }
    sampling["witness_cycles"] = {{"entries", lk}, {"certificate_depth", r.certificate ? r.certificate->depth : 0}};
  }
  json citations = json::array();
  for (const char* c : kConnectivityCitations) citations.push_back(c);
  for (const char* c : kAxiomACitations) citations.push_back(c);
  for (const char* c : kDichotomyCitations) citations.push_back(c);
  json doc = {{"verdict", std::string("route-") + to_string(r.route) + ": " + to_string(r.connectivity.verdict) + ", " +
                              axiom_verdict(r.axiom_a)},
              {"checks", checks_json(r.connectivity)},
              {"witnesses", witnesses},
              {"sampling", sampling},
              {"gaps", gaps_json(r.axiom_a)},
              {"conclusion", r.conclusion},
              {"citations", citations}};
  if (!r.caveats.empty()) doc["conclusion"] = r.conclusion + ". Caveats: " + [&] {
    std::string s;
    for (std::size_t i = 0; i < r.caveats.size(); ++i) s += (i ? " " : "") + r.caveats[i];
    return s;
  }();
  return doc.dump(2) + "\n";
}

}  // namespace skewfatou
