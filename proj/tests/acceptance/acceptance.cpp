// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/family.hpp"
#include "cli/gallery.hpp"
#include "oracle.hpp"
#include "skewfatou/classify.hpp"
#include "skewfatou/current_link.hpp"
#include "skewfatou/potential.hpp"

using namespace skewfatou;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path g_out_dir;

struct Result {
  bool pass = true;
  std::string detail;
  // every byte the criterion produced, compared across runs by criterion 9
  std::string transcript;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& s) {
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Runs the CLI with --out <dir>/<file>; returns the exit code and the
// document it wrote.
struct CliRun {
  int code = -1;
  std::string doc;
};

CliRun run_cli(Result& o, std::vector<std::string> args, const std::string& file) {
  const fs::path out = g_out_dir / file;
  fs::remove(out);
  args.push_back("--out");
  args.push_back(out.string());
  std::ostringstream so, se;
  CliRun r;
  r.code = cli::run(args, so, se);
  r.doc = slurp(out);
  o.transcript += "$";
  for (const auto& a : args) o.transcript += " " + (a == out.string() ? file : a);
  o.transcript += "\nexit " + std::to_string(r.code) + "\n" + r.doc + "\n";
  if (!se.str().empty()) o.note("stderr: " + se.str());
  return r;
}

json parse_or_empty(const std::string& s) {
  try {
    return json::parse(s);
  } catch (const json::exception&) {
    return json::object();
  }
}

bool orbit_starts(const json& prefix, std::initializer_list<double> values, const char* coord = nullptr) {
  std::size_t i = 0;
  for (double v : values) {
    if (i >= prefix.size()) return false;
    const json& p = coord ? prefix[i][coord] : prefix[i];
    if (p[0].get<double>() != v || p[1].get<double>() != 0.0) return false;
    ++i;
  }
  return true;
}

bool gaps_at_least(const json& gaps, double eps) {
  if (gaps.size() != 4) return false;
  for (const auto& [name, g] : gaps.items()) {
    // null is a vacuous (+inf) gap
    if (!g["value"].is_null() && g["value"].get<double>() < eps) return false;
  }
  return true;
}

bool lists_condition(const json& report, int c) {
  return report.value("verdict", "").find(std::to_string(c)) != std::string::npos;
}

double gap_of_condition(const json& report, int c) {
  for (const auto& [name, g] : report["gaps"].items()) {
    if (g["condition"] == c) return g["value"].is_null() ? INFINITY : g["value"].get<double>();
  }
  return NAN;
}

Result criterion1() {
  Result o;
  const CliRun c = run_cli(o, {"classify", "gallery:jonsson_9_6"}, "c1_classify.json");
  o.require(c.code == 10, "classify exit " + std::to_string(c.code) + " != 10");
  const json rep = parse_or_empty(c.doc);
  bool base = false, fiber = false;
  for (const auto& w : rep.value("witnesses", json::array())) {
    if (!w.value("certified", false)) continue;
    if (w["kind"] == "base-critical-escape" && orbit_starts(w["orbit_prefix"], {0.0, -6.0, 30.0})) base = true;
    if (w["kind"] == "fiber-critical-escape" && w["location"][0][0] == -2.0 &&
        orbit_starts(w["orbit_prefix"], {0.0, 5.0, 30.0}, "w")) {
      fiber = true;
    }
  }
  o.require(base, "no base witness 0 -> -6 -> 30");
  o.require(fiber, "no fiber witness at z = -2 with 0 -> 5 -> 30");
  const CliRun a = run_cli(o, {"axiom-a", "gallery:jonsson_9_6"}, "c1_axiom_a.json");
  o.require(a.code == 0, "axiom-a exit " + std::to_string(a.code) + " != 0");
  const json ar = parse_or_empty(a.doc);
  o.require(gaps_at_least(ar["gaps"], 0.02), "a gap is below 0.02");
  o.note("classify exit " + std::to_string(c.code) + ", axiom-a exit " + std::to_string(a.code) + " " +
         ar.value("verdict", "?"));
  return o;
}

Result criterion2() {
  Result o;
  const CliRun a = run_cli(o, {"axiom-a", "gallery:jonsson_9_7"}, "c2_axiom_a.json");
  const json ar = parse_or_empty(a.doc);
  o.require(a.code == 10, "axiom-a exit " + std::to_string(a.code) + " != 10");
  o.require(lists_condition(ar, 1), "condition (1) not cited");
  const CliRun c = run_cli(o, {"classify", "gallery:jonsson_9_7"}, "c2_classify.json");
  const json rep = parse_or_empty(c.doc);
  bool fiber = false;
  for (const auto& w : rep.value("witnesses", json::array())) {
    if (w["kind"] != "fiber-critical-escape" || !w.value("certified", false)) continue;
    const json& pre = w["orbit_prefix"];
    if (w["location"][0][0] == -2.0 && orbit_starts(pre, {0.0, 8.0, 64.0}, "w") && pre[1]["z"][0] == 2.0) fiber = true;
  }
  o.require(fiber, "no fiber witness at z = -2 with 0 -> 8 -> 64 through z = 2");
  o.note("axiom-a " + ar.value("verdict", "?") + " gap(1) " + fmt("%.3g", gap_of_condition(ar, 1)));
  return o;
}

Result criterion3() {
  Result o;
  const CliRun c = run_cli(o, {"classify", "gallery:product_dendrite"}, "c3_classify.json");
  const json rep = parse_or_empty(c.doc);
  const json checks = rep.value("checks", json::array());
  o.require(checks.size() == 4, "missing checks");
  if (checks.size() == 4) {
    o.require(checks[0]["outcome"] == "fail", "base check did not fail");
    o.require(checks[2]["outcome"] == "pass", "fiber check over J_p did not pass");
    o.require(checks[2]["tested"].get<int>() >= 512, "fewer than 512 J_p samples");
    o.note("fiber check " + std::to_string(checks[2]["passed"].get<int>()) + "/" +
           std::to_string(checks[2]["tested"].get<int>()));
  }
  const CliRun a = run_cli(o, {"axiom-a", "gallery:product_dendrite"}, "c3_axiom_a.json");
  const json ar = parse_or_empty(a.doc);
  o.require(a.code == 10, "axiom-a exit " + std::to_string(a.code) + " != 10");
  o.require(lists_condition(ar, 2), "condition (2) not cited");
  const double g2 = gap_of_condition(ar, 2);
  o.require(g2 <= 0.01, "gap(2) " + fmt("%.3g", g2) + " > 0.01");
  o.note("gap(2) " + fmt("%.3g", g2));
  return o;
}

Result criterion4() {
  Result o;
  std::mt19937_64 rng(20240604);
  std::uniform_real_distribution<double> re(-2.5, 1.5), im(-1.5, 1.5);
  int decided = 0, agree = 0;
  for (int i = 0; i < 100; ++i) {
    const Complex a(re(rng), im(rng));
    const SkewProduct sp(2, Poly1({0.0, 0.0, 1.0}), FiberPoly({{0, 2, 1.0}, {1, 0, a}}));
    const Connectivity v = classify_connectivity(sp).verdict;
    o.transcript += fmt("%.17g", a.real()) + "," + fmt("%.17g", a.imag()) + "," + to_string(v) + "\n";
    if (v == Connectivity::Undecided) continue;
    ++decided;
    const bool ok = (v == Connectivity::Connected) == oracle::in_mandelbrot(a);
    agree += ok;
    if (!ok) o.note("mismatch at a = " + fmt("%.6g", a.real()) + fmt("%+.6gi", a.imag()));
  }
  o.require(agree == decided, "verdicts disagree with the oracle");
  o.require(decided >= 95, "decided fraction below 95%");
  o.note(std::to_string(agree) + "/" + std::to_string(decided) + " agree, " + std::to_string(decided) + "% decided");
  return o;
}

Result criterion5() {
  Result o;
  Region quarter = Region::polygon({0.0, 1.5, Complex(1.5, 1.5), Complex(0.0, 1.5)});
  MeasureOptions opt;
  opt.n = 4096;
  const MeasureEstimate m = harmonic_measure(Poly1({0.0, 0.0, 1.0}), quarter, opt);
  o.require(std::abs(m.value - 0.25) <= 0.01, "estimate " + fmt("%.4f", m.value));
  o.require(m.cross_check_delta <= 0.01, "cross-check delta " + fmt("%.4f", m.cross_check_delta));
  o.note("estimate " + fmt("%.4f", m.value) + ", flux " + fmt("%.4f", m.flux_value) + ", delta " +
         fmt("%.4f", m.cross_check_delta));
  o.transcript = fmt("%.17g", m.value) + " " + fmt("%.17g", m.flux_value) + "\n";
  return o;
}

Result criterion6() {
  Result o;
  const fs::path map = g_out_dir / "cantor_squares.map";
  std::ofstream(map) << R"({"d":2,"p":[[-6,0],[0,0],[1,0]],"q":[{"j":0,"k":2,"re":1,"im":0}]})";
  const auto t0 = std::chrono::steady_clock::now();
  const CliRun r = run_cli(o, {"link", map.string(), "--depth", "6", "--samples", "65536"}, "c6_link.json");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(r.code == 0, "link exit " + std::to_string(r.code) + " != 0");
  const json doc = parse_or_empty(r.doc);
  const json entries = doc.value("entries", json::array());
  o.require(entries.size() == 6, "expected 6 entries, got " + std::to_string(entries.size()));
  std::string lks;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const double lk = entries[k]["lk"].get<double>();
    lks += (k ? "," : "") + fmt("%.4f", lk);
    o.require(std::abs(lk - std::ldexp(1.0, -static_cast<int>(k + 1))) <= 0.01, "lk at depth " + std::to_string(k + 1));
    o.require(entries[k]["certified_nonzero"] == true, "depth " + std::to_string(k + 1) + " not certified");
  }
  o.require(doc.contains("certificate") && doc["certificate"]["depth"] == 6, "certificate depth != 6");
  o.require(secs <= 120.0, "runtime " + fmt("%.1f", secs) + " s");
  o.note("lk " + lks + ", " + fmt("%.1f", secs) + " s");
  return o;
}

Result criterion7() {
  Result o;
  double worst_max = 0.0, worst_hom = 0.0, worst_exact = 0.0;
  int escaping = 0;
  std::mt19937_64 rng(77);
  for (const char* name : {"jonsson_9_6", "jonsson_9_7", "product_dendrite", "product_squares", "sumi"}) {
    const SkewProduct sp = cli::to_map(cli::gallery_document(name));
    const PotentialEvaluator pot(sp);
    const double box = std::max(4.0, 1.2 * escape_radius(sp.base()));
    std::uniform_real_distribution<double> u(-box, box);
    for (int i = 0; i < 1000; ++i) {
      const Complex z(u(rng), u(rng)), w(u(rng), u(rng));
      const double g = pot.green_full(z, w).value;
      const double m = std::max(pot.green_base(z).value, pot.green_fiber(z, w).value);
      worst_max = std::max(worst_max, std::abs(g - m));
      const GreenValue gz = pot.green_base(z);
      if (gz.value > 0.0 && !gz.ambiguous) {
        ++escaping;
        worst_hom = std::max(worst_hom, std::abs(pot.green_base(sp.p(z)).value - sp.degree() * gz.value));
      }
    }
  }
  for (int d = 2; d <= 5; ++d) {
    const PotentialEvaluator pot(SkewProduct(d, Poly1::monomial(d), FiberPoly({{0, d, 1.0}})));
    std::uniform_real_distribution<double> r(0.0, 3.0), t(0.0, 6.283185307179586);
    for (int i = 0; i < 1000; ++i) {
      const double rad = std::exp(r(rng)) * (1.0 + 1e-6);
      const Complex z = std::polar(rad, t(rng));
      worst_exact = std::max(worst_exact, std::abs(pot.green_base(z).value - std::log(rad)));
    }
  }
  o.require(worst_max <= 1e-4, "max identity " + fmt("%.2e", worst_max));
  o.require(worst_hom <= 1e-6, "homogeneity " + fmt("%.2e", worst_hom));
  o.require(escaping > 0, "no escaping samples");
  o.require(worst_exact <= 1e-6, "z^d exactness " + fmt("%.2e", worst_exact));
  o.note("max identity " + fmt("%.1e", worst_max) + ", homogeneity " + fmt("%.1e", worst_hom) + " on " +
         std::to_string(escaping) + " points, exactness " + fmt("%.1e", worst_exact));
  o.transcript = fmt("%.17g", worst_max) + fmt(" %.17g", worst_hom) + fmt(" %.17g", worst_exact) + "\n";
  return o;
}

Result criterion8() {
  Result o;
  const Poly1 p({-6.0, 0.0, 1.0});
  MeasureOptions opt;
  opt.cross_check = false;
  auto mu = [&](const std::function<bool(Complex)>& in) { return harmonic_measure_of(p, in, opt); };
  const MeasureEstimate total = mu([](Complex) { return true; });
  o.require(total.value == 1.0, "total mass " + fmt("%.17g", total.value));

  const auto A = [](Complex z) { return z.real() < -1.0; };
  const auto B = [](Complex z) { return z.real() > 2.5; };
  const MeasureEstimate ma = mu(A), mb = mu(B), mab = mu([&](Complex z) { return A(z) || B(z); });
  const double add_err = std::abs(mab.value - ma.value - mb.value);
  const double add_tol = 3.0 * std::sqrt(ma.std_error * ma.std_error + mb.std_error * mb.std_error +
                                         mab.std_error * mab.std_error);
  o.require(add_err <= add_tol, "additivity " + fmt("%.4f", add_err));

  double worst_bal = 0.0;
  bool balanced = true;
  for (double t : {-2.0, 0.5, 2.4}) {
    const auto E = [t](Complex z) { return z.real() > t; };
    const MeasureEstimate me = mu(E), mpre = mu([&](Complex z) { return E(p(z)); });
    const double err = std::abs(me.value - mpre.value);
    worst_bal = std::max(worst_bal, err);
    balanced = balanced && err <= 3.0 * std::hypot(me.std_error, mpre.std_error);
    o.transcript += fmt("%.17g ", me.value) + fmt("%.17g\n", mpre.value);
  }
  o.require(balanced, "balancedness " + fmt("%.4f", worst_bal));
  o.note("mass " + fmt("%.17g", total.value) + ", additivity " + fmt("%.4f", add_err) + " (tol " +
         fmt("%.4f", add_tol) + "), balancedness " + fmt("%.4f", worst_bal));
  o.transcript += fmt("%.17g ", ma.value) + fmt("%.17g ", mb.value) + fmt("%.17g\n", mab.value);
  return o;
}

// The remaining CLI commands, exercised only for determinism.
Result extra_commands() {
  Result o;
  run_cli(o, {"render", "gallery:jonsson_9_6", "--what", "fiber", "--z=-2", "--width", "8", "--nx", "96", "--ny", "96"},
          "x_fiber.ppm");
  run_cli(o, {"render", "gallery:sumi", "--what", "infinity", "--nx", "64", "--ny", "64"}, "x_inf.ppm");
  run_cli(o, {"render", "gallery:jonsson_9_6", "--what", "j2-slice", "--z=-2", "--width", "8", "--nx", "64"},
          "x_slice.ppm");
  run_cli(o, {"sweep", "gallery:demarco_hruska", "--nx", "24", "--ny", "18"}, "x_sweep.ppm");
  o.transcript += slurp(g_out_dir / "x_sweep.csv");
  run_cli(o, {"examples", "sumi", "--param", "R=25"}, "x_sumi.map");
  run_cli(o, {"link", "gallery:jonsson_9_6"}, "x_link.json");
  run_cli(o, {"classify", "gallery:demarco_hruska", "--param", "a=1"}, "x_fa.json");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  g_out_dir = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "skewfatou_acceptance";
  fs::create_directories(g_out_dir);

  const std::vector<std::function<Result()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8};
  std::vector<std::string> first;
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Result o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    first.push_back(o.transcript);
    failed += !o.pass;
    std::printf("%s criterion %zu: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str(), secs);
    std::fflush(stdout);
  }

  // rerun everything with identical seeds and compare bytes
  Result det;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Result extra_a = extra_commands();
    const Result extra_b = extra_commands();
    det.require(extra_a.transcript == extra_b.transcript, "render/sweep/examples/link outputs differ");
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      const Result again = criteria[i]();
      det.require(again.transcript == first[i], "criterion " + std::to_string(i + 1) + " output differs");
    }
    std::size_t bytes = extra_a.transcript.size();
    for (const auto& t : first) bytes += t.size();
    if (det.pass) det.note(std::to_string(bytes) + " bytes identical across two runs");
  } catch (const std::exception& e) {
    det.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  failed += !det.pass;
  std::printf("%s criterion 9: %s (%.1f s)\n", det.pass ? "PASS" : "FAIL", det.detail.c_str(), secs);
  return failed;
}
