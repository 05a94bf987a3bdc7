#include "cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/family.hpp"
#include "cli/gallery.hpp"
#include "cli/render.hpp"
#include "skewfatou/classify.hpp"
#include "skewfatou/current_link.hpp"
#include "skewfatou/errors.hpp"
#include "skewfatou/parallel.hpp"

namespace skewfatou::cli {

using nlohmann::json;

namespace {

constexpr int kUnset = -1;

// kUnset / NaN mean "use the command's default".
struct Flags {
  std::uint64_t seed = 1;
  int nmax = kUnset;
  double bailout = std::numeric_limits<double>::quiet_NaN();
  int samples = kUnset;
  unsigned threads = 0;
  std::string out;
  std::vector<std::string> params;
  double eps = 0.02;
  int depth = 6;
  std::string center;
  double width = std::numeric_limits<double>::quiet_NaN();
  int nx = kUnset;
  int ny = kUnset;
};

Params parse_params(const std::vector<std::string>& raw) {
  Params p;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidArgument("--param expects NAME=VALUE, got '" + item + "'");
    p[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return p;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
  return buf;
}

int nmax_or(const Flags& f, int fallback) { return f.nmax == kUnset ? fallback : f.nmax; }
double bailout_or(const Flags& f) { return std::isnan(f.bailout) ? kDefaultBailout : f.bailout; }
int samples_or(const Flags& f, int fallback) { return f.samples == kUnset ? fallback : f.samples; }

void validate(const Flags& f) {
  if (f.nmax != kUnset && f.nmax < 1) throw InvalidArgument("--nmax must be >= 1");
  if (!std::isnan(f.bailout) && !(f.bailout > 0.0)) throw InvalidArgument("--bailout must be positive");
  if (f.samples != kUnset && f.samples < 1) throw InvalidArgument("--samples must be >= 1");
  if (!(f.eps > 0.0)) throw InvalidArgument("--eps must be positive");
}

// Document to --out (atomically) or to the output stream.
void emit(const std::string& doc, const Flags& f, std::ostream& out, const std::string& summary) {
  if (f.out.empty()) {
    out << doc;
    if (doc.empty() || doc.back() != '\n') out << '\n';
  } else {
    write_atomic(f.out, doc.back() == '\n' ? doc : doc + "\n");
    out << summary << " -> " << f.out << '\n';
  }
}

SkewProduct load_map(const std::string& path, const Params& params) {
  return to_map(substitute(load_document(path, params), params));
}

int connectivity_exit(Connectivity c) {
  switch (c) {
    case Connectivity::Connected: return kExitOk;
    case Connectivity::Disconnected: return kExitNegative;
    case Connectivity::Undecided: return kExitUndecided;
  }
  return kExitError;
}

int cmd_classify(const std::string& path, const Flags& f, std::ostream& out) {
  const SkewProduct sp = load_map(path, parse_params(f.params));
  DichotomyConfig cfg;
  cfg.classify.seed = f.seed;
  cfg.classify.n_max = nmax_or(f, kDefaultNMax);
  cfg.classify.bailout = bailout_or(f);
  cfg.classify.n_base_samples = samples_or(f, 512);
  cfg.classify.threads = f.threads;
  cfg.axiom_a.seed = f.seed;
  cfg.axiom_a.eps = f.eps;
  cfg.axiom_a.threads = f.threads;
  cfg.link_depth = f.depth;
  cfg.link.seed = f.seed;
  cfg.link.threads = f.threads;
  const DichotomyReport r = fatou_dichotomy(sp, cfg);
  emit(to_report(r), f, out, std::string("connectivity: ") + to_string(r.connectivity.verdict));
  return connectivity_exit(r.connectivity.verdict);
}

int cmd_axiom_a(const std::string& path, const Flags& f, std::ostream& out) {
  const SkewProduct sp = load_map(path, parse_params(f.params));
  AxiomAConfig cfg;
  cfg.eps = f.eps;
  cfg.cloud_size = samples_or(f, cfg.cloud_size);
  cfg.seed = f.seed;
  cfg.threads = f.threads;
  const AxiomAReport r = axiom_a_check(sp, cfg);
  std::string summary = std::string("axiom-a: ") + to_string(r.verdict);
  for (std::size_t i = 0; i < r.failed_conditions.size(); ++i) {
    summary += (i == 0 ? " (" : ",") + std::to_string(r.failed_conditions[i]);
    if (i + 1 == r.failed_conditions.size()) summary += ")";
  }
  emit(to_report(r), f, out, summary);
  switch (r.verdict) {
    case AxiomAVerdict::PlausiblyAxiomA: return kExitOk;
    case AxiomAVerdict::Fails: return kExitNegative;
    case AxiomAVerdict::Undecided: return kExitUndecided;
  }
  return kExitError;
}

json link_refusal(const std::string& status, const std::string& reason, const std::optional<ConnectivityReport>& conn) {
  json doc = {{"status", status}, {"reason", reason}};
  if (conn) {
    const json full = json::parse(to_report(*conn));
    doc["fiber_check"] = full["checks"][2];
    json ws = json::array();
    for (const auto& w : full["witnesses"]) {
      if (w.value("kind", "") == "fiber-critical-escape" && ws.size() < 2) ws.push_back(w);
    }
    doc["witnesses"] = ws;
  }
  return doc;
}

int cmd_link(const std::string& path, const Flags& f, std::ostream& out) {
  const SkewProduct sp = load_map(path, parse_params(f.params));
  if (f.depth < 1) throw InvalidArgument("--depth must be >= 1");
  ClassifyConfig cc;
  cc.seed = f.seed;
  cc.n_max = nmax_or(f, kDefaultNMax);
  cc.bailout = bailout_or(f);
  cc.threads = f.threads;
  const ConnectivityReport conn = classify_connectivity(sp, cc);
  const CheckResult& fibers = conn.checks[2];

  if (fibers.outcome != Outcome::Pass) {
    std::string reason;
    if (fibers.outcome == Outcome::Fail) {
      reason = "a fiber critical orbit over J_p escapes, so some fibers over J_p are disconnected; "
               "the linking formula needs every fiber over J_p connected";
      for (const auto& w : fibers.witnesses) {
        if (!w.certified || w.base.empty()) continue;
        reason += " (witness at z = " + fmt(w.base.front().real()) + (w.base.front().imag() < 0 ? "" : "+") +
                  fmt(w.base.front().imag()) + "i)";
        break;
      }
    } else {
      reason = "fiber connectivity over J_p could not be confirmed within the iteration budget";
    }
    emit(link_refusal("hypothesis-unmet", reason, conn).dump(2), f, out, "link: hypothesis unmet");
    return kExitNegative;
  }

  MeasureOptions mo;
  mo.n = samples_or(f, 1 << 16);
  mo.seed = f.seed;
  mo.threads = f.threads;
  WitnessCycles cycles;
  try {
    cycles = witness_cycles(sp, f.depth, mo, true);
  } catch (const PieceNotSeparable& e) {
    emit(link_refusal("hypothesis-unmet", std::string("no separable Cantor piece of J_p: ") + e.what(), conn).dump(2), f,
         out, "link: hypothesis unmet");
    return kExitNegative;
  }
  try {
    const HomologyCertificate cert = homology_certificate(cycles.entries);
    emit(to_json(cert, cycles), f, out, "link: certificate issued at depth " + std::to_string(cert.depth));
    return kExitOk;
  } catch (const InsufficientDepth& e) {
    json doc = json::parse(to_json(HomologyCertificate{}, cycles));
    doc["status"] = "insufficient-depth";
    doc["reason"] = e.what();
    emit(doc.dump(2), f, out, "link: insufficient depth");
    return kExitUndecided;
  }
}

Viewport viewport(const Flags& f, Viewport base) {
  if (!f.center.empty()) base.center = parse_complex(f.center);
  if (!std::isnan(f.width)) base.width = f.width;
  if (f.nx != kUnset) base.nx = f.nx;
  if (f.ny != kUnset) base.ny = f.ny;
  base.validate();
  return base;
}

int cmd_render(const std::string& path, const std::string& what, const std::string& z, const Flags& f,
               std::ostream& out) {
  const SkewProduct sp = load_map(path, parse_params(f.params));
  RenderOptions opt;
  if (what == "base") {
    opt.what = RenderWhat::Base;
  } else if (what == "fiber") {
    opt.what = RenderWhat::Fiber;
  } else if (what == "infinity") {
    opt.what = RenderWhat::Infinity;
  } else if (what == "j2-slice") {
    opt.what = RenderWhat::J2Slice;
  } else {
    throw InvalidArgument("--what must be base, fiber, infinity or j2-slice");
  }
  opt.fiber_z = z.empty() ? Complex(0.0) : parse_complex(z);
  opt.view = viewport(f, Viewport{});
  opt.samples = samples_or(f, opt.samples);
  opt.seed = f.seed;
  opt.threads = f.threads;
  const PotentialEvaluator pot(sp, escape_params(sp, nmax_or(f, kDefaultNMax), bailout_or(f)));
  const Image img = render(pot, opt);
  Flags g = f;
  if (g.out.empty()) g.out = "render.ppm";
  write_atomic(g.out, img.ppm());
  out << "render: " << what << " " << img.nx << "x" << img.ny << " -> " << g.out << '\n';
  return kExitOk;
}

int cmd_sweep(const std::string& path, const std::string& name, const Flags& f, std::ostream& out) {
  const json doc = load_document(path);
  const Params params = parse_params(f.params);
  Viewport view;
  view.center = {-0.5, 0.0};
  view.width = 4.0;
  view.nx = 256;
  view.ny = 192;
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    try {
      if (g.contains("center")) view.center = {g["center"][0].get<double>(), g["center"][1].get<double>()};
      if (g.contains("width")) view.width = g["width"].get<double>();
      if (g.contains("nx")) view.nx = g["nx"].get<int>();
      if (g.contains("ny")) view.ny = g["ny"].get<int>();
    } catch (const json::exception& e) {
      throw MalformedSpec(std::string("grid: ") + e.what());
    }
  }
  view = viewport(f, view);

  ClassifyConfig cfg;
  cfg.seed = f.seed;
  cfg.n_max = nmax_or(f, 256);
  cfg.bailout = bailout_or(f);
  cfg.n_base_samples = samples_or(f, 32);
  cfg.max_period = 3;
  cfg.grid = 8;
  cfg.threads = 1;
  cfg.max_witnesses = 1;

  const SkewProduct first = to_map(substitute(doc, params, name, 0.0));
  int n_periodic = 0;
  const std::vector<BaseOrbit> orbits = base_test_orbits(first.base(), cfg, &n_periodic);

  const std::size_t npx = static_cast<std::size_t>(view.nx) * static_cast<std::size_t>(view.ny);
  std::vector<Connectivity> verdicts(npx, Connectivity::Undecided);
  std::vector<SkewProduct> maps;
  maps.reserve(npx);
  for (int y = 0; y < view.ny; ++y) {
    for (int x = 0; x < view.nx; ++x) maps.push_back(to_map(substitute(doc, params, name, view.pixel(x, y))));
  }
  for (const auto& m : maps) {
    if (!(m.base() == first.base())) throw MalformedSpec("the swept parameter may not enter p");
  }
  parallel_for(npx, f.threads, [&](std::size_t i) {
    verdicts[i] = classify_connectivity(maps[i], cfg, orbits, n_periodic).verdict;
  });

  Image img(view.nx, view.ny);
  std::string csv = "a_re,a_im,verdict\n";
  std::size_t counts[3] = {0, 0, 0};
  for (int y = 0; y < view.ny; ++y) {
    for (int x = 0; x < view.nx; ++x) {
      const Connectivity v = verdicts[static_cast<std::size_t>(y) * static_cast<std::size_t>(view.nx) +
                                      static_cast<std::size_t>(x)];
      const std::uint8_t c = v == Connectivity::Connected ? 0 : v == Connectivity::Disconnected ? 255 : 128;
      img.set(x, y, c, c, c);
      ++counts[static_cast<int>(v)];
      const Complex a = view.pixel(x, y);
      csv += fmt(a.real()) + "," + fmt(a.imag()) + "," + to_string(v) + "\n";
    }
  }
  std::filesystem::path img_path = f.out.empty() ? std::filesystem::path("sweep.ppm") : std::filesystem::path(f.out);
  std::filesystem::path csv_path = img_path;
  csv_path.replace_extension(".csv");
  if (csv_path == img_path) csv_path += ".csv";
  write_atomic(img_path.string(), img.ppm());
  write_atomic(csv_path.string(), csv);
  out << "sweep: " << view.nx << "x" << view.ny << " connected " << counts[0] << ", disconnected " << counts[1]
      << ", undecided " << counts[2] << " -> " << img_path.string() << ", " << csv_path.string() << '\n';
  return kExitOk;
}

int cmd_examples(const std::string& name, const Flags& f, std::ostream& out) {
  if (name.empty()) {
    for (const auto& e : gallery()) out << e.name << "  " << e.description << '\n';
    return kExitOk;
  }
  const json doc = gallery_document(name, parse_params(f.params));
  emit(doc.dump(2), f, out, "example " + name);
  return kExitOk;
}

void add_global_flags(CLI::App& app, Flags& f) {
  app.add_option("--seed", f.seed, "random seed (default 1)");
  app.add_option("--nmax", f.nmax, "iteration budget (default 1000, sweep 256)");
  app.add_option("--bailout", f.bailout, "escape bailout (default 1e8)");
  app.add_option("--samples", f.samples,
                 "sample count: classify base orbits (512), axiom-a cloud (4096), link pullbacks (65536), "
                 "j2-slice points (20000), sweep base orbits (32)");
  app.add_option("--threads", f.threads, "worker threads (default: hardware concurrency)");
  app.add_option("--out", f.out, "output file (default: stdout for documents, render.ppm, sweep.ppm)");
  app.add_option("--param", f.params, "template parameter NAME=VALUE, VALUE as re or re,im (repeatable)");
}

void add_view_flags(CLI::App& app, Flags& f) {
  app.add_option("--center", f.center, "viewport center re,im");
  app.add_option("--width", f.width, "viewport width");
  app.add_option("--nx", f.nx, "horizontal pixels");
  app.add_option("--ny", f.ny, "vertical pixels");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical dynamics of polynomial skew products f(z, w) = (p(z), q(z, w))", "skewfatou"};
  app.require_subcommand(1);
  Flags f;
  add_global_flags(app, f);

  std::string map_path, what = "base", fiber_z, sweep_param = "a", example;
  auto* classify = app.add_subcommand("classify", "connectivity dichotomy report (exit 0 connected, 10 disconnected, 20 undecided)");
  classify->add_option("map", map_path, "map-spec file or gallery:NAME")->required();
  classify->add_option("--eps", f.eps, "Axiom-A gap threshold");
  classify->add_option("--depth", f.depth, "linking depth for the base-case route");

  auto* axiom = app.add_subcommand("axiom-a", "postcritical gap test (exit 0 plausibly Axiom-A, 10 fails, 20 undecided)");
  axiom->add_option("map", map_path, "map-spec file or gallery:NAME")->required();
  axiom->add_option("--eps", f.eps, "gap threshold (default 0.02)");

  auto* link = app.add_subcommand("link", "linking certificate (exit 0 issued, 10 hypothesis unmet, 20 insufficient depth)");
  link->add_option("map", map_path, "map-spec file or gallery:NAME")->required();
  link->add_option("--depth", f.depth, "nesting depth (default 6)");

  auto* rend = app.add_subcommand("render", "potential-shaded PPM image");
  rend->add_option("map", map_path, "map-spec file or gallery:NAME")->required();
  rend->add_option("--what", what, "base, fiber, infinity or j2-slice");
  rend->add_option("--z", fiber_z, "base point re,im for fiber and j2-slice");
  add_view_flags(*rend, f);

  auto* sweep = app.add_subcommand("sweep", "connectivity verdicts over a parameter grid (PPM and CSV)");
  sweep->add_option("family", map_path, "family file with a symbolic parameter")->required();
  sweep->add_option("--sweep-param", sweep_param, "parameter to sweep (default a)");
  add_view_flags(*sweep, f);

  auto* examples = app.add_subcommand("examples", "list the gallery or print one example");
  examples->add_option("name", example, "example name");

  for (auto* sub : {classify, axiom, link, rend, sweep, examples}) sub->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    validate(f);
    if (classify->parsed()) return cmd_classify(map_path, f, out);
    if (axiom->parsed()) return cmd_axiom_a(map_path, f, out);
    if (link->parsed()) return cmd_link(map_path, f, out);
    if (rend->parsed()) return cmd_render(map_path, what, fiber_z, f, out);
    if (sweep->parsed()) return cmd_sweep(map_path, sweep_param, f, out);
    if (examples->parsed()) return cmd_examples(example, f, out);
  } catch (const std::exception& e) {
    err << "skewfatou: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace skewfatou::cli
