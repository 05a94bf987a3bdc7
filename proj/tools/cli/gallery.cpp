#include "cli/gallery.hpp"

#include <cmath>

#include "cli/family.hpp"
#include "skewfatou/errors.hpp"
#include "skewfatou/map_spec.hpp"

namespace skewfatou::cli {

using nlohmann::json;

namespace {

json map_json(const SkewProduct& sp) { return json::parse(to_map_spec(sp)); }

SkewProduct quadratic(Complex c_base, std::vector<Term> q) {
  return SkewProduct(2, Poly1({c_base, 0.0, 1.0}), FiberPoly(std::move(q)));
}

double real_param(const Params& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  const Complex v = parse_complex(it->second);
  if (v.imag() != 0.0) throw InvalidArgument("parameter " + key + " must be real");
  return v.real();
}

void reject_unknown(const Params& params, std::initializer_list<const char*> known, const std::string& name) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw InvalidArgument("example " + name + " has no parameter '" + key + "'");
  }
}

// p = (z^2 - R)^{on n}, q = w^(2^n) + ((z + sqrt R) / (2 sqrt R)) (h^n(w) - w^(2^n)),
// h(w) = (w - eps)^2 - 1 + eps
json sumi(const Params& params) {
  const double R = real_param(params, "R", 16.0);
  const double eps = real_param(params, "eps", 0.05);
  const double nr = real_param(params, "n", 2.0);
  if (!(R > 4.0)) throw InvalidArgument("sumi: R must exceed 4");
  if (nr != std::floor(nr) || nr < 1 || nr > 4) throw InvalidArgument("sumi: n must be an integer in 1..4");
  const int n = static_cast<int>(nr);
  const int d = 1 << n;

  const Poly1 pr({-R, 0.0, 1.0});
  const Poly1 h({eps * eps - 1.0 + eps, -2.0 * eps, 1.0});
  Poly1 p = pr, hn = h;
  for (int i = 1; i < n; ++i) {
    p = pr.compose(p);
    hn = h.compose(hn);
  }
  const double s = std::sqrt(R);
  std::vector<Term> terms{{0, d, 1.0}};
  const auto& t = hn.coeffs();
  for (int k = 0; k < d; ++k) {
    const Complex tk = t[static_cast<std::size_t>(k)];
    if (tk == Complex(0.0)) continue;
    terms.push_back({0, k, 0.5 * tk});
    terms.push_back({1, k, tk / (2.0 * s)});
  }
  json doc = map_json(SkewProduct(d, p, FiberPoly(std::move(terms))));
  doc["params"] = {{"R", R}, {"eps", eps}, {"n", n}};
  return doc;
}

}  // namespace

const std::vector<GalleryEntry>& gallery() {
  static const std::vector<GalleryEntry> entries{
      {"jonsson_9_6", "(z^2 - 6, w^2 + 3 - z): disconnected through both base and fiber escape, Axiom-A"},
      {"jonsson_9_7", "(z^2 - 2, w^2 + 2(2 - z)): J2 connected, skew product disconnected, not Axiom-A"},
      {"demarco_hruska", "(z^2, w^2 + a z): connected iff a is in the Mandelbrot set (parameter a)"},
      {"product_dendrite", "(z^2 - 6, w^2 + i): dendrite fibers over a Cantor base, not Axiom-A"},
      {"sumi", "Axiom-A map with Cantor base and connected fibers (parameters R, eps, n)"},
      {"product_squares", "(z^2, w^2): connected, Axiom-A"},
  };
  return entries;
}

json gallery_document(const std::string& name, const Params& params) {
  json doc;
  json expected;
  if (name == "jonsson_9_6") {
    reject_unknown(params, {}, name);
    doc = map_json(quadratic(-6.0, {{0, 2, 1.0}, {0, 0, 3.0}, {1, 0, -1.0}}));
    expected = {{"connectivity", "disconnected"},
                {"axiom_a", "plausibly-axiom-a"},
                {"witnesses", {"base-critical-escape", "fiber-critical-escape"}},
                {"classify_exit", 10},
                {"axiom_a_exit", 0}};
  } else if (name == "jonsson_9_7") {
    reject_unknown(params, {}, name);
    doc = map_json(quadratic(-2.0, {{0, 2, 1.0}, {0, 0, 4.0}, {1, 0, -2.0}}));
    expected = {{"connectivity", "disconnected"},
                {"axiom_a", "fails(1)"},
                {"j2_connected", true},
                {"skew_connected", false},
                {"classify_exit", 10},
                {"axiom_a_exit", 10}};
  } else if (name == "demarco_hruska") {
    reject_unknown(params, {"a"}, name);
    doc = {{"d", 2},
           {"p", {{0, 0}, {0, 0}, {1, 0}}},
           {"q", {{{"j", 0}, {"k", 2}, {"re", 1}, {"im", 0}},
                  {{"j", 1}, {"k", 0}, {"re", 1}, {"im", 0}, {"param", "a"}}}},
           {"params", {{"a", {0.0, 0.0}}}},
           {"grid", {{"center", {-0.5, 0.0}}, {"width", 4.0}, {"nx", 256}, {"ny", 192}}}};
    if (const auto it = params.find("a"); it != params.end()) {
      const Complex a = parse_complex(it->second);
      doc["params"]["a"] = {a.real(), a.imag()};
    }
    expected = {{"connectivity", "connected iff a is in the Mandelbrot set"}};
  } else if (name == "product_dendrite") {
    reject_unknown(params, {}, name);
    doc = map_json(quadratic(-6.0, {{0, 2, 1.0}, {0, 0, Complex(0.0, 1.0)}}));
    expected = {{"connectivity", "disconnected"},
                {"axiom_a", "fails(2)"},
                {"fibers", "connected dendrites"},
                {"classify_exit", 10},
                {"axiom_a_exit", 10}};
  } else if (name == "sumi") {
    reject_unknown(params, {"R", "eps", "n"}, name);
    doc = sumi(params);
    expected = {{"status", "expected at suitable parameters, not asserted"},
                {"axiom_a", "plausibly-axiom-a"},
                {"base", "Cantor set"},
                {"fibers", "connected"},
                {"infinity_map", "u^d + c u^(d-1) with c = t_(d-1) / (2 sqrt R)"}};
  } else if (name == "product_squares") {
    reject_unknown(params, {}, name);
    doc = map_json(quadratic(0.0, {{0, 2, 1.0}}));
    expected = {{"connectivity", "connected"},
                {"axiom_a", "plausibly-axiom-a"},
                {"classify_exit", 0},
                {"axiom_a_exit", 0}};
  } else {
    throw UnknownExample("'" + name + "'; run `skewfatou examples` for the list");
  }
  for (const auto& e : gallery()) {
    if (e.name == name) doc["description"] = e.description;
  }
  doc["name"] = name;
  doc["expected"] = expected;
  return doc;
}

}  // namespace skewfatou::cli
