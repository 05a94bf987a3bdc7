#include "cli/family.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "skewfatou/errors.hpp"
#include "skewfatou/map_spec.hpp"

namespace skewfatou::cli {

using nlohmann::json;

namespace {

double parse_real(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse complex number '" + whole + "'");
  }
  if (used != s.size()) throw InvalidArgument("cannot parse complex number '" + whole + "'");
  return v;
}

Complex param_value(const json& doc, const Params& overrides, const std::string& name) {
  if (const auto it = overrides.find(name); it != overrides.end()) return parse_complex(it->second);
  if (doc.contains("params") && doc["params"].contains(name)) {
    const json& v = doc["params"][name];
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      return {v[0].get<double>(), v[1].get<double>()};
    }
    throw MalformedSpec("params." + name + " must be a number or [re, im]");
  }
  throw MalformedSpec("no value for parameter '" + name + "' (use --param " + name + "=...)");
}

json substitute_impl(const json& doc, const Params& overrides, const std::string* forced_name, Complex forced) {
  if (!doc.is_object() || !doc.contains("q") || !doc["q"].is_array()) return doc;
  for (const auto& [key, value] : overrides) {
    bool used = doc.contains("params") && doc["params"].contains(key);
    for (const auto& rec : doc["q"]) used = used || (rec.is_object() && rec.value("param", "") == key);
    if (!used) throw InvalidArgument("map has no parameter '" + key + "'");
  }
  json out = doc;
  std::map<std::pair<int, int>, Complex> merged;
  std::vector<std::pair<int, int>> order;
  for (const auto& rec : doc["q"]) {
    if (!rec.is_object() || !rec.contains("j") || !rec.contains("k") || !rec.contains("re") || !rec.contains("im") ||
        !rec["re"].is_number() || !rec["im"].is_number() || !rec["j"].is_number_integer() ||
        !rec["k"].is_number_integer()) {
      return doc;  // let parse_map report it
    }
    Complex c(rec["re"].get<double>(), rec["im"].get<double>());
    if (rec.contains("param")) {
      if (!rec["param"].is_string()) throw MalformedSpec("'param' must be a string");
      const std::string name = rec["param"].get<std::string>();
      c *= (forced_name && name == *forced_name) ? forced : param_value(doc, overrides, name);
    }
    const std::pair<int, int> key{rec["j"].get<int>(), rec["k"].get<int>()};
    if (!merged.count(key)) order.push_back(key);
    merged[key] += c;
  }
  json q = json::array();
  for (const auto& key : order) {
    const Complex c = merged[key];
    q.push_back({{"j", key.first}, {"k", key.second}, {"re", c.real() + 0.0}, {"im", c.imag() + 0.0}});
  }
  out["q"] = q;
  return out;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '(' && ch != ')') s += ch;
  }
  if (s.empty()) throw InvalidArgument("empty complex number");
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_real(s, text), 0.0};
  return {parse_real(s.substr(0, comma), text), parse_real(s.substr(comma + 1), text)};
}

json load_document(const std::string& path, const Params& params) {
  constexpr std::string_view prefix = "gallery:";
  if (path.rfind(prefix, 0) == 0) return gallery_document(path.substr(prefix.size()), params);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedSpec("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw MalformedSpec(path + ": " + e.what());
  }
}

json substitute(const json& doc, const Params& overrides) { return substitute_impl(doc, overrides, nullptr, 0.0); }

json substitute(const json& doc, const Params& overrides, const std::string& name, Complex value) {
  return substitute_impl(doc, overrides, &name, value);
}

SkewProduct to_map(const json& doc) { return parse_map(doc.dump()); }

}  // namespace skewfatou::cli
