#pragma once

#include <string>

#include <json.hpp>

#include "cli/gallery.hpp"
#include "skewfatou/poly.hpp"

namespace skewfatou::cli {

/// Parses "1", "1.5,-2" or "(1.5,-2)" into a complex number. Throws
/// InvalidArgument.
Complex parse_complex(const std::string& text);

/// Reads a map or family document from a path; "gallery:NAME" loads a
/// built-in example built with `params`. Throws MalformedSpec on I/O or JSON
/// errors.
nlohmann::json load_document(const std::string& path, const Params& params = {});

/// Replaces every q record carrying "param": NAME by coeff * value, where the
/// value comes from `overrides` or the document's "params" defaults. Throws
/// MalformedSpec for a parameter without a value.
nlohmann::json substitute(const nlohmann::json& doc, const Params& overrides);

/// The same with one parameter forced to `value`.
nlohmann::json substitute(const nlohmann::json& doc, const Params& overrides, const std::string& name,
                          Complex value);

SkewProduct to_map(const nlohmann::json& doc);

}  // namespace skewfatou::cli
