#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace skewfatou::cli {

using Params = std::map<std::string, std::string>;

struct GalleryEntry {
  std::string name;
  std::string description;
};

const std::vector<GalleryEntry>& gallery();

/// Map document for a gallery entry, with "name", "description", "expected"
/// and "params" metadata next to d, p, q. Parametric entries take overrides
/// from `params` (demarco_hruska keeps its slot symbolic unless given).
/// Throws UnknownExample.
nlohmann::json gallery_document(const std::string& name, const Params& params = {});

}  // namespace skewfatou::cli
