#pragma once

// File formats: presentation text files, module parameter JSON and
// representation export JSON.

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "qma/repmod.hpp"

namespace qma {

/// Parses the line-oriented presentation format:
///   algebra NAME
///   field cyclotomic m=M   |   field prime m=M p=P
///   generators A < B < C
///   rule B*A -> poly
/// with '#' comments. Throws BadPresentation (also for a rule whose rhs is
/// not in normal form), BadFormat, SyntaxError.
Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::string& path);

/// Contents of a module parameter file.
/// {"family", "m", "p"?, "params": {name: scalar}, "field"?: "cyclotomic"|"prime", "prime"?}
struct ModuleRecipe {
  Family family = Family::Custom;
  int m = 0;
  int p = 1;
  Backend backend = Backend::CyclotomicRational;
  std::optional<std::uint64_t> prime;
  std::map<std::string, std::string> params;  // scalar strings
};

/// Throws BadFormat.
ModuleRecipe module_recipe_from_json(const nlohmann::json& j);
nlohmann::json module_recipe_to_json(const ModuleRecipe& s);
const FieldContext& recipe_field(const ModuleRecipe& s);
Representation build_from_recipe(const ModuleRecipe& s);

/// {"algebra", "field": {"backend", "m", "prime"?}, "family", "p", "params",
///  "dim", "basis", "action": {gen: rows of scalar strings}, "metadata"}
nlohmann::json representation_to_json(const Representation& r);
/// Rebuilds the representation from its export; the algebra must be built in.
Representation representation_from_json(const nlohmann::json& j);

/// Reads a JSON file; throws BadFormat when unreadable or malformed.
nlohmann::json read_json_file(const std::string& path);

}  // namespace qma
