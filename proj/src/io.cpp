#include "qma/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "qma/builtins.hpp"
#include "qma/error.hpp"

namespace qma {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

long long parse_key_int(const std::string& tok, const std::string& key, std::size_t line) {
  const std::string prefix = key + "=";
  long long v = 0;
  if (tok.rfind(prefix, 0) == 0) {
    const char* b = tok.data() + prefix.size();
    const char* e = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec == std::errc() && ptr == e) return v;
  }
  throw Error(ErrorCode::BadPresentation, "line " + std::to_string(line) + ": expected " + prefix + "<int>");
}

[[noreturn]] void bad_format(const std::string& what) { throw Error(ErrorCode::BadFormat, what); }

}  // namespace

Presentation parse_presentation(std::string_view text) {
  std::string name = "custom";
  const FieldContext* field = nullptr;
  std::vector<std::string> gens;
  std::vector<std::pair<std::size_t, std::string>> rule_lines;

  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto sp = line.find_first_of(" \t");
    const std::string key = line.substr(0, sp);
    const std::string rest = sp == std::string::npos ? std::string() : trim(line.substr(sp));
    if (key == "algebra") {
      if (rest.empty()) throw Error(ErrorCode::BadPresentation, "line " + std::to_string(lineno) + ": missing name");
      name = rest;
    } else if (key == "field") {
      const auto toks = split_ws(rest);
      if (toks.size() == 2 && toks[0] == "cyclotomic") {
        field = &make_field(Backend::CyclotomicRational, static_cast<int>(parse_key_int(toks[1], "m", lineno)));
      } else if (toks.size() == 3 && toks[0] == "prime") {
        const auto m = parse_key_int(toks[1], "m", lineno);
        const auto p = parse_key_int(toks[2], "p", lineno);
        if (p <= 0) throw Error(ErrorCode::BadPrime, "prime must be positive");
        field = &make_field(Backend::PrimeField, static_cast<int>(m), static_cast<std::uint64_t>(p));
      } else {
        throw Error(ErrorCode::BadPresentation, "line " + std::to_string(lineno) + ": bad field line");
      }
    } else if (key == "generators") {
      std::string cur;
      for (char c : rest + "<") {
        if (c == '<') {
          const std::string g = trim(cur);
          if (g.empty()) throw Error(ErrorCode::BadPresentation, "line " + std::to_string(lineno) + ": empty generator");
          gens.push_back(g);
          cur.clear();
        } else {
          cur += c;
        }
      }
    } else if (key == "rule") {
      rule_lines.emplace_back(lineno, rest);
    } else {
      throw Error(ErrorCode::BadPresentation, "line " + std::to_string(lineno) + ": unknown directive '" + key + "'");
    }
  }
  if (field == nullptr) throw Error(ErrorCode::BadPresentation, "missing field line");
  if (gens.empty()) throw Error(ErrorCode::BadPresentation, "missing generators line");

  const Presentation bare(name, *field, gens, {});
  std::vector<RewriteRule> rules;
  for (const auto& [ln, text] : rule_lines) {
    const auto arrow = text.find("->");
    if (arrow == std::string::npos) throw Error(ErrorCode::BadPresentation, "line " + std::to_string(ln) + ": rule needs '->'");
    const NCPoly lhs = parse_poly_raw(text.substr(0, arrow), bare);
    if (lhs.terms().size() != 1 || !lhs.terms().begin()->second.is_one())
      throw Error(ErrorCode::BadPresentation, "line " + std::to_string(ln) + ": rule lhs must be a single word");
    rules.push_back({lhs.terms().begin()->first, parse_poly_raw(text.substr(arrow + 2), bare), std::nullopt});
  }
  Presentation p(name, *field, gens, std::move(rules));
  if (!p.non_normal_rules().empty())
    throw Error(ErrorCode::BadPresentation,
                "rule rhs not in normal form: " + p.format_rule(p.rules()[p.non_normal_rules().front()]));
  return p;
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadFormat, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

// ---------------------------------------------------------------------------

ModuleRecipe module_recipe_from_json(const json& j) {
  try {
    if (!j.is_object()) bad_format("module parameters must be a JSON object");
    ModuleRecipe s;
    s.family = parse_family(j.at("family").get<std::string>());
    if (s.family == Family::Custom) bad_format("family 'custom' has no parameters");
    s.m = j.at("m").get<int>();
    if (j.contains("p")) s.p = j.at("p").get<int>();
    if (j.contains("field")) {
      const auto fb = j.at("field").get<std::string>();
      if (fb == "prime") s.backend = Backend::PrimeField;
      else if (fb != "cyclotomic") bad_format("field must be 'cyclotomic' or 'prime'");
    }
    if (j.contains("prime")) s.prime = j.at("prime").get<std::uint64_t>();
    if (s.backend == Backend::PrimeField && !s.prime) bad_format("prime field needs a 'prime' key");
    if (j.contains("params")) {
      for (const auto& [k, v] : j.at("params").items()) {
        if (v.is_string()) s.params[k] = v.get<std::string>();
        else if (v.is_number_integer()) s.params[k] = std::to_string(v.get<long long>());
        else bad_format("parameter '" + k + "' must be a scalar string");
      }
    }
    return s;
  } catch (const json::exception& e) {
    bad_format(std::string("module parameters: ") + e.what());
  }
}

json module_recipe_to_json(const ModuleRecipe& s) {
  json j;
  j["family"] = family_name(s.family);
  j["m"] = s.m;
  j["p"] = s.p;
  j["field"] = s.backend == Backend::PrimeField ? "prime" : "cyclotomic";
  if (s.prime) j["prime"] = *s.prime;
  j["params"] = json::object();
  for (const auto& [k, v] : s.params) j["params"][k] = v;
  return j;
}

const FieldContext& recipe_field(const ModuleRecipe& s) {
  return s.backend == Backend::PrimeField ? make_field(Backend::PrimeField, s.m, s.prime)
                                          : make_field(Backend::CyclotomicRational, s.m);
}

Representation build_from_recipe(const ModuleRecipe& s) {
  const FieldContext& f = recipe_field(s);
  ParamList ps;
  for (const auto& [k, v] : s.params) ps.emplace_back(k, parse_scalar(v, f));
  return build_module(s.family, f, ps, s.p);
}

// ---------------------------------------------------------------------------

json representation_to_json(const Representation& r) {
  const FieldContext& f = r.field();
  json j;
  j["algebra"] = r.presentation->name();
  j["field"] = {{"backend", f.backend() == Backend::PrimeField ? "prime" : "cyclotomic"}, {"m", f.m()}};
  if (f.backend() == Backend::PrimeField) j["field"]["prime"] = f.prime();
  j["family"] = family_name(r.family);
  j["p"] = r.p;
  j["params"] = json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v.to_string();
  j["dim"] = r.dim;
  j["basis"] = r.basis;
  j["action"] = json::object();
  for (std::size_t g = 0; g < r.action.size(); ++g) {
    json rows = json::array();
    for (std::size_t i = 0; i < r.dim; ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < r.dim; ++k) row.push_back(r.action[g](i, k).to_string());
      rows.push_back(std::move(row));
    }
    j["action"][r.presentation->generator_name(static_cast<GenIndex>(g))] = std::move(rows);
  }
  j["metadata"] = r.metadata;
  return j;
}

Representation representation_from_json(const json& j) {
  try {
    const auto& fj = j.at("field");
    const int m = fj.at("m").get<int>();
    const auto backend = fj.at("backend").get<std::string>();
    if (backend != "prime" && backend != "cyclotomic") bad_format("unknown field backend '" + backend + "'");
    const FieldContext& f = backend == "prime"
                                ? make_field(Backend::PrimeField, m, fj.at("prime").get<std::uint64_t>())
                                : make_field(Backend::CyclotomicRational, m);
    const auto alg = j.at("algebra").get<std::string>();
    Representation r;
    if (alg == "dd2") r.presentation = shared_dd2(f);
    else if (alg == "rea2") r.presentation = shared_rea2(f);
    else r.presentation = std::make_shared<const Presentation>(builtin_presentation(alg, f));
    r.dim = j.at("dim").get<std::size_t>();
    r.family = j.contains("family") ? parse_family(j.at("family").get<std::string>()) : Family::Custom;
    r.p = j.value("p", 0);
    if (j.contains("params"))
      for (const auto& [k, v] : j.at("params").items()) r.params.emplace_back(k, parse_scalar(v.get<std::string>(), f));
    r.basis = j.contains("basis") ? j.at("basis").get<std::vector<std::string>>() : std::vector<std::string>(r.dim);
    if (r.basis.size() != r.dim) bad_format("basis label count does not match dim");
    if (j.contains("metadata")) r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    const auto& act = j.at("action");
    for (const auto& g : r.presentation->generators()) {
      const auto& rows = act.at(g);
      if (rows.size() != r.dim) bad_format("matrix for " + g + " has the wrong number of rows");
      Matrix a(r.dim, r.dim, f);
      for (std::size_t i = 0; i < r.dim; ++i) {
        if (rows[i].size() != r.dim) bad_format("matrix for " + g + " has a row of the wrong length");
        for (std::size_t k = 0; k < r.dim; ++k) a(i, k) = parse_scalar(rows[i][k].get<std::string>(), f);
      }
      r.action.push_back(std::move(a));
    }
    return r;
  } catch (const json::exception& e) {
    bad_format(std::string("representation: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_format("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad_format(path + ": " + e.what());
  }
}

}  // namespace qma
