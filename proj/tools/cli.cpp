#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "qma/analysis.hpp"
#include "qma/builtins.hpp"
#include "qma/error.hpp"
#include "qma/io.hpp"
#include "qma/lattice.hpp"
#include "qma/structure.hpp"

namespace qma {

using nlohmann::json;

namespace {

struct Common {
  std::string algebra = "dd2";
  std::string field = "cyclotomic";
  int m = 3;
  std::uint64_t prime = 0;
  bool json = false;
  unsigned seed = 1;
  unsigned jobs = 1;
};

// Outcome of a subcommand before printing.
struct Report {
  json inputs = json::object();
  json result;
  json witness;  // null when absent
  std::string text;
  int code = kExitOk;
};

const FieldContext& common_field(const Common& c) {
  if (c.field == "prime") {
    if (c.prime == 0) throw Error(ErrorCode::BadParams, "--field prime needs --p");
    return make_field(Backend::PrimeField, c.m, c.prime);
  }
  if (c.field != "cyclotomic") throw Error(ErrorCode::BadParams, "--field must be cyclotomic or prime");
  return make_field(Backend::CyclotomicRational, c.m);
}

std::size_t step_cap_from_env() {
  const char* v = std::getenv("QMA_STEP_CAP");
  if (v == nullptr || *v == '\0') return kDefaultStepCap;
  char* end = nullptr;
  const unsigned long long cap = std::strtoull(v, &end, 10);
  if (*end != '\0' || cap == 0) throw Error(ErrorCode::BadParams, "QMA_STEP_CAP must be a positive integer");
  return static_cast<std::size_t>(cap);
}

// builtin name, "name/detq", "name/GEN" or a presentation file
Presentation resolve_algebra(const Common& c) {
  const std::size_t cap = step_cap_from_env();
  if (std::filesystem::is_regular_file(c.algebra)) return load_presentation(c.algebra).with_step_cap(cap);
  const FieldContext& f = common_field(c);
  const auto slash = c.algebra.find('/');
  Presentation base = builtin_presentation(c.algebra.substr(0, slash), f);
  if (slash != std::string::npos) {
    const std::string q = c.algebra.substr(slash + 1);
    if (q == "detq") base = quotient_by_detq(base);
    else base = quotient_kill_generator(base, base.generator(q));
  }
  return base.with_step_cap(cap);
}

json field_json(const FieldContext& f) {
  json j = {{"backend", f.backend() == Backend::PrimeField ? "prime" : "cyclotomic"}, {"m", f.m()}};
  if (f.backend() == Backend::PrimeField) j["prime"] = f.prime();
  return j;
}

// Runs f(i) for i in [0, n) on up to `jobs` threads; results in input order.
template <class F>
auto parallel_map(std::size_t n, unsigned jobs, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<R> out(n);
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::future<void>> workers;
  const std::size_t k = std::min<std::size_t>(jobs, n);
  for (std::size_t w = 0; w < k; ++w)
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += k) out[i] = f(i);
    }));
  for (auto& w : workers) w.get();
  return out;
}

// A module given either as a representation export or as a parameter file.
Representation load_module(const std::string& path, const Common& c) {
  const json j = read_json_file(path);
  if (j.contains("action")) return representation_from_json(j);
  ModuleRecipe s = module_recipe_from_json(j);
  if (!j.contains("field") && c.field == "prime") {
    s.backend = Backend::PrimeField;
    if (!s.prime) s.prime = c.prime;
    if (!s.prime || *s.prime == 0) throw Error(ErrorCode::BadParams, "--field prime needs --p");
  }
  return build_from_recipe(s);
}

// --- subcommands -----------------------------------------------------------

Report cmd_normalize(const Common& c, const std::string& expr) {
  const Presentation p = resolve_algebra(c);
  Report r;
  r.inputs = {{"algebra", p.name()}, {"expr", expr}};
  const std::string nf = p.format(parse_poly(expr, p));
  r.result = nf;
  r.text = nf + "\n";
  return r;
}

Report cmd_central(const Common& c, const std::string& expr) {
  const Presentation p = resolve_algebra(c);
  const NCPoly z = parse_poly(expr, p);
  Report r;
  r.inputs = {{"algebra", p.name()}, {"expr", expr}};
  for (const auto& g : p.generators()) {
    const NCPoly com = commutator(z, p.generator_poly(g), p);
    if (!com.is_zero()) {
      r.result = false;
      r.witness = {{"generator", g}, {"commutator", p.format(com)}};
      r.text = "not central: [z, " + g + "] = " + p.format(com) + "\n";
      r.code = kExitFalse;
      return r;
    }
  }
  r.result = true;
  r.text = "central\n";
  return r;
}

Report cmd_qnormal(const Common& c, const std::string& expr) {
  const Presentation p = resolve_algebra(c);
  Report r;
  r.inputs = {{"algebra", p.name()}, {"expr", expr}};
  try {
    const auto prof = q_normal_profile(parse_poly(expr, p), p);
    r.result = json::object();
    for (std::size_t i = 0; i < prof.size(); ++i) {
      r.result[p.generators()[i]] = prof[i];
      r.text += p.generators()[i] + ": " + std::to_string(prof[i]) + "\n";
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotQNormal) throw;
    r.result = nullptr;
    r.witness = e.what();
    r.text = std::string("not q-normal: ") + e.what() + "\n";
    r.code = kExitFalse;
  }
  return r;
}

Report cmd_identity(const Common& c, const std::string& family, const std::string& index, int max_r) {
  static const std::vector<std::string> roman = {"i", "ii", "iii", "iv"};
  if (family != "dd" && family != "rea") throw Error(ErrorCode::BadParams, "--family must be dd or rea");
  const IdentityFamily fam = family == "dd" ? IdentityFamily::DD : IdentityFamily::REA;
  const auto it = std::find(roman.begin(), roman.end(), index);
  const int idx = static_cast<int>(it - roman.begin()) + 1;
  if (it == roman.end() || idx > identity_count(fam))
    throw Error(ErrorCode::BadParams, "--index out of range for family " + family);
  if (max_r < 1) throw Error(ErrorCode::BadParams, "--max-r must be at least 1");
  const FieldContext& f = common_field(c);
  const Presentation p = (fam == IdentityFamily::DD ? builtin_dd2(f) : builtin_rea2(f)).with_step_cap(step_cap_from_env());

  Report r;
  r.inputs = {{"family", family}, {"index", index}, {"max_r", max_r}, {"field", field_json(f)}};
  const auto holds = parallel_map(static_cast<std::size_t>(max_r), c.jobs, [&](std::size_t i) {
    // int, not bool: vector<bool> elements cannot be written from several threads
    return static_cast<int>(verify_power_identity(fam, idx, static_cast<unsigned>(i + 1), p));
  });
  r.result = json::object();
  json failing = json::array();
  for (std::size_t i = 0; i < holds.size(); ++i) {
    r.result[std::to_string(i + 1)] = static_cast<bool>(holds[i]);
    r.text += "r=" + std::to_string(i + 1) + ": " + (holds[i] ? "holds" : "FAILS") + "\n";
    if (!holds[i]) failing.push_back(i + 1);
  }
  if (!failing.empty()) {
    const auto [lhs, rhs] = power_identity_sides(fam, idx, failing[0].get<unsigned>(), p);
    r.witness = {{"failing_r", failing},
                 {"r", failing[0]},
                 {"lhs", p.format(normalize(lhs, p))},
                 {"rhs", p.format(normalize(rhs, p))}};
    r.code = kExitFalse;
  }
  return r;
}

Report cmd_confluence(const Common& c) {
  const Presentation p = resolve_algebra(c);
  Report r;
  r.inputs = {{"algebra", p.name()}};
  const auto amb = check_confluence(p);
  r.result = amb.empty();
  if (amb.empty()) {
    r.text = "confluent\n";
    return r;
  }
  r.witness = json::array();
  for (const auto& a : amb) {
    r.witness.push_back({{"overlap", p.format_word(a.overlap)},
                         {"via_left", p.format(a.via_left)},
                         {"via_right", p.format(a.via_right)}});
    r.text += "overlap " + p.format_word(a.overlap) + ": " + p.format(a.via_left) + " vs " +
              p.format(a.via_right) + "\n";
  }
  r.code = kExitFalse;
  return r;
}

Report cmd_pideg(const Common& c, int dd_n, const std::string& matrix) {
  Report r;
  mpz_class v;
  if (dd_n > 0 && !matrix.empty()) throw Error(ErrorCode::BadParams, "give only one of --dd-n and --matrix");
  if (dd_n > 0) {
    r.inputs = {{"dd_n", dd_n}, {"m", c.m}};
    v = pi_degree_dd(dd_n, c.m);
  } else if (!matrix.empty()) {
    std::ifstream in(matrix);
    if (!in) throw Error(ErrorCode::BadFormat, "cannot read " + matrix);
    std::stringstream ss;
    ss << in.rdbuf();
    const IntMatrix h = parse_int_matrix(ss.str());
    r.inputs = {{"matrix", matrix}, {"m", c.m}};
    v = pi_degree(h, c.m);
  } else {
    throw Error(ErrorCode::BadParams, "pideg needs --dd-n or --matrix");
  }
  r.result = v.fits_slong_p() ? json(v.get_si()) : json(v.get_str());
  r.text = v.get_str() + "\n";
  return r;
}

Report cmd_module_build(const Common& c, const std::string& params, const std::string& out) {
  const Representation rep = load_module(params, c);
  Report r;
  r.inputs = {{"params", params}};
  const json exported = representation_to_json(rep);
  if (!out.empty()) {
    std::ofstream o(out);
    if (!o) throw Error(ErrorCode::BadFormat, "cannot write " + out);
    o << exported.dump(2) << "\n";
    r.inputs["out"] = out;
    r.result = {{"family", family_name(rep.family)}, {"dim", rep.dim}, {"out", out}};
    r.text = std::string("built ") + family_name(rep.family) + " of dimension " + std::to_string(rep.dim) + " -> " +
             out + "\n";
  } else {
    r.result = exported;
    r.text = exported.dump(2) + "\n";
  }
  return r;
}

Report cmd_module_verify(const Common& c, const std::string& in) {
  const Representation rep = load_module(in, c);
  Report r;
  r.inputs = {{"in", in}};
  const auto bad = verify_relations(rep);
  r.result = {{"dim", rep.dim}, {"relations", rep.presentation->rules().size()}, {"violated", bad}};
  if (bad.empty()) {
    r.text = "ok: " + std::to_string(rep.presentation->rules().size()) + " relations hold\n";
  } else {
    for (const auto& s : bad) r.text += "violated: " + s + "\n";
    r.code = kExitFalse;
  }
  return r;
}

Report cmd_module_analyze(const Common& c, const std::string& in) {
  const Representation rep = load_module(in, c);
  Report r;
  r.inputs = {{"in", in}};
  const std::size_t span = generated_algebra_dim(rep);
  const bool simple = span == rep.dim * rep.dim;
  json res = {{"family", family_name(rep.family)},
              {"dim", rep.dim},
              {"generated_algebra_dim", span},
              {"simple", simple}};
  json witness = json::object();

  json semisimple = nullptr;
  if (simple) {
    semisimple = true;
  } else if (const auto w = uncomplemented_submodule(rep)) {
    semisimple = false;
    json basis = json::array();
    for (const auto& v : w->basis()) {
      json row = json::array();
      for (const auto& x : v) row.push_back(x.to_string());
      basis.push_back(std::move(row));
    }
    witness["uncomplemented_submodule"] = {{"dim", w->dim()}, {"basis", basis}};
  }
  res["semisimple"] = semisimple;

  json indecomposable = nullptr;
  try {
    const auto cert = indecomposability_certificate(rep);
    res["commutant_dim"] = cert.commutant_dim;
    res["radical_dim"] = cert.radical_dim;
    res["certificate"] = certificate_name(cert.kind);
    if (cert.kind == Certificate::Indecomposable) indecomposable = true;
    if (cert.kind == Certificate::Decomposable) {
      indecomposable = false;
      json e = json::array();
      for (std::size_t i = 0; i < rep.dim; ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < rep.dim; ++k) row.push_back((*cert.idempotent)(i, k).to_string());
        e.push_back(std::move(row));
      }
      witness["idempotent"] = e;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BadCharacteristic) throw;
    res["certificate"] = "unavailable";
    res["commutant_dim"] = commutant(rep).dim();
  }
  res["indecomposable"] = indecomposable;
  r.result = res;
  if (!witness.empty()) r.witness = witness;

  auto tri = [](const json& v) { return v.is_null() ? std::string("unknown") : v.get<bool>() ? "true" : "false"; };
  std::ostringstream t;
  t << "family: " << family_name(rep.family) << "\n"
    << "dim: " << rep.dim << "\n"
    << "generated algebra dim: " << span << "\n"
    << "simple: " << (simple ? "true" : "false") << "\n"
    << "semisimple: " << tri(semisimple) << "\n"
    << "commutant dim: " << res["commutant_dim"].get<std::size_t>() << "\n";
  if (res.contains("radical_dim")) t << "radical dim: " << res["radical_dim"].get<std::size_t>() << "\n";
  t << "certificate: " << res["certificate"].get<std::string>() << "\n"
    << "indecomposable: " << tri(indecomposable) << "\n";
  r.text = t.str();
  return r;
}

Report cmd_module_iso(const Common& c, const std::string& fa, const std::string& fb) {
  const Representation a = load_module(fa, c);
  const Representation b = load_module(fb, c);
  Report r;
  r.inputs = {{"a", fa}, {"b", fb}, {"seed", c.seed}};
  const bool iso = is_isomorphic(a, b, c.seed);
  json res = {{"isomorphic", iso}, {"intertwiner_dim", intertwiners(a, b).size()}};
  r.text = iso ? "isomorphic\n" : "not isomorphic\n";
  if (a.family == b.family && is_dd_family(a.family) && &a.field() == &b.field()) {
    const bool crit = dd_iso_param_check(a.family, a.params, b.params, a.p, b.p, a.field());
    res["parameter_criterion"] = crit;
    r.text += std::string("parameter criterion: ") + (crit ? "isomorphic" : "not isomorphic") + "\n";
  }
  r.result = res;
  if (!iso) r.code = kExitFalse;
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qma: quantized matrix algebras at roots of unity"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--algebra", c.algebra, "dd2, rea2, ddN, NAME/GEN, NAME/detq or a presentation file");
  app.add_option("--field", c.field, "cyclotomic or prime")->check(CLI::IsMember({"cyclotomic", "prime"}));
  app.add_option("--m", c.m, "order of q")->check(CLI::Range(2, 1 << 20));
  app.add_option("--p", c.prime, "prime for the prime-field backend");
  app.add_flag("--json", c.json, "machine-readable output");
  app.add_option("--seed", c.seed, "seed for randomized steps");
  app.add_option("--jobs", c.jobs, "worker threads for sweeps")->check(CLI::Range(1u, 256u));

  std::string expr, family, index, matrix, params, outfile, in, fa, fb;
  int max_r = 8, dd_n = 0;
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto* s_norm = sub("normalize", "normal form of an expression");
  s_norm->add_option("-e,--expr", expr)->required();
  auto* s_central = sub("central", "test whether an expression is central");
  s_central->add_option("-e,--expr", expr)->required();
  auto* s_qn = sub("qnormal", "q-normal exponent profile of an expression");
  s_qn->add_option("-e,--expr", expr)->required();
  auto* s_id = sub("identity", "check a power identity for r = 1..max-r");
  s_id->add_option("--family", family)->required()->check(CLI::IsMember({"dd", "rea"}));
  s_id->add_option("--index", index)->required()->check(CLI::IsMember({"i", "ii", "iii", "iv"}));
  s_id->add_option("--max-r", max_r);
  auto* s_conf = sub("confluence", "check all overlaps of the rewrite rules");
  auto* s_pi = sub("pideg", "PI degree from an exponent matrix");
  s_pi->add_option("--dd-n", dd_n, "quantum matrices of size n")->check(CLI::Range(1, 64));
  s_pi->add_option("--matrix", matrix, "exponent matrix file");
  auto* s_build = sub("module-build", "build a module from a parameter file");
  s_build->add_option("--params", params)->required();
  s_build->add_option("--out", outfile);
  auto* s_verify = sub("module-verify", "check the defining relations on a module");
  s_verify->add_option("--in", in)->required();
  auto* s_an = sub("module-analyze", "simplicity, complements and commutant of a module");
  auto* an_in = s_an->add_option("--in", in);
  auto* an_params = s_an->add_option("--params", params);
  an_in->excludes(an_params);
  auto* s_iso = sub("module-iso", "decide isomorphism of two modules");
  s_iso->add_option("--a", fa)->required();
  s_iso->add_option("--b", fb)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  std::string command;
  Report rep;
  try {
    if (s_norm->parsed()) command = "normalize", rep = cmd_normalize(c, expr);
    else if (s_central->parsed()) command = "central", rep = cmd_central(c, expr);
    else if (s_qn->parsed()) command = "qnormal", rep = cmd_qnormal(c, expr);
    else if (s_id->parsed()) command = "identity", rep = cmd_identity(c, family, index, max_r);
    else if (s_conf->parsed()) command = "confluence", rep = cmd_confluence(c);
    else if (s_pi->parsed()) command = "pideg", rep = cmd_pideg(c, dd_n, matrix);
    else if (s_build->parsed()) command = "module-build", rep = cmd_module_build(c, params, outfile);
    else if (s_verify->parsed()) command = "module-verify", rep = cmd_module_verify(c, in);
    else if (s_an->parsed()) {
      if (in.empty() && params.empty()) throw Error(ErrorCode::BadParams, "module-analyze needs --in or --params");
      command = "module-analyze", rep = cmd_module_analyze(c, in.empty() ? params : in);
    } else if (s_iso->parsed()) command = "module-iso", rep = cmd_module_iso(c, fa, fb);
  } catch (const Error& e) {
    err << "qma: " << e.what() << "\n";
    if (e.code() == ErrorCode::StepCapExceeded) return kExitCap;
    if (e.code() == ErrorCode::NotAPerfectSquare) return kExitFalse;
    return kExitUsage;
  }

  if (c.json) {
    json j = {{"command", command}, {"inputs", rep.inputs}, {"result", rep.result}};
    if (!rep.witness.is_null()) j["witness"] = rep.witness;
    out << j.dump(2) << "\n";
  } else {
    out << rep.text;
  }
  return rep.code;
}

}  // namespace qma
