#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chainres/chainres.hpp"
#include "chainres/io/interchange.hpp"

using namespace chainres;
using io::json;

namespace {

enum Exit { pass = 0, fail = 1, inconclusive = 2, usage = 3 };

struct Config {
  std::string command;
  std::string backend = "mod";
  std::string domain = "zm:4";
  std::size_t max_degree = 3;
  std::size_t dim_cap = 512;
  i64 budget = 1'000'000;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> seeds;
  std::size_t samples = 50;
  std::string functor = "identity";
  std::string object = "z2";
  std::string ses = "cover";
  std::string simplicial = "cech";
  std::string suite;
  std::string input;
  std::string output;

  Limits limits() const { return {dim_cap, budget, 2}; }

  json to_json() const {
    json j{{"command", command}, {"backend", backend},       {"domain", domain},   {"max_degree", max_degree},
           {"dim_cap", dim_cap}, {"budget", budget},         {"seed", seed},       {"seeds", seeds},
           {"samples", samples}, {"functor", functor},       {"object", object},   {"ses", ses},
           {"simplicial", simplicial}, {"suite", suite},     {"input", input}};
    return j;
  }

  static Config from_json(const json& j) {
    Config c;
    c.command = j.at("command").get<std::string>();
    c.backend = j.at("backend").get<std::string>();
    c.domain = j.at("domain").get<std::string>();
    c.max_degree = j.at("max_degree").get<std::size_t>();
    c.dim_cap = j.at("dim_cap").get<std::size_t>();
    c.budget = j.at("budget").get<i64>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    c.samples = j.at("samples").get<std::size_t>();
    c.functor = j.at("functor").get<std::string>();
    c.object = j.at("object").get<std::string>();
    c.ses = j.at("ses").get<std::string>();
    c.simplicial = j.at("simplicial").get<std::string>();
    c.suite = j.at("suite").get<std::string>();
    c.input = j.at("input").get<std::string>();
    return c;
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  int code = pass;
  std::string verdict;
  json results = json::object();
  std::vector<std::string> summary;
};

// ------------------------------------------------------------------ object names

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    auto v = std::stoul(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot read a number from '" + s + "' in " + what);
  }
}

json load_presentation(const std::string& path, const char* tag) {
  auto doc = io::read_file(path);
  if (doc.contains("backend") && doc.at("backend").get<std::string>() != tag)
    throw UsageError("document backend '" + doc.at("backend").get<std::string>() + "' does not match --backend " + tag);
  return doc.contains("presentation") ? doc.at("presentation") : doc;
}

/// "z2,z4", "z" (a free Z summand), "free:3" or "@file.json".
ModCategory::Object named_object(const ModCategory& cat, const std::string& name) {
  if (!name.empty() && name[0] == '@') return io::parse_object(cat, load_presentation(name.substr(1), ModCategory::tag));
  if (name.rfind("free:", 0) == 0) return cat.free_object(parse_count(name.substr(5), "--object"));
  if (name == "0") return cat.zero_object();
  std::vector<i64> orders;
  for (const auto& part : split(name, ',')) {
    if (part[0] != 'z') throw UsageError("module names look like z2,z4 or free:3; got '" + part + "'");
    orders.push_back(part.size() == 1 ? 0 : static_cast<i64>(parse_count(part.substr(1), "--object")));
  }
  return cat.object(orders);
}

/// "a2"/"v2" (abelian), "f2"/"free:2", "h" (Heisenberg) or "@file.json".
template <class Field>
typename Lie2Category<Field>::Object named_object(const Lie2Category<Field>& cat, const std::string& name) {
  if (!name.empty() && name[0] == '@') return io::parse_object(cat, load_presentation(name.substr(1), Lie2Category<Field>::tag));
  if (name == "0") return cat.zero_object();
  if (name == "h") return cat.free_object(2);
  if (name.rfind("free:", 0) == 0) return cat.free_object(parse_count(name.substr(5), "--object"));
  if (name.size() >= 2 && (name[0] == 'a' || name[0] == 'v')) return cat.abelian(parse_count(name.substr(1), "--object"));
  if (name.size() >= 2 && name[0] == 'f') return cat.free_object(parse_count(name.substr(1), "--object"));
  throw UsageError("Lie algebra names look like a2, v2, f2, h or free:2; got '" + name + "'");
}

// ------------------------------------------------------------------ reporting helpers

template <class Cat>
json fingerprints(const Cat& cat, const std::vector<ObjectOf<Cat>>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(io::fingerprint_json(cat.fingerprint(x)));
  return a;
}

const char* witness_kind(int k) { return k == 0 ? "free" : k == 1 ? "retract" : "none"; }

template <class Cat>
json resolution_json(const Cat& cat, const ProjectiveResolution<Cat>& r) {
  json w = json::array();
  for (const auto& x : r.witnesses) w.push_back({{"kind", witness_kind(static_cast<int>(x.kind))}, {"generators", x.generators}});
  return {{"seed", r.seed},
          {"complex", io::complex_json(cat, r.complex)},
          {"augmentation", io::morphism_json(cat, r.augmentation)},
          {"witnesses", w},
          {"fingerprints", fingerprints(cat, r.complex.objects)}};
}

template <class Cat>
ShortExactSequence<Cat> named_ses(const Cat& cat, const Config& cfg) {
  auto x = named_object(cat, cfg.object);
  if (cfg.ses == "cover") {
    auto cover = cat.projective_cover(x);
    return {cat.kernel(cover.epi).inclusion, cover.epi, std::nullopt};
  }
  if (cfg.ses == "split") {
    auto p = cat.product(x, x);
    return {cat.kernel(p.pi2).inclusion, p.pi2, cat.pair(p, cat.zero(x, x), cat.identity(x))};
  }
  if constexpr (std::is_same_v<Cat, ModCategory>) {
    if (cfg.ses == "tor") {
      // 0 → Z/2 → Z/4 → Z/2 → 0
      auto z2 = cat.object({2}), z4 = cat.object({4});
      if (z4.orders != std::vector<i64>{4}) throw UsageError("the tor sequence needs a ring in which 4 ≠ 0");
      return {cat.make(z2, z4, intlinalg::IntMat(1, 1, 2)), cat.make(z4, z2, intlinalg::IntMat(1, 1, 1)), std::nullopt};
    }
  }
  throw UsageError("unknown --ses '" + cfg.ses + "' (cover, split, tor)");
}

json property_json(const FunctorPropertyReport& rep) {
  json j = json::object();
  for (const auto& [name, v] : rep.verdicts)
    j[name] = {{"status", to_string(v.status)}, {"cases", v.cases}, {"witness", v.witness}};
  return j;
}

// ------------------------------------------------------------------ functor-level commands

template <class Src, class Dst>
Outcome cmd_derive(const FunctorSpec<Src, Dst>& F, const Config& cfg) {
  Outcome o;
  auto x = named_object(F.source, cfg.object);
  auto props = functor_property_report(F, cfg.samples, cfg.seed);
  auto r = derive(F, x, cfg.max_degree, cfg.seed, &props, cfg.limits());
  json values = json::array();
  for (std::size_t n = 0; n < r.values.size(); ++n) {
    values.push_back({{"degree", n},
                      {"fingerprint", io::fingerprint_json(r.values[n])},
                      {"presentation", io::object_json(F.target, r.value(n))},
                      {"image_complex_proper", static_cast<bool>(r.proper[n])}});
    o.summary.push_back("L" + std::to_string(n) + " = " + r.values[n].str());
  }
  o.results = {{"functor", F.name},
               {"exploratory", r.exploratory},
               {"properties", property_json(props)},
               {"values", values},
               {"resolution", resolution_json(F.source, r.resolution)}};
  o.verdict = r.exploratory ? "computed (exploratory)" : "computed";
  return o;
}

template <class Src, class Dst>
Outcome cmd_les(const FunctorSpec<Src, Dst>& F, const Config& cfg) {
  Outcome o;
  auto ses = named_ses(F.source, cfg);
  auto props = functor_property_report(F, cfg.samples, cfg.seed);
  auto rep = long_exact_sequence(F, ses, cfg.max_degree, props, cfg.seed, cfg.limits());
  json nodes = json::array();
  for (const auto& n : rep.nodes) {
    if (n.degree > cfg.max_degree) continue;
    nodes.push_back({{"label", n.label}, {"fingerprint", io::fingerprint_json(n.fingerprint)}, {"checked", n.checked}, {"exact", n.exact}});
    o.summary.push_back(n.label + " " + n.fingerprint.str() + (n.checked ? (n.exact ? " exact" : " NOT exact") : ""));
  }
  json deltas = json::array();
  for (std::size_t n = 0; n < rep.connecting.size() && n < cfg.max_degree; ++n)
    deltas.push_back({{"degree", n + 1}, {"map", io::morphism_json(F.target, rep.connecting[n])}});
  o.results = {{"functor", F.name},           {"nodes", nodes},
               {"connecting", deltas},        {"composites_zero", rep.composites_zero},
               {"all_exact", rep.all_exact},  {"tail_surjective", rep.tail_surjective},
               {"zero_term_matches_functor", rep.zero_term_matches_functor}};
  bool ok = rep.composites_zero && rep.all_exact && rep.tail_surjective;
  o.verdict = ok ? "exact" : "not exact";
  o.code = ok ? pass : fail;
  return o;
}

template <class Src, class Dst>
Outcome cmd_compare(const FunctorSpec<Src, Dst>& F, const Config& cfg) {
  Outcome o;
  if constexpr (std::is_same_v<Src, ModCategory>) {
    auto x = named_object(F.source, cfg.object);
    const auto& cat = F.source;
    std::size_t deg = cfg.max_degree;
    auto chain = build_resolution(cat, x, deg + 1, cfg.seed, cfg.limits());
    SimplicialObject<ModCategory> s;
    if (cfg.simplicial == "comonadic") {
      s = comonadic(cat, x, 1, cfg.limits());
      deg = 0;
    } else {
      s = dk_gamma(cat, chain.complex, deg + 1, chain.augmentation);
    }
    auto rows = simplicial_vs_chain_compare(F, s, chain, deg);
    json out = json::array();
    bool all = true;
    for (const auto& r : rows) {
      out.push_back({{"degree", r.degree},
                     {"levelwise", io::fingerprint_json(r.levelwise)},
                     {"normalized", io::fingerprint_json(r.normalized)},
                     {"chain", io::fingerprint_json(r.chain)},
                     {"agree", r.agree}});
      o.summary.push_back("H" + std::to_string(r.degree) + ": " + r.levelwise.str() + " " + r.normalized.str() + " " + r.chain.str());
      all = all && r.agree;
    }
    o.results = {{"functor", F.name}, {"simplicial", cfg.simplicial == "comonadic" ? "comonadic" : "gamma"}, {"rows", out}};
    if (cfg.simplicial == "comonadic") o.results["scope"] = "H_0 only: comonadic levels beyond depth 1 exceed desk scale";
    o.verdict = all ? "agree" : "disagree";
    o.code = all ? pass : fail;
  } else {
    (void)F;
    (void)cfg;
    throw UsageError("simplicial-compare needs the mod backend (Γ and the comonadic generator are module constructions)");
  }
  return o;
}

template <class Src, class Dst>
Outcome cmd_functor_properties(const FunctorSpec<Src, Dst>& F, const Config& cfg) {
  Outcome o;
  auto props = functor_property_report(F, cfg.samples, cfg.seed);
  o.results = {{"functor", F.name}, {"declared", F.declared}, {"properties", property_json(props)}};
  bool ok = true;
  for (const auto& d : F.declared) {
    auto it = props.verdicts.find(d);
    if (it != props.verdicts.end() && it->second.status == PropertyStatus::counterexample) ok = false;
  }
  for (const auto& [name, v] : props.verdicts) o.summary.push_back(name + ": " + to_string(v.status));
  o.verdict = ok ? "declared properties hold on samples" : "a declared property has a counterexample";
  o.code = ok ? pass : fail;
  return o;
}

/// Builds the functor named by --functor and hands it to `run`.
template <class Cat, class Run>
Outcome with_functor(const Cat& cat, const Config& cfg, Run run) {
  const std::string& name = cfg.functor;
  if (name == "identity") return run(identity_functor(cat));
  if constexpr (std::is_same_v<Cat, ModCategory>) {
    if (name.rfind("tensor:z", 0) == 0) return run(tensor_functor(cat, static_cast<i64>(parse_count(name.substr(8), "--functor"))));
    if (name == "abelian-inclusion") {
      if (cat.domain().kind != CoefficientDomain::Kind::prime_field && !(cat.domain().modulus > 1 && is_prime(cat.domain().modulus)))
        throw UsageError("abelian-inclusion needs a prime modulus");
      return run(abelian_inclusion_functor(cat, Lie2Fp(PrimeField(cat.domain().modulus))));
    }
  }
  if constexpr (std::is_same_v<Cat, Lie2Fp>) {
    if (name == "abelianization") return run(abelianization_functor(cat));
  }
  throw UsageError("unknown functor '" + name + "' for backend " + cfg.backend + " (identity, tensor:zK, abelianization, abelian-inclusion)");
}

// ------------------------------------------------------------------ category-level commands

template <class Cat>
Outcome cmd_resolve(const Cat& cat, const Config& cfg) {
  Outcome o;
  auto x = named_object(cat, cfg.object);
  auto r = build_resolution(cat, x, cfg.max_degree, cfg.seed, cfg.limits());
  auto v = validate_resolution(cat, r);
  o.results = {{"object", io::object_json(cat, x)},
               {"resolution", resolution_json(cat, r)},
               {"validation", {{"ok", v.ok}, {"message", v.message}, {"scope", v.scope}, {"failed_degree", v.failed_degree}}}};
  for (std::size_t n = 0; n <= r.top(); ++n) o.summary.push_back("C" + std::to_string(n) + " " + cat.fingerprint(r.complex.objects[n]).str());
  o.verdict = v.ok ? "valid resolution" : "invalid: " + v.message;
  o.code = v.ok ? pass : fail;
  return o;
}

template <class Cat>
Outcome cmd_homology(const Cat& cat, const Config& cfg) {
  Outcome o;
  ChainComplex<Cat> c;
  if (!cfg.input.empty()) {
    auto doc = io::read_file(cfg.input);
    c = io::parse_complex(cat, doc.contains("complex") ? doc.at("complex") : doc);
  } else {
    c = build_resolution(cat, named_object(cat, cfg.object), cfg.max_degree, cfg.seed, cfg.limits()).complex;
  }
  json rows = json::array();
  auto flags = properness_and_exactness(cat, c);
  for (std::size_t n = 0; n + 1 <= c.top(); ++n) {
    auto h = homology(cat, c, n);
    rows.push_back({{"degree", n},
                    {"fingerprint", io::fingerprint_json(cat.fingerprint(h.object()))},
                    {"presentation", io::object_json(cat, h.object())},
                    {"proper", flags[n].proper},
                    {"exact", flags[n].exact}});
    o.summary.push_back("H" + std::to_string(n) + " = " + cat.fingerprint(h.object()).str());
  }
  o.results = {{"complex", io::complex_json(cat, c)}, {"homology", rows}};
  o.verdict = "computed";
  return o;
}

template <class Cat>
Outcome cmd_horseshoe(const Cat& cat, const Config& cfg) {
  Outcome o;
  auto ses = named_ses(cat, cfg);
  auto right = build_resolution(cat, ses.f.cod, cfg.max_degree, cfg.seed, cfg.limits());
  auto h = horseshoe(cat, ses, right, cfg.max_degree, cfg.budget);
  auto v = validate_horseshoe(cat, h, ses);
  o.results = {{"left", resolution_json(cat, h.left)},
               {"middle", resolution_json(cat, h.middle)},
               {"right", resolution_json(cat, h.right)},
               {"split_input", h.split_input},
               {"validation",
                {{"ok", v.ok}, {"message", v.message}, {"rows_ok", v.rows_ok}, {"columns_ok", v.columns_ok}, {"sections_chain_map", v.sections_chain_map}}}};
  o.summary.push_back("rows " + std::string(v.rows_ok ? "ok" : "FAIL") + ", columns " + (v.columns_ok ? "ok" : "FAIL"));
  o.verdict = v.ok ? "valid" : "invalid: " + v.message;
  o.code = v.ok ? pass : fail;
  return o;
}

template <class Cat>
Outcome cmd_homotopy(const Cat& cat, const Config& cfg) {
  Outcome o;
  auto x = named_object(cat, cfg.object);
  std::uint64_t s1 = cfg.seeds.size() >= 1 ? cfg.seeds[0] : cfg.seed;
  std::uint64_t s2 = cfg.seeds.size() >= 2 ? cfg.seeds[1] : cfg.seed + 1;
  std::size_t deg = std::min<std::size_t>(cfg.max_degree, cfg.limits().homotopy_degree);
  Workspace<Cat> ws(cat, cfg.limits());
  auto c = build_resolution(cat, x, deg + 1, s1, cfg.limits());
  auto e = build_resolution(cat, x, deg + 1, s2, cfg.limits());
  auto eq = homotopy_equivalence(ws, c, e, deg, s2);
  bool ok = true;
  json parts = json::array();
  for (const auto& [label, H] : {std::pair{"source", &eq.on_source}, std::pair{"target", &eq.on_target}}) {
    auto checks = verify_homotopy(ws, *H);
    auto rev = verify_homotopy(ws, reverse_homotopy(ws, *H));
    auto agree = homology_agreement(ws, *H);
    json eqs = json::array(), comps = json::array(), hom = json::array();
    for (const auto& ch : checks) eqs.push_back({{"degree", ch.degree}, {"pass", ch.pass}, {"message", ch.message}});
    for (const auto& m : H->h) comps.push_back(io::morphism_json(cat, m));
    for (const auto& a : agree) hom.push_back({{"degree", a.degree}, {"maps_equal", a.maps_equal}, {"key_identity", a.key_identity}});
    bool part_ok = all_pass(checks) && all_pass(rev);
    for (const auto& a : agree) part_ok = part_ok && a.maps_equal && a.key_identity;
    ok = ok && part_ok;
    parts.push_back({{"side", label}, {"equations", eqs}, {"reverse_passes", all_pass(rev)}, {"homology", hom}, {"components", comps}});
    o.summary.push_back(std::string(label) + ": " + (part_ok ? "verified" : "FAILED"));
  }
  o.results = {{"seeds", {s1, s2}}, {"degree", deg}, {"homotopies", parts}};
  o.verdict = ok ? "verified" : "failed";
  o.code = ok ? pass : fail;
  return o;
}

template <class Cat>
Outcome cmd_moore(const Cat& cat, const Config& cfg) {
  Outcome o;
  auto x = named_object(cat, cfg.object);
  const std::size_t depth = std::max<std::size_t>(cfg.max_degree, 1);
  SimplicialObject<Cat> s;
  std::optional<SimplicialHomotopy<Cat>> contraction;
  SimplicialMap<Cat> fmap, gmap;
  if (cfg.simplicial == "constant") {
    s = constant_simplicial(cat, x, depth);
  } else if (cfg.simplicial == "cech") {
    auto cover = cat.projective_cover(x);
    auto sec = cat.find_section(cover.epi, cfg.budget);
    auto cn = cech_nerve(cat, cover.epi, depth, sec.map, cfg.limits());
    s = cn.object;
    contraction = cn.contraction;
    fmap = cn.constant;
    gmap = cn.identity;
  } else if (cfg.simplicial == "comonadic") {
    if constexpr (std::is_same_v<Cat, ModCategory>) s = comonadic(cat, x, 1, cfg.limits());
    else throw UsageError("the comonadic generator is implemented for the mod backend");
  } else {
    throw UsageError("unknown --simplicial '" + cfg.simplicial + "' (constant, cech, comonadic)");
  }
  auto valid = validate_simplicial(cat, s);
  auto m = moore(cat, s);
  auto dec = decalage_identity(cat, s, s.top());
  auto res = validate_simplicial_resolution(cat, s, cfg.budget);
  json homol = json::array();
  for (std::size_t n = 0; n + 1 <= m.complex.top(); ++n)
    homol.push_back(io::fingerprint_json(cat.fingerprint(homology(cat, m.complex, n).object())));
  bool ok = valid == "ok";
  for (bool b : dec) ok = ok && b;
  o.results = {{"simplicial", io::simplicial_json(cat, s)},
               {"identities", valid},
               {"moore", io::complex_json(cat, m.complex)},
               {"moore_fingerprints", fingerprints(cat, m.complex.objects)},
               {"homology", homol},
               {"decalage_identity", dec},
               {"resolution", {{"exact", res.exact}, {"h0_matches", res.h0_matches}, {"promoted", res.promoted.has_value()}, {"message", res.message}}}};
  if (contraction && s.top() >= 2) {
    Workspace<Cat> ws(cat, cfg.limits());
    std::size_t deg = std::min<std::size_t>(s.top() - 1, cfg.limits().homotopy_degree);
    auto H = simplicial_to_chain_homotopy(ws, s, s, fmap, gmap, *contraction, deg);
    auto checks = verify_homotopy(ws, H);
    json eqs = json::array();
    for (const auto& c : checks) eqs.push_back({{"degree", c.degree}, {"pass", c.pass}});
    o.results["converted_contraction"] = eqs;
    ok = ok && all_pass(checks);
  }
  for (std::size_t n = 0; n <= m.complex.top(); ++n) o.summary.push_back("N" + std::to_string(n) + " " + cat.fingerprint(m.complex.objects[n]).str());
  o.verdict = ok ? "consistent" : "inconsistent";
  o.code = ok ? pass : fail;
  return o;
}

template <class Cat>
Outcome cmd_condp(const Cat& cat, const Config& cfg) {
  Outcome o;
  auto rep = condition_p_probe(cat, cfg.samples, cfg.seed, cfg.budget);
  o.results = {{"verdict", rep.verdict},
               {"samples", rep.samples},
               {"projective_kernels", rep.projective},
               {"certified_non_projective", rep.certified_none},
               {"undecided", rep.undecided}};
  if (rep.counterexample) {
    const auto& c = *rep.counterexample;
    o.results["counterexample"] = {{"middle", io::object_json(cat, c.middle)},
                                   {"epi", io::morphism_json(cat, c.ses.f)},
                                   {"section", io::morphism_json(cat, *c.ses.section)},
                                   {"kernel", io::object_json(cat, c.ses.k.dom)},
                                   {"section_search", {{"verdict", to_string(c.certificate.verdict)}, {"explored", c.certificate.explored}, {"space", c.certificate.space}}},
                                   {"replayed", replay_counterexample(cat, c, cfg.budget)}};
  }
  o.summary.push_back("condition (P): " + rep.verdict);
  o.verdict = rep.verdict;
  o.code = rep.verdict == "holds-on-samples" ? pass : inconclusive;
  return o;
}

template <class Cat>
Outcome cmd_check(const Cat& cat, const Config& cfg) {
  if (cfg.suite == "subtraction-laws") {
    Outcome o;
    Workspace<Cat> ws(cat, cfg.limits());
    auto rep = subtraction_law_suite(ws, cfg.samples, cfg.seed);
    json laws = json::object();
    for (const auto& [name, t] : rep.laws) {
      laws[name] = {{"checked", t.checked}, {"failed", t.failed}, {"first_failure", t.first_failure}};
      o.summary.push_back(name + ": " + std::to_string(t.checked - t.failed) + "/" + std::to_string(t.checked));
    }
    o.results = {{"suite", cfg.suite}, {"laws", laws}};
    o.verdict = rep.all_pass() ? "all laws hold" : "a law failed";
    o.code = rep.all_pass() ? pass : fail;
    return o;
  }
  if (cfg.suite == "functor-properties") return with_functor(cat, cfg, [&](const auto& F) { return cmd_functor_properties(F, cfg); });
  if (cfg.suite == "simplicial") {
    Config c = cfg;
    c.simplicial = "cech";
    return cmd_moore(cat, c);
  }
  throw UsageError("unknown suite '" + cfg.suite + "' (subtraction-laws, functor-properties, simplicial)");
}

template <class Cat>
Outcome dispatch(const Cat& cat, const Config& cfg) {
  const auto& c = cfg.command;
  if (c == "resolve") return cmd_resolve(cat, cfg);
  if (c == "homology") return cmd_homology(cat, cfg);
  if (c == "horseshoe") return cmd_horseshoe(cat, cfg);
  if (c == "homotopy") return cmd_homotopy(cat, cfg);
  if (c == "moore") return cmd_moore(cat, cfg);
  if (c == "condp") return cmd_condp(cat, cfg);
  if (c == "check") return cmd_check(cat, cfg);
  if (c == "derive") return with_functor(cat, cfg, [&](const auto& F) { return cmd_derive(F, cfg); });
  if (c == "les") return with_functor(cat, cfg, [&](const auto& F) { return cmd_les(F, cfg); });
  if (c == "simplicial-compare") return with_functor(cat, cfg, [&](const auto& F) { return cmd_compare(F, cfg); });
  throw UsageError("unknown command " + c);
}

Outcome run(const Config& cfg) {
  if (cfg.max_degree == 0) throw UsageError("--max-degree must be positive");
  if (cfg.dim_cap == 0) throw UsageError("--dim-cap must be positive");
  auto dom = CoefficientDomain::parse(cfg.domain);
  if (cfg.backend == "mod") {
    if (dom.kind == CoefficientDomain::Kind::rationals) throw UsageError("the mod backend works over z, zm:<m> or fp:<p>");
    return dispatch(ModCategory(dom), cfg);
  }
  if (cfg.backend == "lie2") {
    if (dom.kind == CoefficientDomain::Kind::prime_field) return dispatch(Lie2Fp(PrimeField(dom.modulus)), cfg);
    if (dom.kind == CoefficientDomain::Kind::residue_ring && is_prime(dom.modulus)) return dispatch(Lie2Fp(PrimeField(dom.modulus)), cfg);
    if (dom.kind == CoefficientDomain::Kind::rationals) return dispatch(Lie2Q(), cfg);
    throw UsageError("the lie2 backend works over a field: q or fp:<p>");
  }
  throw UsageError("unknown backend '" + cfg.backend + "' (mod, lie2)");
}

int obstruction_code(const std::exception& ex) {
  if (dynamic_cast<const InvalidPresentation*>(&ex)) return usage;
  if (dynamic_cast<const DimensionBlowup*>(&ex) || dynamic_cast<const ConditionPObstruction*>(&ex) ||
      dynamic_cast<const DProjectivityObstruction*>(&ex) || dynamic_cast<const LiftNotFound*>(&ex) ||
      dynamic_cast<const HypothesisUnverified*>(&ex) || dynamic_cast<const InsufficientTruncation*>(&ex))
    return inconclusive;
  return fail;
}

struct Produced {
  int code = pass;
  std::string text;
  Outcome outcome;
};

/// Runs a config and renders its report; code is `usage` (with an empty text) on usage errors.
Produced produce(const Config& cfg) {
  Produced p;
  Outcome& out = p.outcome;
  auto usage_error = [&](const char* what) {
    std::cerr << "usage error: " << what << "\n";
    p.code = usage;
    return p;
  };
  try {
    out = run(cfg);
  } catch (const UsageError& e) {
    return usage_error(e.what());
  } catch (const EngineError& e) {
    out.code = obstruction_code(e);
    if (out.code == usage) return usage_error(e.what());
    out.verdict = std::string("error: ") + e.what();
    out.results = {{"error", e.what()}};
    if (auto* cp = dynamic_cast<const ConditionPObstruction*>(&e)) out.results["search"] = to_string(cp->tag());
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
  json report{{"schema_version", io::schema_version}, {"config", cfg.to_json()}, {"verdict", out.verdict}, {"exit_code", out.code}, {"results", out.results}};
  p.code = out.code;
  p.text = report.dump(2) + "\n";
  return p;
}

/// Re-runs the config recorded in a report; exit 0 iff the new report is byte-identical.
int replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "usage error: cannot open " << path << "\n";
    return usage;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string original = buf.str();
  Config cfg;
  try {
    auto doc = json::parse(original);
    if (doc.at("schema_version").get<int>() != io::schema_version) throw UsageError("unsupported schema_version");
    cfg = Config::from_json(doc.at("config"));
  } catch (const std::exception& e) {
    std::cerr << "usage error: not a report: " << e.what() << "\n";
    return usage;
  }
  if (cfg.command == "replay") {
    std::cerr << "usage error: a report cannot record a replay\n";
    return usage;
  }
  auto p = produce(cfg);
  if (p.code == usage) return usage;
  bool same = p.text == original;
  std::cerr << "replay of " << cfg.command << ": " << (same ? "identical" : "DIFFERS") << "\n";
  return same ? pass : fail;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  std::string seeds_text;
  CLI::App app{"chainres: projective resolutions, derived functors and approximate homotopies"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--backend", cfg.backend, "mod | lie2");
  app.add_option("--domain,--field", cfg.domain, "q | z | fp:<p> | zm:<m>");
  app.add_option("--max-degree", cfg.max_degree, "truncation degree");
  app.add_option("--dim-cap", cfg.dim_cap, "largest object size");
  app.add_option("--budget", cfg.budget, "bounded search budget");
  app.add_option("--seed", cfg.seed, "seed");
  app.add_option("--seeds", seeds_text, "comma-separated seeds");
  app.add_option("--samples", cfg.samples, "sample count");
  app.add_option("--functor", cfg.functor, "identity | tensor:zK | abelianization | abelian-inclusion");
  app.add_option("--object", cfg.object, "named object or @file.json");
  app.add_option("--ses", cfg.ses, "cover | split | tor");
  app.add_option("--simplicial", cfg.simplicial, "constant | cech | comonadic");
  app.add_option("--input", cfg.input, "interchange document");
  app.add_option("--output,-o", cfg.output, "report path (default stdout)");
  for (const char* name : {"resolve", "homology", "derive", "les", "horseshoe", "homotopy", "moore", "simplicial-compare", "condp"})
    app.add_subcommand(name)->callback([&cfg, name] { cfg.command = name; });
  auto* check = app.add_subcommand("check");
  check->add_option("suite", cfg.suite, "subtraction-laws | functor-properties | simplicial")->required();
  check->callback([&cfg] { cfg.command = "check"; });
  auto* rep = app.add_subcommand("replay", "re-run a report's recorded config and compare byte-for-byte");
  rep->add_option("report", cfg.input, "report file")->required();
  rep->callback([&cfg] { cfg.command = "replay"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : usage;
  }
  try {
    for (const auto& s : split(seeds_text, ',')) cfg.seeds.push_back(parse_count(s, "--seeds"));
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return usage;
  }

  if (cfg.command == "replay") return replay(cfg.input);
  auto [code, text, out] = produce(cfg);
  if (code == usage) return usage;
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.output);
    if (!f) {
      std::cerr << "usage error: cannot write " << cfg.output << "\n";
      return usage;
    }
    f << text;
  }
  std::cerr << cfg.command << " [" << cfg.backend << " " << cfg.domain << "]\n";
  for (const auto& line : out.summary) std::cerr << "  " << line << "\n";
  std::cerr << "verdict: " << out.verdict << " (exit " << out.code << ")\n";
  return out.code;
}
