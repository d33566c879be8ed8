#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "chainres/backends/lie2.hpp"
#include "chainres/backends/mod.hpp"
#include "chainres/chains/complex.hpp"
#include "chainres/core/types.hpp"
#include "chainres/simplicial/simplicial.hpp"

namespace chainres::io {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

inline json domain_json(const CoefficientDomain& d) {
  return {{"kind", d.kind_name()}, {"modulus", d.modulus}};
}

inline CoefficientDomain parse_domain(const json& j) {
  if (j.is_string()) return CoefficientDomain::parse(j.get<std::string>());
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "q" || kind == "z") return CoefficientDomain::parse(kind);
  return CoefficientDomain::parse(kind + ":" + std::to_string(j.at("modulus").get<i64>()));
}

inline json fingerprint_json(const Fingerprint& f) { return {{"kind", f.kind}, {"values", f.values}}; }

// ------------------------------------------------------------------------ Mod

inline json matrix_json(const intlinalg::IntMat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

inline intlinalg::IntMat parse_int_matrix(const json& j, std::size_t rows, std::size_t cols) {
  intlinalg::IntMat m(rows, cols, 0);
  if (j.size() != rows) throw InvalidPresentation("matrix has the wrong number of rows");
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw InvalidPresentation("matrix row " + std::to_string(i) + " has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = j[i][c].get<i64>();
  }
  return m;
}

inline json object_json(const ModCategory&, const ModCategory::Object& x) { return {{"orders", x.orders}}; }

inline json morphism_json(const ModCategory& cat, const ModCategory::Morphism& f) {
  return {{"domain", object_json(cat, f.dom)}, {"codomain", object_json(cat, f.cod)}, {"matrix", matrix_json(f.matrix)}};
}

/// {"orders": [...]} or {"rank": n, "relations": [[...]]} (relations as columns).
inline ModCategory::Object parse_object(const ModCategory& cat, const json& p) {
  if (p.contains("orders")) return cat.object(p.at("orders").get<std::vector<i64>>());
  if (p.contains("rank")) {
    auto rank = p.at("rank").get<std::size_t>();
    const json& rel = p.contains("relations") ? p.at("relations") : json::array();
    std::size_t cols = rel.empty() ? 0 : rel[0].size();
    auto m = rel.empty() ? intlinalg::IntMat(rank, 0, 0) : parse_int_matrix(rel, rank, cols);
    return cat.from_relations(rank, m).first;
  }
  throw InvalidPresentation("module presentation needs 'orders' or 'rank'");
}

inline ModCategory::Morphism parse_morphism(const ModCategory& cat, const json& p) {
  auto dom = parse_object(cat, p.at("domain"));
  auto cod = parse_object(cat, p.at("codomain"));
  return cat.make(dom, cod, parse_int_matrix(p.at("matrix"), cod.size(), dom.size()));
}

// ------------------------------------------------------------------------ Lie2

template <class Field>
json matrix_json(const Field& k, const linalg::Mat<Field>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<Field, PrimeField>) r.push_back(m(i, j));
      else r.push_back(k.to_string(m(i, j)));
    }
    rows.push_back(r);
  }
  return rows;
}

template <class Field>
typename Field::value_type parse_scalar(const Field& k, const json& v) {
  if (v.is_string()) return k.parse(v.get<std::string>());
  return k.from_int(v.get<i64>());
}

template <class Field>
json object_json(const Lie2Category<Field>& cat, const typename Lie2Category<Field>::Object& x) {
  json t = json::array();
  for (const auto& [i, j, kk, v] : cat.triples(x)) {
    json entry = json::array({i, j, kk});
    if constexpr (std::is_same_v<Field, PrimeField>) entry.push_back(v);
    else entry.push_back(cat.field().to_string(v));
    t.push_back(entry);
  }
  return {{"dim", x.size()}, {"triples", t}};
}

template <class Field>
json morphism_json(const Lie2Category<Field>& cat, const typename Lie2Category<Field>::Morphism& f) {
  return {{"domain", object_json(cat, f.dom)}, {"codomain", object_json(cat, f.cod)}, {"matrix", matrix_json(cat.field(), f.matrix)}};
}

/// {"dim": n, "triples": [[i, j, k, value], ...]} meaning [e_i, e_j] has e_k-coefficient value.
template <class Field>
typename Lie2Category<Field>::Object parse_object(const Lie2Category<Field>& cat, const json& p) {
  using L = Lie2Category<Field>;
  auto dim = p.at("dim").get<std::size_t>();
  std::vector<typename L::Triple> ts;
  if (p.contains("triples"))
    for (const auto& t : p.at("triples")) {
      if (t.size() != 4) throw InvalidPresentation("structure constant triples need four entries");
      ts.emplace_back(t[0].get<std::size_t>(), t[1].get<std::size_t>(), t[2].get<std::size_t>(), parse_scalar(cat.field(), t[3]));
    }
  return cat.from_triples(dim, ts);
}

template <class Field>
typename Lie2Category<Field>::Morphism parse_morphism(const Lie2Category<Field>& cat, const json& p) {
  auto dom = parse_object(cat, p.at("domain"));
  auto cod = parse_object(cat, p.at("codomain"));
  auto m = linalg::zeros(cat.field(), cod.size(), dom.size());
  const auto& rows = p.at("matrix");
  if (rows.size() != cod.size()) throw InvalidPresentation("matrix has the wrong number of rows");
  for (std::size_t i = 0; i < cod.size(); ++i) {
    if (rows[i].size() != dom.size()) throw InvalidPresentation("matrix row has the wrong length");
    for (std::size_t j = 0; j < dom.size(); ++j) m(i, j) = parse_scalar(cat.field(), rows[i][j]);
  }
  auto f = cat.make(dom, cod, m);
  auto why = cat.validate(f);
  if (why != "ok") throw InvalidPresentation(why);
  return f;
}

// --------------------------------------------------------------- composite data

template <class Cat>
json complex_json(const Cat& cat, const ChainComplex<Cat>& c) {
  json objs = json::array(), diffs = json::array();
  for (const auto& x : c.objects) objs.push_back(object_json(cat, x));
  for (std::size_t n = 1; n < c.d.size(); ++n) diffs.push_back(morphism_json(cat, c.d[n])["matrix"]);
  return {{"objects", objs}, {"differentials", diffs}};
}

template <class Cat>
ChainComplex<Cat> parse_complex(const Cat& cat, const json& j) {
  std::vector<ObjectOf<Cat>> objs;
  for (const auto& o : j.at("objects")) objs.push_back(parse_object(cat, o));
  std::vector<MorphismOf<Cat>> diffs;
  const auto& ds = j.at("differentials");
  if (ds.size() + 1 != objs.size()) throw InvalidPresentation("a complex needs one differential per positive degree");
  for (std::size_t n = 0; n < ds.size(); ++n) {
    json m{{"domain", object_json(cat, objs[n + 1])}, {"codomain", object_json(cat, objs[n])}, {"matrix", ds[n]}};
    diffs.push_back(parse_morphism(cat, m));
  }
  auto c = make_complex(cat, objs, diffs);
  auto why = validate_complex(cat, c);
  if (why != "ok") throw InvalidPresentation(why);
  return c;
}

template <class Cat>
json simplicial_json(const Cat& cat, const SimplicialObject<Cat>& s) {
  json levels = json::array();
  for (std::size_t n = 0; n <= s.top(); ++n) {
    json faces = json::array(), degs = json::array();
    for (const auto& f : s.faces[n]) faces.push_back(morphism_json(cat, f)["matrix"]);
    for (const auto& d : s.degeneracies[n]) degs.push_back(morphism_json(cat, d)["matrix"]);
    levels.push_back({{"object", object_json(cat, s.levels[n])}, {"faces", faces}, {"degeneracies", degs}});
  }
  json out{{"levels", levels}};
  if (s.augmentation) out["augmentation"] = morphism_json(cat, *s.augmentation);
  return out;
}

/// Interchange document: {"schema_version", "backend", "domain", "presentation"}.
template <class Cat>
json document(const Cat& cat, const ObjectOf<Cat>& x) {
  return {{"schema_version", schema_version}, {"backend", Cat::tag}, {"domain", domain_json(cat.domain())}, {"presentation", object_json(cat, x)}};
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidPresentation("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw InvalidPresentation("malformed JSON in " + path + ": " + ex.what());
  }
}

}  // namespace chainres::io
