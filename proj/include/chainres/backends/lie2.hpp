#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "chainres/core/domain.hpp"
#include "chainres/core/types.hpp"
#include "chainres/support/field_linalg.hpp"
#include "chainres/support/fields.hpp"
#include "chainres/support/random.hpp"

namespace chainres {

/// Nilpotent Lie algebras of class at most 2 over a field (F_p or Q), given by structure
/// constants. The commutator subspace is central, so a homomorphism out of X is fixed by the
/// images of lifts of a basis of X^ab, subject to the linear relations among their brackets.
template <class Field>
class Lie2Category {
 public:
  using Value = typename Field::value_type;
  using Vec = linalg::Vec<Field>;
  using Mat = linalg::Mat<Field>;
  using Sparse = std::vector<std::pair<std::size_t, Value>>;

  struct Entry {
    std::size_t i, j;  // i < j
    Sparse value;      // [e_i, e_j]
    friend bool operator==(const Entry& a, const Entry& b) { return a.i == b.i && a.j == b.j && a.value == b.value; }
  };

  /// Immutable presentation plus cached abelianization data.
  struct Data {
    std::size_t dim = 0;
    std::vector<Entry> table;                           // sorted by (i, j), nonzero only
    std::unordered_map<std::size_t, std::size_t> slot;  // i * dim + j -> table index
    Mat comm_rows;                                      // RREF rows spanning [X, X]
    std::vector<std::size_t> comm_pivots;
    std::vector<std::size_t> ab_positions;              // basis vectors lifting a basis of X^ab
    Mat ab_quotient;                                    // X -> X^ab coordinates
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // generator pairs a < b
    Mat pair_relations;                                 // linear relations among the generator brackets
    Mat lambda;                                         // commutator rows as combinations of generator brackets
  };

  class Object {
   public:
    Object() : data_(empty_data()) {}
    explicit Object(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    const Data& data() const { return *data_; }
    std::size_t size() const { return data_->dim; }
    friend bool operator==(const Object& a, const Object& b) {
      return a.data_ == b.data_ || (a.data_->dim == b.data_->dim && a.data_->table == b.data_->table);
    }

   private:
    static std::shared_ptr<const Data> empty_data() {
      static const auto d = std::make_shared<const Data>();
      return d;
    }
    std::shared_ptr<const Data> data_;
  };

  struct Morphism {
    Object dom, cod;
    Mat matrix;  // cod.dim x dom.dim
  };

  using Subobject = BasicSubobject<Object, Morphism>;
  using Image = BasicImage<Object, Morphism>;
  using Cover = BasicCover<Object, Morphism>;
  using FreenessWitness = BasicFreenessWitness<Object, Morphism>;
  using Search = SearchResult<Morphism>;

  struct Sum {
    Object object, left, right;
    Morphism iota1, iota2;
  };
  struct Product {
    Object object, left, right;
    Morphism pi1, pi2;
  };

  using Triple = std::tuple<std::size_t, std::size_t, std::size_t, Value>;

  static constexpr const char* tag = "lie2";
  static constexpr bool additive = false;

  explicit Lie2Category(Field k = Field{}) : k_(std::move(k)) {}

  const Field& field() const { return k_; }
  CoefficientDomain domain() const {
    if constexpr (std::is_same_v<Field, PrimeField>) return CoefficientDomain::prime_field(k_.p);
    else return CoefficientDomain::rationals();
  }

  // ---------------------------------------------------------------- objects

  Object zero_object() const { return Object(); }
  std::size_t size(const Object& x) const { return x.size(); }
  bool is_zero(const Object& x) const { return x.size() == 0; }

  /// First violated law among alternation and the class-2 law, or "ok".
  std::string validate_triples(std::size_t dim, const std::vector<Triple>& triples) const {
    std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Value>> seen;
    for (const auto& [i, j, kk, v] : triples) {
      if (i >= dim || j >= dim || kk >= dim) return "index out of range";
      if (k_.is_zero(v)) continue;
      if (i == j) return "alternation violated";
      seen[{i, j}][kk] = v;
    }
    for (const auto& [ij, vals] : seen) {
      auto it = seen.find({ij.second, ij.first});
      if (it == seen.end()) continue;
      for (const auto& [kk, v] : vals) {
        auto jt = it->second.find(kk);
        if (jt == it->second.end() || jt->second != k_.neg(v)) return "alternation violated";
      }
    }
    auto table = collect(dim, triples);
    std::map<std::pair<std::size_t, std::size_t>, const Sparse*> at;
    for (const auto& e : table) at[{e.i, e.j}] = &e.value;
    for (const auto& e : table)
      for (std::size_t kk = 0; kk < dim; ++kk) {
        Vec acc = linalg::zero_vec(k_, dim);
        for (const auto& [m, c] : e.value) {
          if (m == kk) continue;
          bool flip = m > kk;
          auto it = at.find(flip ? std::pair{kk, m} : std::pair{m, kk});
          if (it == at.end()) continue;
          for (const auto& [r, v] : *it->second) acc[r] = k_.add(acc[r], k_.mul(flip ? k_.neg(c) : c, v));
        }
        if (!linalg::is_zero(k_, acc)) return "class-2 law violated";
      }
    return validate(build(dim, std::move(table)));
  }

  Object from_triples(std::size_t dim, const std::vector<Triple>& triples) const {
    std::string why = validate_triples(dim, triples);
    if (why != "ok") throw InvalidPresentation(why);
    return build(dim, collect(dim, triples));
  }

  std::vector<Triple> triples(const Object& x) const {
    std::vector<Triple> out;
    for (const auto& e : x.data().table)
      for (const auto& [kk, v] : e.value) out.emplace_back(e.i, e.j, kk, v);
    return out;
  }

  std::string validate(const Object& x) const {
    const Data& d = x.data();
    for (const auto& e : d.table) {
      Vec c = dense(d.dim, e.value);
      for (std::size_t kk = 0; kk < d.dim; ++kk)
        if (!linalg::is_zero(k_, bracket(x, c, unit(d.dim, kk)))) return "class-2 law violated";
    }
    return "ok";
  }

  std::string validate(const Morphism& f) const {
    if (f.matrix.rows() != f.cod.size() || f.matrix.cols() != f.dom.size()) return "matrix shape mismatch";
    for (const auto& e : f.dom.data().table) {
      Vec lhs = linalg::apply(k_, f.matrix, dense(f.dom.size(), e.value));
      Vec rhs = bracket(f.cod, f.matrix.column(e.i), f.matrix.column(e.j));
      if (lhs != rhs) return "bracket not preserved on generators " + std::to_string(e.i) + "," + std::to_string(e.j);
    }
    // pairs with zero bracket in the domain
    const std::size_t n = f.dom.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!f.dom.data().slot.count(i * n + j) &&
            !linalg::is_zero(k_, bracket(f.cod, f.matrix.column(i), f.matrix.column(j))))
          return "bracket not preserved on generators " + std::to_string(i) + "," + std::to_string(j);
    return "ok";
  }

  std::string key(const Object& x) const {
    std::string s = "lie2:" + std::to_string(x.size()) + ":";
    for (const auto& e : x.data().table) {
      s += std::to_string(e.i) + "," + std::to_string(e.j) + "[";
      for (const auto& [kk, v] : e.value) s += std::to_string(kk) + ":" + k_.to_string(v) + " ";
      s += "]";
    }
    return s;
  }

  /// [u, v] for coordinate vectors of x.
  Vec bracket(const Object& x, const Vec& u, const Vec& v) const {
    Vec out = linalg::zero_vec(k_, x.size());
    for (const auto& e : x.data().table) {
      Value c = k_.sub(k_.mul(u[e.i], v[e.j]), k_.mul(u[e.j], v[e.i]));
      if (k_.is_zero(c)) continue;
      for (const auto& [kk, val] : e.value) out[kk] = k_.add(out[kk], k_.mul(c, val));
    }
    return out;
  }

  Vec unit(std::size_t n, std::size_t i) const {
    Vec v = linalg::zero_vec(k_, n);
    v[i] = k_.one();
    return v;
  }

  std::size_t commutator_dim(const Object& x) const { return x.data().comm_pivots.size(); }
  std::size_t ab_dim(const Object& x) const { return x.data().ab_positions.size(); }

  /// Basis of the center as columns.
  linalg::Subspace<Field> center(const Object& x) const {
    const std::size_t n = x.size();
    Mat stacked = linalg::zeros(k_, n * n, n);
    for (std::size_t kk = 0; kk < n; ++kk)
      for (std::size_t j = 0; j < n; ++j) {
        Vec c = bracket(x, unit(n, j), unit(n, kk));
        for (std::size_t r = 0; r < n; ++r) stacked(kk * n + r, j) = c[r];
      }
    return linalg::nullspace(k_, stacked);
  }

  Subobject commutator(const Object& x) const {
    const Data& d = x.data();
    linalg::Subspace<Field> s;
    s.basis = d.comm_rows.transpose();
    if (s.basis.rows() != x.size()) s.basis = linalg::zeros(k_, x.size(), 0);
    s.coords = d.comm_pivots;
    return present_subspace(x, s);
  }

  /// Quotient map X -> X^ab (the cokernel of the commutator inclusion).
  Morphism abelianization(const Object& x) const { return cokernel(commutator(x).inclusion); }

  bool is_abelian(const Object& x) const { return x.data().table.empty(); }
  Object abelian(std::size_t n) const { return build(n, {}); }

  // -------------------------------------------------------------- morphisms

  Morphism make(const Object& dom, const Object& cod, Mat m) const {
    if (m.rows() != cod.size() || m.cols() != dom.size()) throw ShapeMismatch("matrix does not match domain/codomain");
    return {dom, cod, std::move(m)};
  }
  Morphism identity(const Object& x) const { return {x, x, linalg::identity(k_, x.size())}; }
  Morphism zero(const Object& x, const Object& y) const { return {x, y, linalg::zeros(k_, y.size(), x.size())}; }
  Morphism compose(const Morphism& g, const Morphism& f) const {
    if (!(g.dom == f.cod)) throw ShapeMismatch("composition: codomain/domain mismatch");
    return {f.dom, g.cod, linalg::mul(k_, g.matrix, f.matrix)};
  }
  bool equal(const Morphism& f, const Morphism& g) const {
    return f.dom == g.dom && f.cod == g.cod && f.matrix == g.matrix;
  }
  bool is_zero(const Morphism& f) const { return linalg::is_zero(k_, f.matrix); }

  // ------------------------------------------------------------ constructions

  Subobject kernel(const Morphism& f) const {
    Subobject s = present_subspace(f.dom, linalg::nullspace(k_, f.matrix));
    s.normality = Normality::normal;
    return s;
  }

  /// Quotient by the ideal generated by the image: span(im f + [im f, Y]).
  Morphism cokernel(const Morphism& f) const {
    if (is_zero(f)) return identity(f.cod);
    const Object& y = f.cod;
    const std::size_t n = y.size();
    std::vector<Vec> gens;
    for (std::size_t c = 0; c < f.matrix.cols(); ++c) {
      Vec v = f.matrix.column(c);
      if (linalg::is_zero(k_, v)) continue;
      gens.push_back(v);
      for (std::size_t kk = 0; kk < n; ++kk) {
        Vec b = bracket(y, v, unit(n, kk));
        if (!linalg::is_zero(k_, b)) gens.push_back(std::move(b));
      }
    }
    return quotient(y, gens);
  }

  Image image(const Morphism& f) const {
    Image im;
    auto span = linalg::column_span(k_, f.matrix);
    im.mono = present_subspace(f.cod, span);
    im.mono.normality = is_ideal(f.cod, span.basis) ? Normality::normal : Normality::plain;
    auto e = factor_through_mono(f, im.mono.inclusion);
    if (!e) throw EngineError("image factorization failed");
    im.epi = *e;
    return im;
  }

  bool is_ideal(const Object& x, const Mat& basis) const {
    const std::size_t n = x.size();
    if (basis.cols() == 0) return true;
    auto span = linalg::column_span(k_, basis);
    for (std::size_t c = 0; c < basis.cols(); ++c)
      for (std::size_t kk = 0; kk < n; ++kk)
        if (!linalg::coordinates(k_, span, bracket(x, basis.column(c), unit(n, kk)))) return false;
    return true;
  }
  bool is_normal_mono(const Morphism& m) const { return is_mono(m) && is_ideal(m.cod, m.matrix); }

  Sum coproduct(const Object& x, const Object& y) const {
    const Data& dx = x.data();
    const Data& dy = y.data();
    const std::size_t n = dx.dim, m = dy.dim, ax = dx.ab_positions.size(), ay = dy.ab_positions.size();
    const std::size_t total = n + m + ax * ay;
    std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Value>> acc;
    for (const auto& e : dx.table)
      for (const auto& [kk, v] : e.value) acc[{e.i, e.j}][kk] = v;
    for (const auto& e : dy.table)
      for (const auto& [kk, v] : e.value) acc[{n + e.i, n + e.j}][n + kk] = v;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t a = 0; a < ax; ++a) {
          const Value& qa = dx.ab_quotient(a, i);
          if (k_.is_zero(qa)) continue;
          for (std::size_t b = 0; b < ay; ++b) {
            const Value& qb = dy.ab_quotient(b, j);
            if (k_.is_zero(qb)) continue;
            auto& slot = acc[{i, n + j}][n + m + a * ay + b];
            slot = k_.add(slot, k_.mul(qa, qb));
          }
        }
    Sum s;
    s.left = x;
    s.right = y;
    s.object = build(total, flatten(acc));
    Mat i1 = linalg::zeros(k_, total, n), i2 = linalg::zeros(k_, total, m);
    for (std::size_t i = 0; i < n; ++i) i1(i, i) = k_.one();
    for (std::size_t j = 0; j < m; ++j) i2(n + j, j) = k_.one();
    s.iota1 = {x, s.object, i1};
    s.iota2 = {y, s.object, i2};
    return s;
  }

  /// The tensor generator t_ab goes to [f(lift a), g(lift b)].
  Morphism couniv(const Sum& s, const Morphism& f, const Morphism& g) const {
    if (!(f.dom == s.left) || !(g.dom == s.right) || !(f.cod == g.cod)) throw ShapeMismatch("couniv: arity mismatch");
    const auto& ax = s.left.data().ab_positions;
    const auto& ay = s.right.data().ab_positions;
    Mat m = linalg::zeros(k_, f.cod.size(), s.object.size());
    m.paste(0, 0, f.matrix);
    m.paste(0, s.left.size(), g.matrix);
    const std::size_t base = s.left.size() + s.right.size();
    for (std::size_t a = 0; a < ax.size(); ++a)
      for (std::size_t b = 0; b < ay.size(); ++b)
        m.set_column(base + a * ay.size() + b, bracket(f.cod, f.matrix.column(ax[a]), g.matrix.column(ay[b])));
    return {s.object, f.cod, m};
  }

  Product product(const Object& x, const Object& y) const {
    const std::size_t n = x.size(), m = y.size();
    std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Value>> acc;
    for (const auto& e : x.data().table)
      for (const auto& [kk, v] : e.value) acc[{e.i, e.j}][kk] = v;
    for (const auto& e : y.data().table)
      for (const auto& [kk, v] : e.value) acc[{n + e.i, n + e.j}][n + kk] = v;
    Product p;
    p.left = x;
    p.right = y;
    p.object = build(n + m, flatten(acc));
    Mat p1 = linalg::zeros(k_, n, n + m), p2 = linalg::zeros(k_, m, n + m);
    for (std::size_t i = 0; i < n; ++i) p1(i, i) = k_.one();
    for (std::size_t j = 0; j < m; ++j) p2(j, n + j) = k_.one();
    p.pi1 = {p.object, x, p1};
    p.pi2 = {p.object, y, p2};
    return p;
  }
  Morphism pair(const Product& p, const Morphism& f, const Morphism& g) const {
    if (!(f.cod == p.left) || !(g.cod == p.right) || !(f.dom == g.dom)) throw ShapeMismatch("pair: arity mismatch");
    return {f.dom, p.object, Mat::vstack(f.matrix, g.matrix)};
  }

  Subobject equalizer(const Morphism& u, const Morphism& v) const {
    if (!(u.dom == v.dom) || !(u.cod == v.cod)) throw ShapeMismatch("equalizer: morphisms are not parallel");
    auto ns = linalg::nullspace(k_, linalg::sub(k_, u.matrix, v.matrix));
    Subobject s = present_subspace(u.dom, ns);
    s.normality = is_ideal(u.dom, ns.basis) ? Normality::normal : Normality::plain;
    return s;
  }

  std::optional<Morphism> factor_through_mono(const Morphism& g, const Morphism& m) const {
    if (!(g.cod == m.cod)) throw ShapeMismatch("factor_through_mono: codomain mismatch");
    auto x = linalg::solve_matrix(k_, m.matrix, g.matrix);
    if (!x) return std::nullopt;
    Morphism out{g.dom, m.dom, *x};
    if (!equal(compose(m, out), g)) return std::nullopt;
    if (!is_mono(m) && validate(out) != "ok") return std::nullopt;
    return out;
  }

  std::optional<Morphism> factor_through_epi(const Morphism& g, const Morphism& q) const {
    if (!(g.dom == q.dom)) throw ShapeMismatch("factor_through_epi: domain mismatch");
    auto pre = linalg::solve_matrix(k_, q.matrix, linalg::identity(k_, q.cod.size()));
    if (!pre) return std::nullopt;
    Morphism out{q.cod, g.cod, linalg::mul(k_, g.matrix, *pre)};
    if (!equal(compose(out, q), g)) return std::nullopt;
    return out;
  }

  bool is_mono(const Morphism& f) const { return linalg::rank(k_, f.matrix) == f.dom.size(); }
  bool is_regular_epi(const Morphism& f) const { return linalg::rank(k_, f.matrix) == f.cod.size(); }

  // ------------------------------------------------------- free objects, lifts

  /// Basis e_1..e_n followed by [e_i, e_j] for i < j in lexicographic order.
  Object free_object(std::size_t n) const {
    std::vector<Entry> table;
    std::size_t next = n;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) table.push_back({i, j, {{next++, k_.one()}}});
    return build(next, std::move(table));
  }
  bool is_free_presentation(const Object& x) const { return x == free_object(ab_dim(x)); }
  std::size_t free_rank(const Object& x) const { return ab_dim(x); }

  /// Hom out of a free object from the images of its generators.
  Morphism from_generators(const Object& free, const Object& y, const std::vector<Vec>& images) const {
    if (!is_free_presentation(free) || images.size() != ab_dim(free)) throw ShapeMismatch("from_generators: not a free object");
    auto f = extend(free, y, images);
    if (!f) throw EngineError("free extension failed");
    return *f;
  }
  Vec generator_image(const Morphism& f, std::size_t i) const { return f.matrix.column(f.dom.data().ab_positions[i]); }

  /// The linear map sending the generator lifts of x to `images`, if it is a homomorphism.
  std::optional<Morphism> extend(const Object& x, const Object& y, const std::vector<Vec>& images) const {
    const Data& d = x.data();
    const std::size_t a = d.ab_positions.size();
    if (images.size() != a) throw ShapeMismatch("extend: wrong number of generator images");
    std::vector<Vec> brackets;
    brackets.reserve(d.pairs.size());
    for (const auto& [p, q] : d.pairs) brackets.push_back(bracket(y, images[p], images[q]));
    for (std::size_t r = 0; r < d.pair_relations.cols(); ++r) {
      Vec acc = linalg::zero_vec(k_, y.size());
      for (std::size_t t = 0; t < d.pairs.size(); ++t) linalg::axpy(k_, acc, d.pair_relations(t, r), brackets[t]);
      if (!linalg::is_zero(k_, acc)) return std::nullopt;
    }
    Mat m = linalg::zeros(k_, y.size(), x.size());
    for (std::size_t g = 0; g < a; ++g) m.set_column(d.ab_positions[g], images[g]);
    for (std::size_t r = 0; r < d.comm_pivots.size(); ++r) {
      Vec col = linalg::zero_vec(k_, y.size());
      for (std::size_t t = 0; t < d.pairs.size(); ++t) linalg::axpy(k_, col, d.lambda(t, r), brackets[t]);
      for (std::size_t g = 0; g < a; ++g) linalg::axpy(k_, col, k_.neg(d.comm_rows(r, d.ab_positions[g])), images[g]);
      m.set_column(d.comm_pivots[r], col);
    }
    return Morphism{x, y, m};
  }

  std::optional<Vec> preimage(const Morphism& e, const Vec& y) const { return linalg::solve(k_, e.matrix, y); }
  std::vector<Vec> kernel_elements(const Morphism& e) const {
    auto ns = linalg::nullspace(k_, e.matrix);
    std::vector<Vec> out;
    for (std::size_t c = 0; c < ns.dim(); ++c) out.push_back(ns.basis.column(c));
    return out;
  }
  Vec perturb(const Vec& v, const std::vector<Vec>& kernel, Rng& rng) const {
    Vec out = v;
    for (const auto& kv : kernel) linalg::axpy(k_, out, k_.from_int(rng.uniform(0, 2)), kv);
    return out;
  }

  /// Free object on a basis of X^ab; generator i maps to an abelianization lift. A nonzero seed
  /// permutes the lifts and adds a unitriangular perturbation.
  Cover projective_cover(const Object& x, std::uint64_t seed = 0) const {
    const auto& ab = x.data().ab_positions;
    const std::size_t a = ab.size();
    std::vector<std::size_t> perm(a);
    for (std::size_t i = 0; i < a; ++i) perm[i] = i;
    Rng rng = Rng::derive(seed, 0xC0);
    if (seed != 0) rng.shuffle(perm);
    std::vector<Vec> images;
    for (std::size_t i = 0; i < a; ++i) {
      Vec v = unit(x.size(), ab[perm[i]]);
      if (seed != 0)
        for (std::size_t j = i + 1; j < a; ++j) linalg::axpy(k_, v, k_.from_int(rng.uniform(0, 1)), unit(x.size(), ab[perm[j]]));
      images.push_back(std::move(v));
    }
    Cover c;
    c.object = free_object(a);
    c.epi = from_generators(c.object, x, images);
    c.generators = a;
    return c;
  }

  /// Lift f: P -> Y through e: E -> Y. The generator images are pinned down up to ker(e);
  /// the remaining affine space is enumerated (zero offset first) against the bracket relations.
  Search search_lift(const Morphism& f, const Morphism& e, i64 budget) const {
    if (!(f.cod == e.cod)) throw ShapeMismatch("lift: codomain mismatch");
    Search r;
    r.method = "enumeration";
    const Data& d = f.dom.data();
    const std::size_t a = d.ab_positions.size();
    std::vector<Vec> base;
    for (std::size_t g = 0; g < a; ++g) {
      auto y = preimage(e, f.matrix.column(d.ab_positions[g]));
      if (!y) {
        r.verdict = SearchVerdict::none;
        r.space = 0;
        return r;
      }
      base.push_back(*y);
    }
    auto kern = kernel_elements(e);
    const std::size_t kdim = kern.size();
    const std::size_t params = kdim * a;
    auto attempt = [&](const std::vector<Value>& z) -> std::optional<Morphism> {
      std::vector<Vec> ys = base;
      for (std::size_t g = 0; g < a; ++g)
        for (std::size_t t = 0; t < kdim; ++t) linalg::axpy(k_, ys[g], z[g * kdim + t], kern[t]);
      auto h = extend(f.dom, e.dom, ys);
      if (h && equal(compose(e, *h), f)) return h;
      return std::nullopt;
    };
    if (!k_.finite()) {
      if (budget >= 1) {
        r.explored = 1;
        if (auto h = attempt(std::vector<Value>(params, k_.zero()))) {
          r.verdict = SearchVerdict::found;
          r.map = h;
          return r;
        }
      }
      r.verdict = SearchVerdict::unknown;
      return r;
    }
    const i64 p = k_.order();
    const i64 space = saturating_pow(p, static_cast<i64>(params), std::max<i64>(budget, 1));
    std::vector<Value> z(params, k_.zero());
    for (i64 idx = 0; idx < space; ++idx) {
      if (r.explored >= budget) {
        r.verdict = SearchVerdict::unknown;
        return r;
      }
      i64 rem = idx;
      for (std::size_t t = 0; t < params; ++t) {
        z[t] = k_.element(rem % p);
        rem /= p;
      }
      ++r.explored;
      if (auto h = attempt(z)) {
        r.verdict = SearchVerdict::found;
        r.map = h;
        return r;
      }
    }
    if (space > std::max<i64>(budget, 1)) {
      r.verdict = SearchVerdict::unknown;
      return r;
    }
    r.verdict = SearchVerdict::none;
    r.space = space;
    return r;
  }

  Search find_section(const Morphism& e, i64 budget) const { return search_lift(identity(e.cod), e, budget); }

  // ------------------------------------------------------------- invariants

  /// (dim, commutator dim, center dim, profile flag, rank profile of ad).
  /// Profile flag 1: histogram of rank(ad_x) over all x (small finite objects);
  /// flag 0: the generic rank of ad over deterministic samples.
  Fingerprint fingerprint(const Object& x) const {
    Fingerprint fp;
    fp.kind = "lie2-profile";
    const std::size_t n = x.size();
    if (n == 0) return fp;
    fp.values = {static_cast<i64>(n), static_cast<i64>(commutator_dim(x)), static_cast<i64>(center(x).dim())};
    const i64 total = k_.finite() ? saturating_pow(k_.order(), static_cast<i64>(n), 2187) : 2188;
    if (total <= 2187) {
      fp.values.push_back(1);
      std::vector<i64> hist(n + 1, 0);
      Vec v = linalg::zero_vec(k_, n);
      for (i64 idx = 0; idx < total; ++idx) {
        i64 rem = idx;
        for (std::size_t t = 0; t < n; ++t) {
          v[t] = k_.element(rem % k_.order());
          rem /= k_.order();
        }
        ++hist[ad_rank(x, v)];
      }
      fp.values.insert(fp.values.end(), hist.begin(), hist.end());
    } else {
      fp.values.push_back(0);
      Rng rng(0x5eed);
      std::size_t best = 0;
      for (int t = 0; t < 6; ++t) {
        Vec v = linalg::zero_vec(k_, n);
        for (auto& c : v) c = k_.from_int(rng.uniform(-50, 50));
        best = std::max(best, ad_rank(x, v));
      }
      fp.values.push_back(static_cast<i64>(best));
    }
    return fp;
  }

  /// Explicit isomorphism by enumerating invertible maps on abelianizations.
  Search certify_iso(const Object& x, const Object& y, i64 budget) const {
    Search r;
    r.method = "enumeration";
    if (!(fingerprint(x) == fingerprint(y))) {
      r.verdict = SearchVerdict::none;
      return r;
    }
    const std::size_t a = ab_dim(x);
    const auto& yab = y.data().ab_positions;
    auto attempt = [&](const Mat& coeffs) -> std::optional<Morphism> {
      if (linalg::rank(k_, coeffs) != a) return std::nullopt;
      std::vector<Vec> ys;
      for (std::size_t g = 0; g < a; ++g) {
        Vec v = linalg::zero_vec(k_, y.size());
        for (std::size_t b = 0; b < a; ++b) v[yab[b]] = coeffs(b, g);
        ys.push_back(std::move(v));
      }
      auto h = extend(x, y, ys);
      if (h && is_mono(*h) && is_regular_epi(*h)) return h;
      return std::nullopt;
    };
    const std::size_t params = a * a;
    const i64 space = k_.finite() ? saturating_pow(k_.order(), static_cast<i64>(params), std::max<i64>(budget, 1)) : 1;
    Mat coeffs = linalg::zeros(k_, a, a);
    for (i64 idx = 0; idx < space && r.explored < budget; ++idx) {
      i64 rem = idx;
      if (k_.finite()) {
        for (std::size_t t = 0; t < params; ++t) {
          coeffs(t % a, t / a) = k_.element(rem % k_.order());
          rem /= k_.order();
        }
      } else {
        coeffs = linalg::identity(k_, a);
      }
      ++r.explored;
      if (auto h = attempt(coeffs)) {
        r.verdict = SearchVerdict::found;
        r.map = h;
        return r;
      }
    }
    r.verdict = (k_.finite() && space <= std::max<i64>(budget, 1) && r.explored == space) ? SearchVerdict::none : SearchVerdict::unknown;
    if (r.verdict == SearchVerdict::none) r.space = space;
    return r;
  }

  // --------------------------------------------------------------- sampling

  /// a generators plus c central directions, random brackets into the central part,
  /// optionally followed by a random change of basis.
  Object sample_object(Rng& rng, std::size_t max_dim) const {
    const auto total = static_cast<std::size_t>(rng.uniform(0, static_cast<i64>(max_dim)));
    if (total == 0) return zero_object();
    const auto a = static_cast<std::size_t>(rng.uniform(1, static_cast<i64>(total)));
    const std::size_t c = total - a;
    std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Value>> acc;
    if (c > 0)
      for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = i + 1; j < a; ++j)
          for (std::size_t kk = a; kk < total; ++kk) {
            Value v = scalar(rng);
            if (!k_.is_zero(v)) acc[{i, j}][kk] = v;
          }
    Object x = build(total, flatten(acc));
    if (rng.coin()) x = transport(x, random_invertible(rng, total));
    return x;
  }

  Morphism sample_morphism(Rng& rng, const Object& x, const Object& y) const {
    switch (rng.uniform(0, 5)) {
      case 0: return zero(x, y);
      case 1:
        if (x == y) return identity(x);
        [[fallthrough]];
      case 2: return central_map(rng, x, y);
      default: {
        for (int tries = 0; tries < 6; ++tries) {
          std::vector<Vec> ys;
          for (std::size_t g = 0; g < ab_dim(x); ++g) ys.push_back(random_vec(rng, y.size()));
          if (auto h = extend(x, y, ys)) return *h;
        }
        return central_map(rng, x, y);
      }
    }
  }

  /// Same algebra in the basis given by the columns of p.
  Object transport(const Object& x, const Mat& p) const {
    auto pinv = linalg::inverse(k_, p);
    if (!pinv) throw InvalidPresentation("change of basis is not invertible");
    const std::size_t n = x.size();
    std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Value>> acc;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Vec b = linalg::apply(k_, *pinv, bracket(x, p.column(i), p.column(j)));
        for (std::size_t kk = 0; kk < n; ++kk)
          if (!k_.is_zero(b[kk])) acc[{i, j}][kk] = b[kk];
      }
    return build(n, flatten(acc));
  }

 private:
  Value scalar(Rng& rng) const {
    if (k_.finite()) return k_.element(rng.uniform(0, k_.order() - 1));
    return k_.from_int(rng.uniform(-2, 2));
  }
  Vec random_vec(Rng& rng, std::size_t n) const {
    Vec v(n);
    for (auto& c : v) c = scalar(rng);
    return v;
  }
  Mat random_invertible(Rng& rng, std::size_t n) const {
    Mat l = linalg::identity(k_, n), u = linalg::identity(k_, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        l(i, j) = scalar(rng);
        u(j, i) = scalar(rng);
      }
    return linalg::mul(k_, l, u);
  }

  /// A map into the center of y that kills [x, x].
  Morphism central_map(Rng& rng, const Object& x, const Object& y) const {
    auto z = center(y);
    Mat r = linalg::zeros(k_, z.dim(), ab_dim(x));
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = scalar(rng);
    Mat m = linalg::mul(k_, linalg::mul(k_, z.basis, r), x.data().ab_quotient);
    if (m.rows() != y.size()) m = linalg::zeros(k_, y.size(), x.size());
    return {x, y, m};
  }

  std::size_t ad_rank(const Object& x, const Vec& v) const {
    const std::size_t n = x.size();
    Mat ad = linalg::zeros(k_, n, n);
    for (std::size_t j = 0; j < n; ++j) ad.set_column(j, bracket(x, v, unit(n, j)));
    return linalg::rank(k_, ad);
  }

  Vec dense(std::size_t n, const Sparse& s) const {
    Vec v = linalg::zero_vec(k_, n);
    for (const auto& [kk, val] : s) v[kk] = val;
    return v;
  }

  std::vector<Entry> collect(std::size_t dim, const std::vector<Triple>& triples) const {
    std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Value>> acc;
    for (const auto& [i, j, kk, v] : triples) {
      if (i == j || k_.is_zero(v) || i >= dim || j >= dim) continue;
      if (i < j) acc[{i, j}][kk] = v;
      else if (!acc.count({j, i}) || !acc[{j, i}].count(kk)) acc[{j, i}][kk] = k_.neg(v);
    }
    return flatten(acc);
  }

  std::vector<Entry> flatten(const std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Value>>& acc) const {
    std::vector<Entry> table;
    for (const auto& [ij, vals] : acc) {
      Entry e{ij.first, ij.second, {}};
      for (const auto& [kk, v] : vals)
        if (!k_.is_zero(v)) e.value.emplace_back(kk, v);
      if (!e.value.empty()) table.push_back(std::move(e));
    }
    return table;
  }

  Object build(std::size_t dim, std::vector<Entry> table) const {
    auto d = std::make_shared<Data>();
    d->dim = dim;
    d->table = std::move(table);
    for (std::size_t t = 0; t < d->table.size(); ++t) d->slot[d->table[t].i * dim + d->table[t].j] = t;
    Mat spans = linalg::zeros(k_, d->table.size(), dim);
    for (std::size_t t = 0; t < d->table.size(); ++t)
      for (const auto& [kk, v] : d->table[t].value) spans(t, kk) = v;
    auto ech = linalg::rref(k_, spans);
    d->comm_rows = ech.reduced;
    d->comm_pivots = ech.pivots;
    std::vector<bool> is_pivot(dim, false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    for (std::size_t j = 0; j < dim; ++j)
      if (!is_pivot[j]) d->ab_positions.push_back(j);
    const std::size_t a = d->ab_positions.size();
    d->ab_quotient = linalg::zeros(k_, a, dim);
    for (std::size_t g = 0; g < a; ++g) d->ab_quotient(g, d->ab_positions[g]) = k_.one();
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      for (std::size_t g = 0; g < a; ++g) d->ab_quotient(g, ech.pivots[r]) = k_.neg(ech.reduced(r, d->ab_positions[g]));
    for (std::size_t p = 0; p < a; ++p)
      for (std::size_t q = p + 1; q < a; ++q) d->pairs.emplace_back(p, q);
    Object tmp(d);
    Mat w = linalg::zeros(k_, dim, d->pairs.size());
    for (std::size_t t = 0; t < d->pairs.size(); ++t)
      w.set_column(t, bracket(tmp, unit(dim, d->ab_positions[d->pairs[t].first]), unit(dim, d->ab_positions[d->pairs[t].second])));
    d->pair_relations = linalg::nullspace(k_, w).basis;
    if (d->pair_relations.rows() != d->pairs.size()) d->pair_relations = linalg::zeros(k_, d->pairs.size(), 0);
    auto lam = linalg::solve_matrix(k_, w, d->comm_rows.transpose().rows() == dim ? d->comm_rows.transpose() : linalg::zeros(k_, dim, 0));
    if (!lam) throw EngineError("generator brackets do not span the commutator");
    d->lambda = *lam;
    return Object(std::shared_ptr<const Data>(std::move(d)));
  }

  /// Restriction of the bracket to a subspace that must be closed under it.
  Subobject present_subspace(const Object& x, const linalg::Subspace<Field>& s) const {
    const std::size_t m = s.dim();
    std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Value>> acc;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        Vec b = bracket(x, s.basis.column(i), s.basis.column(j));
        if (linalg::is_zero(k_, b)) continue;
        auto c = linalg::coordinates(k_, s, b);
        if (!c) throw EngineError("subspace is not closed under the bracket");
        for (std::size_t kk = 0; kk < m; ++kk)
          if (!k_.is_zero((*c)[kk])) acc[{i, j}][kk] = (*c)[kk];
      }
    Subobject sub;
    sub.object = build(m, flatten(acc));
    Mat basis = s.basis.rows() == x.size() ? s.basis : linalg::zeros(k_, x.size(), 0);
    sub.inclusion = {sub.object, x, basis};
    sub.normality = Normality::unknown;
    return sub;
  }

  /// Quotient of y by the span of `gens` (assumed to be an ideal).
  Morphism quotient(const Object& y, const std::vector<Vec>& gens) const {
    const std::size_t n = y.size();
    Mat rows = linalg::zeros(k_, gens.size(), n);
    for (std::size_t t = 0; t < gens.size(); ++t)
      for (std::size_t j = 0; j < n; ++j) rows(t, j) = gens[t][j];
    auto ech = linalg::rref(k_, rows);
    std::vector<bool> is_pivot(n, false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < n; ++j)
      if (!is_pivot[j]) keep.push_back(j);
    Mat q = linalg::zeros(k_, keep.size(), n);
    for (std::size_t g = 0; g < keep.size(); ++g) q(g, keep[g]) = k_.one();
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      for (std::size_t g = 0; g < keep.size(); ++g) q(g, ech.pivots[r]) = k_.neg(ech.reduced(r, keep[g]));
    std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Value>> acc;
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = i + 1; j < keep.size(); ++j) {
        Vec b = linalg::apply(k_, q, bracket(y, unit(n, keep[i]), unit(n, keep[j])));
        for (std::size_t kk = 0; kk < keep.size(); ++kk)
          if (!k_.is_zero(b[kk])) acc[{i, j}][kk] = b[kk];
      }
    Object qobj = build(keep.size(), flatten(acc));
    return {y, qobj, q};
  }

  Field k_;
};

using Lie2Fp = Lie2Category<PrimeField>;
using Lie2Q = Lie2Category<RationalField>;

}  // namespace chainres
