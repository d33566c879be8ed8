#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "chainres/core/domain.hpp"
#include "chainres/core/types.hpp"
#include "chainres/support/random.hpp"
#include "chainres/support/smith.hpp"

namespace chainres {

/// Finitely generated modules over Z/m or Z.
///
/// Every object is kept in diagonal form: generator i has additive order orders[i]
/// (0 meaning infinite order). Kernels, cokernels and images are recomputed into this
/// form with Smith reduction, so an object's presentation doubles as its normal form.
class ModCategory {
 public:
  using IntMat = intlinalg::IntMat;
  using IntVec = intlinalg::IntVec;

  struct Object {
    std::vector<i64> orders;
    std::size_t size() const { return orders.size(); }
    friend bool operator==(const Object& a, const Object& b) { return a.orders == b.orders; }
  };

  struct Morphism {
    Object dom, cod;
    IntMat matrix;  // cod.size() x dom.size(), row j reduced modulo cod.orders[j]
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

  static constexpr const char* tag = "mod";
  static constexpr bool additive = true;

  explicit ModCategory(CoefficientDomain d) : domain_(d) {
    switch (d.kind) {
      case CoefficientDomain::Kind::residue_ring:
      case CoefficientDomain::Kind::prime_field: ring_ = d.modulus; break;
      case CoefficientDomain::Kind::integers: ring_ = 0; break;
      default: throw InvalidPresentation("module backend needs a residue ring, prime field or the integers");
    }
  }

  const CoefficientDomain& domain() const { return domain_; }
  /// Characteristic of the base ring; 0 for the integers.
  i64 ring_modulus() const { return ring_; }

  // ---------------------------------------------------------------- objects

  Object zero_object() const { return {}; }
  std::size_t size(const Object& x) const { return x.size(); }
  bool is_zero(const Object& x) const { return x.orders.empty(); }

  /// Diagonal object; orders of 1 are dropped, others checked.
  Object object(std::vector<i64> orders) const {
    Object x;
    for (i64 d : orders) {
      if (d < 0) d = -d;
      if (ring_ != 0) d = d == 0 ? ring_ : gcd(d, ring_);
      if (d != 1) x.orders.push_back(d);
    }
    std::string why = validate(x);
    if (why != "ok") throw InvalidPresentation(why);
    return x;
  }

  /// Module Z^rank / (columns of relations); returns the normal-form object and the
  /// images of the presented generators in it.
  std::pair<Object, IntMat> from_relations(std::size_t rank, const IntMat& relations) const {
    if (relations.rows() != rank) throw InvalidPresentation("relation matrix must have one row per generator");
    Object free_obj;
    free_obj.orders.assign(rank, ring_);
    IntMat rel = relations;
    for (std::size_t i = 0; i < rel.rows(); ++i)
      for (std::size_t j = 0; j < rel.cols(); ++j) rel(i, j) = reduce(rel(i, j), ring_);
    Morphism r{Object{std::vector<i64>(rel.cols(), ring_)}, free_obj, rel};
    Morphism q = cokernel(r);
    return {q.cod, q.matrix};
  }

  std::string validate(const Object& x) const {
    for (std::size_t i = 0; i < x.orders.size(); ++i) {
      i64 d = x.orders[i];
      if (d == 1 || d < 0) return "generator " + std::to_string(i) + " has invalid order " + std::to_string(d);
      if (ring_ == 0) continue;
      if (d == 0) return "free generator over a residue ring";
      if (ring_ % d != 0) return "order " + std::to_string(d) + " does not divide " + std::to_string(ring_);
    }
    return "ok";
  }

  std::string validate(const Morphism& f) const {
    if (f.matrix.rows() != f.cod.size() || f.matrix.cols() != f.dom.size()) return "matrix shape mismatch";
    for (std::size_t i = 0; i < f.dom.size(); ++i) {
      i64 di = f.dom.orders[i];
      for (std::size_t j = 0; j < f.cod.size(); ++j) {
        i64 dj = f.cod.orders[j];
        i64 v = f.matrix(j, i);
        if (dj != 0 && (v < 0 || v >= dj)) return "entry not reduced";
        if (di == 0) continue;
        if (dj == 0 ? v != 0 : checked_mul(di, v) % dj != 0)
          return "generator " + std::to_string(i) + " of order " + std::to_string(di) + " maps to an element of larger order";
      }
    }
    return "ok";
  }

  std::string key(const Object& x) const {
    std::string s = "mod:";
    for (i64 d : x.orders) s += std::to_string(d) + ",";
    return s;
  }

  // -------------------------------------------------------------- morphisms

  Morphism make(const Object& dom, const Object& cod, IntMat m) const {
    if (m.rows() != cod.size() || m.cols() != dom.size()) throw ShapeMismatch("matrix does not match domain/codomain");
    normalize(m, cod);
    return {dom, cod, std::move(m)};
  }

  Morphism identity(const Object& x) const { return {x, x, intlinalg::identity(x.size())}; }
  Morphism zero(const Object& x, const Object& y) const { return {x, y, IntMat(y.size(), x.size(), 0)}; }

  Morphism compose(const Morphism& g, const Morphism& f) const {
    if (!(g.dom == f.cod)) throw ShapeMismatch("composition: codomain/domain mismatch");
    return make(f.dom, g.cod, intlinalg::mul(g.matrix, f.matrix));
  }

  bool equal(const Morphism& f, const Morphism& g) const {
    return f.dom == g.dom && f.cod == g.cod && f.matrix == g.matrix;
  }
  bool is_zero(const Morphism& f) const {
    for (i64 v : f.matrix.data())
      if (v != 0) return false;
    return true;
  }

  Morphism add(const Morphism& f, const Morphism& g) const {
    check_parallel(f, g);
    IntMat m = f.matrix;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = checked_add(m(i, j), g.matrix(i, j));
    return make(f.dom, f.cod, m);
  }
  Morphism negate(const Morphism& f) const {
    IntMat m = f.matrix;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
    return make(f.dom, f.cod, m);
  }
  Morphism subtract(const Morphism& f, const Morphism& g) const { return add(f, negate(g)); }
  Morphism scale(const Morphism& f, i64 c) const {
    IntMat m = f.matrix;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = checked_mul(m(i, j), c);
    return make(f.dom, f.cod, m);
  }

  // ------------------------------------------------------------ constructions

  Subobject kernel(const Morphism& f) const {
    IntMat a = IntMat::hstack(f.matrix, neg_diag(f.cod));
    IntMat ker = intlinalg::kernel(a);
    std::vector<std::size_t> top(f.dom.size());
    for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
    Subobject s = present_submodule(f.dom, ker.rows_subset(top));
    s.normality = Normality::normal;
    return s;
  }

  Morphism cokernel(const Morphism& f) const { return is_zero(f) ? identity(f.cod) : smith_cokernel(f); }

  Morphism smith_cokernel(const Morphism& f) const {
    IntMat r = IntMat::hstack(diag(f.cod), f.matrix);
    auto sm = intlinalg::smith(r);
    Object q;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < f.cod.size(); ++i) {
      i64 s = i < sm.rank ? sm.diag[i] : 0;
      if (s == 1) continue;
      kept.push_back(i);
      q.orders.push_back(s);
    }
    return make(f.cod, q, sm.U.rows_subset(kept));
  }

  Image image(const Morphism& f) const {
    Image im;
    im.mono = present_submodule(f.cod, f.matrix);
    im.mono.normality = Normality::normal;
    auto e = factor_through_mono(f, im.mono.inclusion);
    if (!e) throw EngineError("image factorization failed");
    im.epi = *e;
    return im;
  }

  /// Submodule of x generated by the columns of gens, in normal form.
  Subobject present_submodule(const Object& x, const IntMat& gens) const {
    const std::size_t k = gens.cols();
    Subobject s;
    s.object = zero_object();
    s.inclusion = zero(zero_object(), x);
    s.normality = Normality::normal;
    if (k == 0) return s;
    IntMat b = IntMat::hstack(gens, neg_diag(x));
    IntMat ker = intlinalg::kernel(b);
    std::vector<std::size_t> top(k);
    for (std::size_t i = 0; i < k; ++i) top[i] = i;
    IntMat rel = ker.rows_subset(top);
    auto sm = intlinalg::smith(rel);
    IntMat newgens = intlinalg::mul(gens, sm.Uinv);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < k; ++i) {
      i64 d = i < sm.rank ? sm.diag[i] : 0;
      if (d == 1) continue;
      kept.push_back(i);
      s.object.orders.push_back(d);
    }
    s.inclusion = make(s.object, x, newgens.columns(kept));
    return s;
  }

  Sum coproduct(const Object& x, const Object& y) const {
    Sum s;
    s.left = x;
    s.right = y;
    s.object.orders = x.orders;
    s.object.orders.insert(s.object.orders.end(), y.orders.begin(), y.orders.end());
    IntMat i1(s.object.size(), x.size(), 0), i2(s.object.size(), y.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) i1(i, i) = 1;
    for (std::size_t i = 0; i < y.size(); ++i) i2(x.size() + i, i) = 1;
    s.iota1 = {x, s.object, i1};
    s.iota2 = {y, s.object, i2};
    return s;
  }
  Morphism couniv(const Sum& s, const Morphism& f, const Morphism& g) const {
    if (!(f.dom == s.left) || !(g.dom == s.right) || !(f.cod == g.cod)) throw ShapeMismatch("couniv: arity mismatch");
    return make(s.object, f.cod, IntMat::hstack(f.matrix, g.matrix));
  }

  Product product(const Object& x, const Object& y) const {
    Sum s = coproduct(x, y);
    return {s.object, x, y, {s.object, x, s.iota1.matrix.transpose()}, {s.object, y, s.iota2.matrix.transpose()}};
  }
  Morphism pair(const Product& p, const Morphism& f, const Morphism& g) const {
    if (!(f.cod == p.left) || !(g.cod == p.right) || !(f.dom == g.dom)) throw ShapeMismatch("pair: arity mismatch");
    return make(f.dom, p.object, IntMat::vstack(f.matrix, g.matrix));
  }

  Subobject equalizer(const Morphism& u, const Morphism& v) const {
    Subobject s = kernel(subtract(u, v));
    s.normality = Normality::normal;
    return s;
  }

  /// x with m∘x = g, exact; nullopt if g does not factor.
  std::optional<Morphism> factor_through_mono(const Morphism& g, const Morphism& m) const {
    auto x = constrained_solve(m, g);
    if (!x || !equal(compose(m, *x), g)) return std::nullopt;
    return x;
  }

  /// x with x∘q = g; nullopt when g does not kill the kernel of q.
  std::optional<Morphism> factor_through_epi(const Morphism& g, const Morphism& q) const {
    if (!(g.dom == q.dom)) throw ShapeMismatch("factor_through_epi: domain mismatch");
    IntMat a = IntMat::hstack(q.matrix, diag(q.cod));
    IntMat x(g.cod.size(), q.cod.size(), 0);
    for (std::size_t j = 0; j < q.cod.size(); ++j) {
      IntVec ej(q.cod.size(), 0);
      ej[j] = 1;
      auto sol = intlinalg::solve(a, ej);
      if (!sol) return std::nullopt;
      IntVec y(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(q.dom.size()));
      x.set_column(j, intlinalg::apply(g.matrix, y));
    }
    Morphism out = make(q.cod, g.cod, x);
    if (validate(out) != "ok" || !equal(compose(out, q), g)) return std::nullopt;
    return out;
  }

  bool is_mono(const Morphism& f) const { return is_zero(kernel(f).object); }
  bool is_regular_epi(const Morphism& f) const { return is_zero(cokernel(f).cod); }
  /// Every subobject of a module is normal.
  bool is_normal_mono(const Morphism& m) const { return is_mono(m); }

  // ------------------------------------------------------- free objects, lifts

  Object free_object(std::size_t n) const {
    Object x;
    x.orders.assign(n, ring_);
    return x;
  }
  bool is_free_presentation(const Object& x) const {
    return std::all_of(x.orders.begin(), x.orders.end(), [&](i64 d) { return d == ring_; });
  }
  std::size_t free_rank(const Object& x) const { return x.size(); }

  /// Hom out of a free object given the images of its generators.
  Morphism from_generators(const Object& free, const Object& y, const std::vector<IntVec>& images) const {
    if (!is_free_presentation(free) || images.size() != free.size()) throw ShapeMismatch("from_generators: not a free object");
    return make(free, y, IntMat::from_columns(y.size(), images));
  }
  IntVec generator_image(const Morphism& f, std::size_t i) const { return f.matrix.column(i); }

  /// A preimage of y under e with free parameters zero.
  std::optional<IntVec> preimage(const Morphism& e, const IntVec& y) const {
    IntMat a = IntMat::hstack(e.matrix, diag(e.cod));
    auto sol = intlinalg::solve(a, y);
    if (!sol) return std::nullopt;
    return IntVec(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(e.dom.size()));
  }
  /// Elements of ker(e) used to perturb tie-breaks.
  std::vector<IntVec> kernel_elements(const Morphism& e) const {
    Subobject k = kernel(e);
    std::vector<IntVec> out;
    for (std::size_t i = 0; i < k.object.size(); ++i) out.push_back(k.inclusion.matrix.column(i));
    return out;
  }
  IntVec perturb(const IntVec& v, const std::vector<IntVec>& kernel, Rng& rng) const {
    IntVec out = v;
    for (const auto& k : kernel) {
      i64 c = rng.uniform(0, 2);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked_add(out[i], checked_mul(c, k[i]));
    }
    return out;
  }

  /// Cover by the free module on the normal-form generators. A nonzero seed permutes the
  /// generator order and adds a unitriangular perturbation, giving a different but valid cover.
  Cover projective_cover(const Object& x, std::uint64_t seed = 0) const {
    const std::size_t g = x.size();
    std::vector<std::size_t> perm(g);
    for (std::size_t i = 0; i < g; ++i) perm[i] = i;
    Rng rng = Rng::derive(seed, 0xC0);
    if (seed != 0) rng.shuffle(perm);
    IntMat m(g, g, 0);
    for (std::size_t i = 0; i < g; ++i) {
      m(perm[i], i) = 1;
      if (seed != 0)
        for (std::size_t j = i + 1; j < g; ++j) m(perm[j], i) = rng.uniform(0, 1);
    }
    Cover c;
    c.object = free_object(g);
    c.epi = make(c.object, x, m);
    c.generators = g;
    return c;
  }

  /// Exact lift: g with e∘g = f, respecting the orders of dom(f).
  Search search_lift(const Morphism& f, const Morphism& e, i64 /*budget*/) const {
    Search r;
    r.method = "linear-solve";
    auto g = constrained_solve(e, f);
    r.explored = 1;
    if (g && equal(compose(e, *g), f)) {
      r.verdict = SearchVerdict::found;
      r.map = g;
    } else {
      r.verdict = SearchVerdict::none;
      r.space = 0;
    }
    return r;
  }
  Search find_section(const Morphism& e, i64 budget) const { return search_lift(identity(e.cod), e, budget); }

  // ------------------------------------------------------------- invariants

  Fingerprint fingerprint(const Object& x) const {
    Fingerprint fp;
    fp.kind = "invariant-factors";
    auto sm = intlinalg::smith(diag(x));
    for (std::size_t i = 0; i < x.size(); ++i) {
      i64 d = i < sm.rank ? sm.diag[i] : 0;
      if (d != 1) fp.values.push_back(d);
    }
    return fp;
  }

  /// Explicit isomorphism via both normal forms (always decidable here).
  Search certify_iso(const Object& x, const Object& y, i64 /*budget*/) const {
    Search r;
    r.method = "normal-form";
    auto qx = smith_cokernel(zero(zero_object(), x));
    auto qy = smith_cokernel(zero(zero_object(), y));
    if (!(qx.cod == qy.cod)) {
      r.verdict = SearchVerdict::none;
      return r;
    }
    auto inv = factor_through_epi(identity(y), qy);
    if (!inv) throw EngineError("normal-form map is not invertible");
    r.verdict = SearchVerdict::found;
    r.map = compose(*inv, qx);
    return r;
  }

  // --------------------------------------------------------------- sampling

  Object sample_object(Rng& rng, std::size_t max_rank) const {
    auto rank = static_cast<std::size_t>(rng.uniform(0, static_cast<i64>(max_rank)));
    std::vector<i64> choices;
    if (ring_ == 0) {
      choices = {0, 0, 2, 3, 4, 6};
    } else {
      for (i64 d = 2; d <= ring_; ++d)
        if (ring_ % d == 0) choices.push_back(d);
    }
    Object x;
    for (std::size_t i = 0; i < rank; ++i) x.orders.push_back(choices[static_cast<std::size_t>(rng.uniform(0, static_cast<i64>(choices.size()) - 1))]);
    return x;
  }

  Morphism sample_morphism(Rng& rng, const Object& x, const Object& y) const {
    IntMat m(y.size(), x.size(), 0);
    for (std::size_t j = 0; j < y.size(); ++j)
      for (std::size_t i = 0; i < x.size(); ++i) {
        i64 dj = y.orders[j], di = x.orders[i];
        if (dj == 0) {
          m(j, i) = di == 0 ? rng.uniform(-2, 2) : 0;
        } else {
          i64 step = di == 0 ? 1 : dj / gcd(di, dj);
          m(j, i) = step * rng.uniform(0, dj / step - 1);
        }
      }
    return make(x, y, m);
  }

 private:
  void normalize(IntMat& m, const Object& cod) const {
    for (std::size_t j = 0; j < m.rows(); ++j)
      for (std::size_t i = 0; i < m.cols(); ++i) m(j, i) = reduce(m(j, i), cod.orders[j]);
  }

  IntMat diag(const Object& x) const {
    IntMat d(x.size(), x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) d(i, i) = x.orders[i];
    return d;
  }
  IntMat neg_diag(const Object& x) const {
    IntMat d(x.size(), x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) d(i, i) = -x.orders[i];
    return d;
  }

  void check_parallel(const Morphism& f, const Morphism& g) const {
    if (!(f.dom == g.dom) || !(f.cod == g.cod)) throw ShapeMismatch("morphisms are not parallel");
  }

  /// Solve e∘x = f for a homomorphism x: per domain generator i of order d,
  /// e x ≡ f_i in cod(e) and d x ≡ 0 in dom(e).
  std::optional<Morphism> constrained_solve(const Morphism& e, const Morphism& f) const {
    if (!(e.cod == f.cod)) throw ShapeMismatch("lift: codomain mismatch");
    const std::size_t gE = e.dom.size(), gY = e.cod.size();
    IntMat x(gE, f.dom.size(), 0);
    for (std::size_t i = 0; i < f.dom.size(); ++i) {
      i64 d = f.dom.orders[i];
      std::size_t rows = gY + (d != 0 ? gE : 0);
      IntMat a(rows, gE + gY + gE, 0);
      IntVec b(rows, 0);
      a.paste(0, 0, e.matrix);
      for (std::size_t j = 0; j < gY; ++j) {
        a(j, gE + j) = e.cod.orders[j];
        b[j] = f.matrix(j, i);
      }
      if (d != 0)
        for (std::size_t j = 0; j < gE; ++j) {
          a(gY + j, j) = d;
          a(gY + j, gE + gY + j) = e.dom.orders[j];
        }
      auto sol = intlinalg::solve(a, b);
      if (!sol) return std::nullopt;
      for (std::size_t j = 0; j < gE; ++j) x(j, i) = (*sol)[j];
    }
    return make(f.dom, e.dom, x);
  }

  CoefficientDomain domain_;
  i64 ring_ = 0;
};

}  // namespace chainres
