#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainres/resolutions/resolution.hpp"

namespace chainres {

/// Condition (P) failure carrying the kernel that could not be certified projective.
template <class Cat>
class ConditionPFailure : public ConditionPObstruction {
 public:
  ConditionPFailure(const std::string& what, SearchVerdict tag, ObjectOf<Cat> kernel, std::size_t degree)
      : ConditionPObstruction(what, tag), kernel_(std::move(kernel)), degree_(degree) {}
  const ObjectOf<Cat>& kernel() const { return kernel_; }
  std::size_t degree() const { return degree_; }

 private:
  ObjectOf<Cat> kernel_;
  std::size_t degree_;
};

/// Resolutions C(X) → A(Y) → E(Z) over a short exact sequence X → Y → Z, degreewise split.
template <class Cat>
struct HorseshoeOutput {
  ProjectiveResolution<Cat> left, middle, right;
  ChainMap<Cat> alpha, beta;
  std::vector<MorphismOf<Cat>> sections;  // E_n → A_n with β_n∘section = 1
  bool split_input = false;
};

/// Builds the middle and left resolutions level by level: pull back the right augmentation
/// along the epi, cover the pullback, and take the kernel of the composite onto E_n.
template <class Cat>
HorseshoeOutput<Cat> horseshoe(const Cat& cat, const ShortExactSequence<Cat>& ses, const ProjectiveResolution<Cat>& e,
                               std::size_t maxdeg, i64 budget = 1'000'000) {
  if (e.top() < maxdeg) throw InsufficientTruncation("right resolution is shorter than the requested degree");
  std::string v = validate_ses(cat, ses);
  if (v != "ok") throw ShapeMismatch("horseshoe input: " + v);
  if (!(ses.f.cod == e.resolved)) throw ShapeMismatch("horseshoe: resolution does not resolve the quotient");

  HorseshoeOutput<Cat> out;
  out.split_input = ses.section.has_value();
  out.right = e;
  out.left.resolved = ses.k.dom;
  out.middle.resolved = ses.k.cod;

  std::vector<ObjectOf<Cat>> cobj, aobj;
  std::vector<MorphismOf<Cat>> cd, ad;  // d_1.. for the left and middle rows

  // current level data
  MorphismOf<Cat> k = ses.k, f = ses.f;
  std::optional<MorphismOf<Cat>> gamma = ses.section;
  MorphismOf<Cat> eta_e = e.augmentation;
  std::optional<MorphismOf<Cat>> prev_c_incl, prev_a_incl;  // inclusions of the previous kernels

  for (std::size_t n = 0; n <= maxdeg; ++n) {
    auto pb = pullback(cat, eta_e, f);
    MorphismOf<Cat> i;
    if (gamma) {
      i = pullback_pair(cat, pb, cat.identity(e.complex.objects[n]), cat.compose(*gamma, eta_e));
    } else {
      i = lift_through(cat, cat.identity(e.complex.objects[n]), pb.first, e.witnesses[n], budget);
    }
    auto cover = cat.projective_cover(pb.object);
    auto i0 = lift_through(cat, i, cover.epi, e.witnesses[n], budget);
    auto beta = cat.compose(pb.first, cover.epi);
    auto ck = cat.kernel(beta);
    auto wit = projective_witness(cat, ck.object, budget);
    if (wit.kind == Cat::FreenessWitness::Kind::none)
      throw ConditionPFailure<Cat>("kernel of the split epi onto E_" + std::to_string(n) + " is not certified projective",
                                   wit.search, ck.object, n);
    auto eta_a = cat.compose(pb.second, cover.epi);
    auto eta_c = cat.factor_through_mono(cat.compose(eta_a, ck.inclusion), k);
    if (!eta_c) throw EngineError("horseshoe: left augmentation does not factor");

    aobj.push_back(cover.object);
    cobj.push_back(ck.object);
    out.middle.witnesses.push_back(Cat::FreenessWitness::free(cover.generators));
    out.left.witnesses.push_back(wit);
    out.alpha.components.push_back(ck.inclusion);
    out.beta.components.push_back(beta);
    out.sections.push_back(i0);
    if (n == 0) {
      out.middle.augmentation = eta_a;
      out.left.augmentation = *eta_c;
    } else {
      ad.push_back(cat.compose(*prev_a_incl, eta_a));
      cd.push_back(cat.compose(*prev_c_incl, *eta_c));
      out.middle.dbar.push_back(eta_a);
      out.left.dbar.push_back(*eta_c);
    }
    if (n == maxdeg) break;

    // next level: the sequence of kernels of the three augmentations
    auto ka = cat.kernel(eta_a);
    auto kc = cat.kernel(*eta_c);
    const auto& ke = e.cycles[n];
    out.middle.cycles.push_back(ka);
    out.left.cycles.push_back(kc);
    auto k_next = cat.factor_through_mono(cat.compose(ck.inclusion, kc.inclusion), ka.inclusion);
    auto f_next = cat.factor_through_mono(cat.compose(beta, ka.inclusion), ke.inclusion);
    if (!k_next || !f_next) throw EngineError("horseshoe: induced kernel maps do not exist");
    if (gamma) {
      auto g_next = cat.factor_through_mono(cat.compose(i0, ke.inclusion), ka.inclusion);
      if (!g_next) throw EngineError("horseshoe: section does not restrict to kernels");
      gamma = *g_next;
    }
    k = *k_next;
    f = *f_next;
    eta_e = e.dbar[n];
    prev_a_incl = ka.inclusion;
    prev_c_incl = kc.inclusion;
  }
  out.middle.complex = make_complex(cat, aobj, ad);
  out.left.complex = make_complex(cat, cobj, cd);
  out.alpha.source = out.left.complex;
  out.alpha.target = out.middle.complex;
  out.beta.source = out.middle.complex;
  out.beta.target = e.complex;
  return out;
}

struct HorseshoeReport {
  bool ok = true;
  std::string message = "ok";
  bool rows_ok = false, columns_ok = false, sections_chain_map = false;
};

template <class Cat>
HorseshoeReport validate_horseshoe(const Cat& cat, const HorseshoeOutput<Cat>& h, const ShortExactSequence<Cat>& ses) {
  HorseshoeReport rep;
  auto fail = [&](std::string m) {
    rep.ok = false;
    rep.message = std::move(m);
    return rep;
  };
  for (const auto* r : {&h.left, &h.middle}) {
    auto v = validate_resolution(cat, *r);
    if (!v.ok) return fail("row: " + v.message);
  }
  rep.rows_ok = true;
  if (validate_chain_map(cat, h.alpha) != "ok") return fail("alpha is not a chain map");
  if (validate_chain_map(cat, h.beta) != "ok") return fail("beta is not a chain map");
  if (!cat.equal(cat.compose(h.middle.augmentation, h.alpha.components[0]), cat.compose(ses.k, h.left.augmentation)))
    return fail("left augmentation square fails");
  if (!cat.equal(cat.compose(h.right.augmentation, h.beta.components[0]), cat.compose(ses.f, h.middle.augmentation)))
    return fail("right augmentation square fails");
  for (std::size_t n = 0; n < h.alpha.components.size(); ++n) {
    ShortExactSequence<Cat> col{h.alpha.components[n], h.beta.components[n], h.sections[n]};
    auto v = validate_ses(cat, col);
    if (v != "ok") return fail("column " + std::to_string(n) + ": " + v);
  }
  rep.columns_ok = true;
  rep.sections_chain_map = true;
  for (std::size_t n = 1; n < h.sections.size(); ++n)
    if (!cat.equal(cat.compose(h.middle.complex.d[n], h.sections[n]), cat.compose(h.sections[n - 1], h.right.complex.d[n])))
      rep.sections_chain_map = false;
  if (h.split_input) {
    if (!rep.sections_chain_map) return fail("split input but the sections are not a chain map");
    if (!cat.equal(cat.compose(h.middle.augmentation, h.sections[0]), cat.compose(*ses.section, h.right.augmentation)))
      return fail("sections are not compatible with the input section");
  }
  return rep;
}

}  // namespace chainres
