#include "cox/element.hpp"

#include <algorithm>

#include "core_detail.hpp"
#include "engine.hpp"

namespace cox {

using detail::Access;
using detail::engine_of;
using detail::require_same_system;

CoxeterSystem Element::system() const {
  return Access::make_system(core_);
}

std::string Element::str() const {
  std::string out;
  for (std::size_t i = 0; i < nf_.size(); ++i) {
    if (i) out += ' ';
    out += core_->labels[nf_[i]];
  }
  return out;
}

namespace {

void check_letters(const CoxeterSystem& sys, const Word& w) {
  for (Gen g : w)
    if (g >= sys.rank())
      throw DomainError("word contains an out-of-range generator index");
}

Element mk(const CoxeterSystem& sys, Word nf) {
  return Access::make_element(Access::core(sys), std::move(nf));
}

Element mk(const Element& like, Word nf) {
  return Access::make_element(Access::core(like), std::move(nf));
}

}  // namespace

std::vector<Word> braid_closure(const CoxeterSystem& sys, const Word& w,
                                std::size_t cap) {
  check_letters(sys, w);
  return engine_of(*Access::core(sys)).braid_closure(w, cap);
}

bool is_reduced(const CoxeterSystem& sys, const Word& w) {
  check_letters(sys, w);
  return engine_of(*Access::core(sys)).is_reduced(w);
}

Element reduce(const CoxeterSystem& sys, const Word& w) {
  check_letters(sys, w);
  return mk(sys, engine_of(*Access::core(sys)).reduce(w));
}

Element multiply(const Element& a, const Element& b) {
  require_same_system(a, b);
  const auto& eng = engine_of(*Access::core(a));
  Word acc = a.word();
  for (Gen s : b.word()) acc = eng.right_mult(acc, s);
  return mk(a, std::move(acc));
}

Element multiply(const Element& a, Gen s) {
  return mk(a, engine_of(*Access::core(a)).right_mult(a.word(), s));
}

Element multiply(Gen s, const Element& a) {
  return mk(a, engine_of(*Access::core(a)).left_mult(s, a.word()));
}

Element inverse(const Element& a) {
  // The reversed normal form is reduced; only canonicalization remains.
  Word rev(a.word().rbegin(), a.word().rend());
  const auto& eng = engine_of(*Access::core(a));
  Word acc;
  for (Gen s : rev) acc = eng.right_mult(acc, s);
  return mk(a, std::move(acc));
}

GenSubset left_descents(const Element& a) {
  return GenSubset{engine_of(*Access::core(a)).left_descents(a.word())};
}

GenSubset right_descents(const Element& a) {
  return GenSubset{engine_of(*Access::core(a)).right_descents(a.word())};
}

std::vector<Element> ball(const CoxeterSystem& sys, int radius) {
  if (radius < 0) throw DomainError("negative radius");
  const auto& eng = engine_of(*Access::core(sys));
  const auto& nodes = eng.ball_nodes(radius);
  const auto& levels = eng.ball_levels(radius);
  std::vector<Element> out;
  out.reserve(levels[radius + 1]);
  for (std::size_t i = 0; i < levels[radius + 1]; ++i)
    out.push_back(mk(sys, nodes[i].nf));
  return out;
}

std::vector<Element> sphere(const CoxeterSystem& sys, int radius) {
  if (radius < 0) throw DomainError("negative radius");
  const auto& eng = engine_of(*Access::core(sys));
  const auto& nodes = eng.ball_nodes(radius);
  const auto& levels = eng.ball_levels(radius);
  std::vector<Element> out;
  for (std::size_t i = levels[radius]; i < levels[radius + 1]; ++i)
    out.push_back(mk(sys, nodes[i].nf));
  return out;
}

bool in_standard_parabolic(const Element& a, GenSubset I) {
  for (Gen g : a.word())
    if (!I.contains(g)) return false;
  return true;
}

LeftCosetDecomposition min_coset_rep_left(GenSubset I, const Element& w) {
  const auto& eng = engine_of(*Access::core(w));
  Word factor;  // letters multiplied off the left, in order
  Word rep = w.word();
  for (;;) {
    const std::uint64_t desc = eng.left_descents(rep) & I.bits;
    if (desc == 0) break;
    const Gen s = static_cast<Gen>(__builtin_ctzll(desc));
    factor.push_back(s);
    rep = eng.left_mult(s, rep);
  }
  Word facc;
  for (Gen s : factor) facc = eng.right_mult(facc, s);
  return {mk(w, std::move(facc)), mk(w, std::move(rep))};
}

RightCosetDecomposition min_coset_rep_right(GenSubset I, const Element& w) {
  const auto& eng = engine_of(*Access::core(w));
  Word factor_rev;
  Word rep = w.word();
  for (;;) {
    const std::uint64_t desc = eng.right_descents(rep) & I.bits;
    if (desc == 0) break;
    const Gen s = static_cast<Gen>(__builtin_ctzll(desc));
    factor_rev.push_back(s);
    rep = eng.right_mult(rep, s);
  }
  // w = rep * reverse(factor_rev)
  Word facc;
  for (auto it = factor_rev.rbegin(); it != factor_rev.rend(); ++it)
    facc = eng.right_mult(facc, *it);
  return {mk(w, std::move(rep)), mk(w, std::move(facc))};
}

Element longest_element(const CoxeterSystem& sys, GenSubset I) {
  if (!sys.finite_type(I))
    throw DomainError("longest element requires a spherical subset");
  const auto& eng = engine_of(*Access::core(sys));
  Word acc;
  for (;;) {
    const std::uint64_t asc = I.bits & ~eng.right_descents(acc);
    if (asc == 0) break;
    acc = eng.right_mult(acc, static_cast<Gen>(__builtin_ctzll(asc)));
  }
  return mk(sys, std::move(acc));
}

std::vector<Element> parabolic_elements(const CoxeterSystem& sys,
                                        GenSubset I) {
  const auto& words = engine_of(*Access::core(sys)).parabolic_all(I);
  std::vector<Element> out;
  out.reserve(words.size());
  for (const Word& w : words) out.push_back(mk(sys, w));
  return out;
}

std::vector<Element> parabolic_ball(const CoxeterSystem& sys, GenSubset I,
                                    int radius) {
  auto words = engine_of(*Access::core(sys)).parabolic_upto(I, radius);
  std::vector<Element> out;
  out.reserve(words.size());
  for (Word& w : words) out.push_back(mk(sys, std::move(w)));
  return out;
}

bool normalizer_test(const Element& w, GenSubset I) {
  const Element winv = inverse(w);
  for (Gen s : I.members()) {
    if (!in_standard_parabolic(multiply(multiply(w, s), winv), I))
      return false;
    if (!in_standard_parabolic(multiply(multiply(winv, s), w), I))
      return false;
  }
  return true;
}

LusztigDecomposition lusztig_decompose(const Element& w, GenSubset I) {
  if (!normalizer_test(w, I))
    throw DomainError("element does not normalize the parabolic subgroup");
  auto dec = min_coset_rep_left(I, w);
  LusztigDecomposition out{dec.factor, dec.min_rep, I,
                           DiagramAutomorphism::identity(I)};
  // The minimal coset representative stabilizes the simple roots of I, so
  // conjugation by it permutes I.  Anything else is a defect.
  const Element n_inv = inverse(out.n_I);
  const CoxeterSystem sys = w.system();
  for (Gen s : I.members()) {
    const Element conj = multiply(multiply(n_inv, s), out.n_I);
    if (conj.length() != 1 || !I.contains(conj.word()[0]))
      throw InternalError(
          "normalizer decomposition failed to permute the subset");
    out.delta.map[s] = conj.word()[0];
  }
  for (Gen s : I.members())
    for (Gen t : I.members())
      if (sys.entry(out.delta(s), out.delta(t)) != sys.entry(s, t))
        throw InternalError(
            "normalizer decomposition does not preserve bond labels");
  return out;
}

}  // namespace cox
