#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "cox/system.hpp"
#include "cox/types.hpp"

namespace cox {

namespace detail {
struct SystemCore;
struct Access;
}  // namespace detail

// A group element in canonical reduced normal form.  The normal form is the
// reduced word obtained by repeatedly stripping the smallest left descent,
// equivalently the lexicographically least reduced expression.  Equality of
// elements is equality of normal forms.
class Element {
public:
  Element() = default;  // invalid element; usable only as a placeholder

  int length() const { return static_cast<int>(nf_.size()); }
  bool is_identity() const { return nf_.empty(); }
  const Word& word() const { return nf_; }
  bool valid() const { return core_ != nullptr; }

  CoxeterSystem system() const;
  std::string str() const;  // labels joined by spaces

  friend bool operator==(const Element& a, const Element& b) {
    return a.core_.get() == b.core_.get() && a.nf_ == b.nf_;
  }
  friend bool operator!=(const Element& a, const Element& b) {
    return !(a == b);
  }
  // Shortlex order on normal forms.
  friend bool operator<(const Element& a, const Element& b) {
    return shortlex_less(a.nf_, b.nf_);
  }

private:
  friend struct detail::Access;
  Element(std::shared_ptr<const detail::SystemCore> core, Word nf)
      : core_(std::move(core)), nf_(std::move(nf)) {}

  std::shared_ptr<const detail::SystemCore> core_;
  Word nf_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept {
    return WordHash{}(e.word());
  }
};

// ---- word-level operations -------------------------------------------------

// All words reachable from w by braid moves alone (no cancellations).  Every
// member has the length of w and w itself is a member.  cap = 0 uses the
// system default.
std::vector<Word> braid_closure(const CoxeterSystem& sys, const Word& w,
                                std::size_t cap = 0);

// True iff w is a reduced expression.
bool is_reduced(const CoxeterSystem& sys, const Word& w);

// Canonical-form element represented by an arbitrary word.
Element reduce(const CoxeterSystem& sys, const Word& w);

// ---- group operations ------------------------------------------------------

Element multiply(const Element& a, const Element& b);
Element multiply(const Element& a, Gen s);
Element multiply(Gen s, const Element& a);
Element inverse(const Element& a);

GenSubset left_descents(const Element& a);
GenSubset right_descents(const Element& a);

// All elements of length <= radius (ball) or exactly radius (sphere), in
// shortlex order.  Enumeration is deterministic.
std::vector<Element> ball(const CoxeterSystem& sys, int radius);
std::vector<Element> sphere(const CoxeterSystem& sys, int radius);

// True iff every letter of the normal form of a lies in I.
bool in_standard_parabolic(const Element& a, GenSubset I);

// Decomposition w = factor * min_rep with factor in W_I and min_rep the
// minimal-length representative of the coset W_I w; lengths are additive.
struct LeftCosetDecomposition {
  Element factor;   // in W_I
  Element min_rep;  // no left descent in I
};
LeftCosetDecomposition min_coset_rep_left(GenSubset I, const Element& w);

// Mirror image: w = min_rep * factor with min_rep minimal in w W_I.
struct RightCosetDecomposition {
  Element min_rep;  // no right descent in I
  Element factor;   // in W_I
};
RightCosetDecomposition min_coset_rep_right(GenSubset I, const Element& w);

// Longest element of the finite standard parabolic W_I.
Element longest_element(const CoxeterSystem& sys, GenSubset I);

// All elements of the finite standard parabolic W_I, in shortlex order.
std::vector<Element> parabolic_elements(const CoxeterSystem& sys, GenSubset I);

// Elements of W_I of length <= radius (works for non-spherical I as well).
std::vector<Element> parabolic_ball(const CoxeterSystem& sys, GenSubset I,
                                    int radius);

// True iff w s w^-1 and w^-1 s w lie in W_I for every s in I.
bool normalizer_test(const Element& w, GenSubset I);

// Decomposition of w in N_W(W_I) as w = w_I * n_I with n_I stabilizing the
// simple roots of I, lengths additive; delta records s -> n_I^-1 s n_I.
struct LusztigDecomposition {
  Element w_I;
  Element n_I;
  GenSubset I;
  DiagramAutomorphism delta;
};
LusztigDecomposition lusztig_decompose(const Element& w, GenSubset I);

}  // namespace cox
