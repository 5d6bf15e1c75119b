#pragma once

#include <cstddef>
#include <vector>

#include "cox/conjugacy.hpp"
#include "cox/element.hpp"

// Combinatorial chamber-complex layer: residues as cosets with canonical
// minimal representatives, gate projections, chamber intervals, the set of
// chambers realizing the minimal conjugate length, and bounded exploration
// of the subcomplex generated by interval and residue steps.

namespace cox {

// Chambers are identified with group elements (the chamber v C_0 with v).
using Chamber = Element;

// Number of walls separating two chambers.
int chamber_distance(const Chamber& c, const Chamber& d);

// The coset base * W_typ, keyed by its minimal-length representative.
class Residue {
public:
  Residue(const Chamber& member, GenSubset typ);

  const Element& base() const { return base_; }
  GenSubset typ() const { return typ_; }
  bool spherical() const;
  bool contains(const Chamber& c) const;
  // All member chambers, shortlex; requires a spherical type.
  std::vector<Chamber> members() const;

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.typ_ == b.typ_ && a.base_ == b.base_;
  }
  friend bool operator!=(const Residue& a, const Residue& b) {
    return !(a == b);
  }

private:
  Element base_;
  GenSubset typ_;
};

// Gate of R as seen from D: the unique chamber of R closest to D.
Chamber project(const Residue& r, const Chamber& d);

// True iff the two spherical residues have equal stabilizers; the mutual
// projections are then verified to be inverse bijections.
bool parallel(const Residue& r1, const Residue& r2);

// Chambers on minimal galleries from C to D.
std::vector<Chamber> interval(const Chamber& c, const Chamber& d);

// The chambers v within the ball whose conjugate v^-1 w v has the minimal
// class length.
struct CMinSample {
  Element w;
  int class_min = 0;
  std::vector<Chamber> members;  // shortlex order
  int radius = 0;
};

CMinSample cmin_in_ball(const Element& w, int radius);

// Interval closedness of the sample: for every member D with enough margin
// and either sign, interval(D, w^eps D) stays inside the member set.
bool check_w_convexity(const Element& w, int radius);
// Same check on a caller-supplied sample (negative-control fixtures).
bool check_w_convexity_sample(const CMinSample& sample);

// Shift-reachability of the conjugates attached to two chambers.
bool gallery_shift_consistency(const Element& w, const Chamber& c,
                               const Chamber& d);

// True iff the stabilizers of R and wR coincide.
bool stab_condition(const Element& w, const Residue& r);

struct CwExploration {
  std::vector<Chamber> chambers;  // shortlex order
  bool complete = false;          // false when the budget ran out first
};

// BFS from the fundamental chamber under two steps: (I) chambers on
// intervals toward w^{+-1}-translates, and (II) minimal-length chambers of
// stabilizer-compatible spherical residues.  An under-approximation bounded
// by the expansion budget.
CwExploration cw_explore(const Element& w, std::size_t budget);

// With C = project(R, D): checks dc(C, wC) <= dc(D, wD).  Requires a
// spherical R with wR = R as a chamber set.
bool projection_monotonicity(const Element& w, const Residue& r,
                             const Chamber& d);

}  // namespace cox
