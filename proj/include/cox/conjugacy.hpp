#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cox/element.hpp"

// Conjugation calculus: cyclic-shift steps, strong and tight conjugation,
// their closures, minimal-length conjugate sets with certificates, bounded
// straightness, twisted conjugation inside finite parabolics, and the
// subset-to-subset parabolic conjugator.

namespace cox {

// One conjugation w -> s w s that does not increase length.
struct ShiftStep {
  Gen s;
  Element from;
  Element to;
};

// One length-preserving step of tight conjugation: either a generator shift
// or conjugation by x inside a finite standard parabolic W_I normalized by
// the element, with the strong-conjugation additivity condition.
struct TightStep {
  enum class Kind { Shift, Parabolic };
  Kind kind = Kind::Shift;
  Gen s = 0;      // Shift
  GenSubset I;    // Parabolic
  Element x;      // Parabolic
  Element from;
  Element to;
};

// One step of a replayable conjugacy certificate.  Shift steps may run
// "uphill" on the half of the chain that ascends from a minimal element.
struct CertStep {
  enum class Kind { ShiftDown, ShiftUp, TightShift, TightParabolic };
  Kind kind = Kind::ShiftDown;
  Gen s = 0;
  GenSubset I;
  Element x;
  Element from;
  Element to;
};

struct ConjCertificate {
  std::vector<CertStep> steps;
};

// Replays the chain and checks every step invariant.
bool verify_certificate(const ConjCertificate& cert, const Element& w,
                        const Element& v);

struct ShiftClosureResult {
  std::vector<Element> set;  // shortlex order
  int min_length = 0;
  Element min_rep;           // lexicographically least among minimal lengths
  // BFS tree: target word -> (source word, conjugating generator).
  std::unordered_map<Word, std::pair<Word, Gen>, WordHash> parent;
};

struct TightClosureResult {
  std::vector<Element> set;  // shortlex order
  std::unordered_map<Word, TightStep, WordHash> parent;
};

struct ConjClassSummary {
  int min_length = 0;
  std::vector<Element> o_min;          // shortlex order
  std::optional<int> straight_up_to;   // nmax when the class is straight up to it
};

struct OracleResult {
  std::vector<Element> o_min;  // shortlex order
  int min_length = 0;
  bool stable = false;         // radius and radius-1 gave identical results
};

// s w s when its length does not exceed that of w.
std::optional<Element> shift_step(const Element& w, Gen s);

// Closure of w under shift steps; finite because lengths never increase.
ShiftClosureResult shift_closure(const Element& w);

// Closure of w under cyclic shifts of reduced expressions.
std::vector<Element> kappa_closure(const Element& w);

// Equal lengths, w2 = x^-1 w x, and one length-additivity condition.
bool is_elem_strongly_conjugate(const Element& w, const Element& w2,
                                const Element& x);

// All length-preserving tight steps out of w.
std::vector<TightStep> tight_neighbors(const Element& w);

// Closure of w under tight steps (all members share the length of w).
TightClosureResult tight_closure(const Element& w);

// Minimal length in the conjugacy class, the full set of minimal-length
// conjugates, and a bounded straightness certificate for the class.
ConjClassSummary conj_min(const Element& w, int nmax = 8);

// Brute-force {v^-1 w v : v in ball(radius)} filtered to minimal length.
OracleResult omin_oracle(const Element& w, int radius);

// Grows the radius from length(w)+4 until two consecutive radii agree.
OracleResult omin_oracle_stabilized(const Element& w, int max_radius = -1);

// A replay-verified certificate when w and v are conjugate.
std::optional<ConjCertificate> are_conjugate(const Element& w,
                                             const Element& v);

// True iff length(w^n) = n length(w) for all n <= nmax (bounded check).
bool is_straight_bounded(const Element& w, int nmax);

// For a bounded-straight element: is its set of minimal-length conjugates a
// single component under length-preserving shift steps?
bool straight_class_shift_connected(const Element& w, int nmax = 8);

// delta(s) z s when its length does not exceed that of z (inside W_I).
std::optional<Element> twisted_shift_step(const Element& z, Gen s,
                                          const DiagramAutomorphism& delta,
                                          GenSubset I);

struct TwistedClosure {
  std::vector<Element> set;  // shortlex order
  int min_length = 0;
};

// Closure of z under twisted shift steps in (W_I, delta).
TwistedClosure twisted_min_closure(const Element& z,
                                   const DiagramAutomorphism& delta,
                                   GenSubset I);

// min over x in W_I of length(delta(x)^-1 z x); test oracle for the closure.
int twisted_min_brute(const Element& z, const DiagramAutomorphism& delta,
                      GenSubset I);

// One elementary subset move: adjoin s, take the spherical component K of s,
// and conjugate by w_{K \ {s}} w_K.
struct ParabolicMove {
  Gen s;
  GenSubset from_subset;
  GenSubset to_subset;
  Element x;
};

struct ParabolicConjugation {
  Element x;  // product of the moves; length equals the sum of move lengths
  std::vector<ParabolicMove> moves;
};

// Searches for x with x^-1 I x = J (generator to generator) through
// elementary moves; absent when no sequence of moves reaches J.
std::optional<ParabolicConjugation> parabolic_conjugator(
    const CoxeterSystem& sys, GenSubset I, GenSubset J);

}  // namespace cox
