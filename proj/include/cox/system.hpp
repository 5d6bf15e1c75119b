#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cox/errors.hpp"
#include "cox/types.hpp"

namespace cox {

class Element;

namespace detail {
struct SystemCore;
struct Access;
}  // namespace detail

// Resource limits and engine tuning knobs.  All limits are hard errors when
// exceeded, never silent truncation.
struct Caps {
  // Maximum number of words visited in one braid closure.
  std::size_t closure_cap = 200'000;
  // Words up to this length are handled by the exact rewriting engine;
  // longer words go through the numeric engine (after its cross-check gate).
  int exact_length_threshold = 12;
  // Numeric engine limits.
  int geom_depth_cap = 64;
  double geom_tol = 1e-9;
  // Ball enumeration limits.
  int ball_radius_cap = 64;
  std::size_t ball_size_cap = 2'000'000;
  // Standard parabolic enumeration limit.
  std::size_t parabolic_cap = 100'000;
  // Guard for iterations over all generator subsets.
  int subset_rank_guard = 12;
  // Maximum input length for closures that enumerate all reduced words.
  int kappa_length_cap = 16;
  // Limits for conjugation searches.
  int oracle_radius_cap = 24;
  int interval_cap = 48;
};

// A Coxeter system of finite rank: generator labels plus the symmetric
// matrix of pairwise orders, with 0 standing for an infinite order.
//
// CoxeterSystem is a cheap copyable handle to immutable shared state; all
// derived data (normal forms, descent sets, balls) is cached behind it and
// is observably equivalent to recomputation.
class CoxeterSystem {
public:
  // labels: distinct nonempty names without whitespace.
  // matrix: rank*rank row-major entries, 1 on the diagonal, >= 2 or 0 off it.
  CoxeterSystem(std::vector<std::string> labels, std::vector<int> matrix,
                Caps caps = {});

  int rank() const;
  const std::string& label(Gen g) const;
  std::optional<Gen> find_label(std::string_view name) const;

  // Matrix entry; 0 encodes an infinite order.
  int entry(Gen a, Gen b) const;
  bool entry_infinite(Gen a, Gen b) const { return entry(a, b) == 0; }

  const Caps& caps() const;

  // Emits exactly the file format accepted by parse_system.
  std::string serialize() const;

  Element identity() const;

  // Splits on whitespace and maps labels to generator indices.  The empty
  // string denotes the empty word.  Unknown labels raise ParseError.
  Word parse_word(std::string_view text) const;
  // Labels joined by single spaces; empty string for the empty word.
  std::string format_word(const Word& w) const;

  // True iff every connected component of the induced diagram on I is one
  // of the finite types.  Decided by diagram classification, not numerics.
  bool finite_type(GenSubset I) const;
  bool spherical(GenSubset I) const { return finite_type(I); }

  GenSubset full_subset() const { return GenSubset::all(rank()); }

  // Connected component of g in the diagram induced on I (edges where the
  // matrix entry differs from 2).
  GenSubset component(GenSubset I, Gen g) const;

  bool same_system(const CoxeterSystem& other) const;

private:
  friend struct detail::Access;
  explicit CoxeterSystem(std::shared_ptr<const detail::SystemCore> core)
      : core_(std::move(core)) {}
  std::shared_ptr<const detail::SystemCore> core_;
};

// Parses the plain-text system format:
//
//   # comment lines are allowed anywhere
//   generators: s t u
//   matrix:
//   1 3 3
//   3 1 3
//   3 3 1
//
// 0 entries are read as infinity.  Errors carry 1-based line numbers.
CoxeterSystem parse_system(std::string_view text, Caps caps = {});

}  // namespace cox
