#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cox/errors.hpp"
#include "cox/types.hpp"
#include "geom_engine.hpp"

namespace cox::detail {

struct SystemCore;

// Word engine of one system.  The exact braid-move rewriter is authoritative
// and handles every word up to caps.exact_length_threshold letters; beyond
// that the numeric engine takes over once its agreement gate has passed,
// falling back to the (capped) exact path on any numeric bailout.  Results
// are memoized per normal form, so repeated queries behave like table
// lookups.  All entry points are serialized by one recursive mutex; cached
// state is observably equivalent to recomputation.
class Engine {
public:
  explicit Engine(const SystemCore& core);

  // Canonical normal form of an arbitrary word.
  Word reduce(const Word& w) const;
  bool is_reduced(const Word& w) const;

  // Normal form of nf * s / s * nf for a canonical nf.
  Word right_mult(const Word& nf, Gen s) const;
  Word left_mult(Gen s, const Word& nf) const;

  // Descent bitsets of the element with canonical normal form nf.
  std::uint64_t left_descents(const Word& nf) const;
  std::uint64_t right_descents(const Word& nf) const;

  // Exact braid-move closure (no cancellations), capped.
  std::vector<Word> braid_closure(const Word& w, std::size_t cap) const;

  // Cayley-graph ball as a BFS forest, nodes in shortlex order per level.
  struct BallNode {
    Word nf;
    std::int32_t parent;  // -1 for the identity
    Gen via;              // generator multiplied on the right
  };
  // Nodes of the ball of the given radius (levels concatenated).
  const std::vector<BallNode>& ball_nodes(int radius) const;
  // Index of the first node of each level, plus a final end sentinel.
  const std::vector<std::size_t>& ball_levels(int radius) const;

  // Elements of W_I (all of them; requires finiteness) or up to a radius.
  const std::vector<Word>& parabolic_all(GenSubset I) const;
  std::vector<Word> parabolic_upto(GenSubset I, int radius) const;

  bool finite_type(GenSubset I) const;

  const GeomEngine& geom() const;
  bool geom_gate_passed() const;

private:
  // --- exact machinery (callers hold mu_) ---
  struct ClosureScan {
    bool found_pair = false;
    Word pair_word;
    std::size_t pair_pos = 0;
    std::vector<Word> words;
  };
  ClosureScan closure_scan(const Word& w, std::size_t cap,
                           bool stop_on_pair) const;
  Word reduce_exact(Word w) const;
  Word canonical_exact(const Word& reduced) const;

  Word right_mult_locked(const Word& nf, Gen s) const;
  Word fold_locked(const Word& nf, const Word& tail) const;
  std::uint64_t descents_locked(const Word& nf, bool left) const;
  void ensure_ball_locked(int radius) const;
  void run_geom_gate_locked() const;
  const GeomEngine& geom_locked() const;

  const SystemCore& core_;

  mutable std::recursive_mutex mu_;
  // (nf + letter) -> normal form of the product; doubles as a cache for the
  // canonical form of arbitrary short words.
  mutable std::unordered_map<Word, Word, WordHash> reduce_memo_;
  struct DescentPair {
    std::uint64_t left = 0, right = 0;
  };
  mutable std::unordered_map<Word, DescentPair, WordHash> descent_memo_;
  mutable std::vector<BallNode> ball_nodes_;
  mutable std::vector<std::size_t> ball_levels_;  // offsets per level
  mutable std::unordered_map<std::uint64_t, std::vector<Word>> parabolic_memo_;
  mutable std::unordered_map<std::uint64_t, bool> finite_type_memo_;
  mutable std::optional<GeomEngine> geom_;
  enum class Gate { Untested, Passed };
  mutable Gate gate_ = Gate::Untested;
};

}  // namespace cox::detail
