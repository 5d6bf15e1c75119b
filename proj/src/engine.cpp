#include "engine.hpp"

#include <algorithm>
#include <unordered_set>

#include "core_detail.hpp"

namespace cox::detail {

Engine::Engine(const SystemCore& core) : core_(core) {
  ball_nodes_.push_back({Word{}, -1, 0});
  ball_levels_ = {0, 1};
}

// ---------------------------------------------------------------------------
// Exact braid-move rewriting.
// ---------------------------------------------------------------------------

// Breadth-first closure of w under braid moves.  With stop_on_pair the scan
// returns as soon as any visited word carries an adjacent equal pair, which
// is the certificate that w is not reduced.
Engine::ClosureScan Engine::closure_scan(const Word& w, std::size_t cap,
                                         bool stop_on_pair) const {
  ClosureScan scan;
  std::unordered_set<Word, WordHash> seen;
  std::vector<Word> work;
  seen.insert(w);
  work.push_back(w);
  for (std::size_t head = 0; head < work.size(); ++head) {
    const Word u = work[head];
    if (stop_on_pair) {
      for (std::size_t i = 0; i + 1 < u.size(); ++i)
        if (u[i] == u[i + 1]) {
          scan.found_pair = true;
          scan.pair_word = u;
          scan.pair_pos = i;
          return scan;
        }
    }
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      const Gen a = u[i], b = u[i + 1];
      if (a == b) continue;
      const int m = core_.m(a, b);
      if (m == 0 || i + m > u.size()) continue;
      bool run = true;
      for (int k = 0; k < m; ++k)
        if (u[i + k] != ((k & 1) ? b : a)) {
          run = false;
          break;
        }
      if (!run) continue;
      Word v = u;
      for (int k = 0; k < m; ++k) v[i + k] = (k & 1) ? a : b;
      if (seen.insert(v).second) {
        if (seen.size() > cap)
          throw ResourceCapError("braid closure exceeded its cap");
        work.push_back(v);
      }
    }
  }
  scan.words = std::move(work);
  return scan;
}

// Deletes ss pairs exposed by braid moves until the word is reduced, then
// canonicalizes.
Word Engine::reduce_exact(Word w) const {
  for (;;) {
    ClosureScan scan = closure_scan(w, core_.caps.closure_cap, true);
    if (!scan.found_pair) break;
    Word v = scan.pair_word;
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(scan.pair_pos),
            v.begin() + static_cast<std::ptrdiff_t>(scan.pair_pos) + 2);
    w = std::move(v);
  }
  return canonical_exact(w);
}

// Lexicographically least member of the braid closure of a reduced word;
// this coincides with the greedy smallest-left-descent normal form.
Word Engine::canonical_exact(const Word& reduced) const {
  ClosureScan scan = closure_scan(reduced, core_.caps.closure_cap, false);
  const Word* best = &scan.words.front();
  for (const Word& u : scan.words)
    if (u < *best) best = &u;
  return *best;
}

// ---------------------------------------------------------------------------
// Numeric fast path and its gate.
// ---------------------------------------------------------------------------

const GeomEngine& Engine::geom_locked() const {
  if (!geom_) geom_.emplace(core_);
  return *geom_;
}

const GeomEngine& Engine::geom() const {
  std::lock_guard lock(mu_);
  return geom_locked();
}

// Exhaustive agreement check between the two engines on all short words.
// Any disagreement is a defect in one of the engines, so it is fatal.
void Engine::run_geom_gate_locked() const {
  const GeomEngine& ge = geom_locked();
  int g = 3;
  double count = core_.rank;
  while (g < 12 && count * core_.rank <= 8000.0) {
    count *= core_.rank;
    ++g;
  }
  Word w;
  auto check_all = [&](auto&& self, int depth) -> void {
    if (!w.empty()) {
      const bool exact = reduce_exact(w).size() == w.size();
      const bool numeric = ge.is_reduced(w);
      if (exact != numeric)
        throw InternalError("engine disagreement on is_reduced for '" +
                            [&] {
                              std::string s;
                              for (Gen x : w) s += core_.labels[x] + " ";
                              return s;
                            }());
      if (exact) {
        const Word nf = canonical_exact(w);
        if (descents_locked(nf, true) != ge.left_descents(w) ||
            descents_locked(nf, false) != ge.right_descents(w))
          throw InternalError("engine disagreement on descent sets");
        if (ge.canonical_of_reduced(w) != nf)
          throw InternalError("engine disagreement on normal forms");
      }
    }
    if (depth == 0) return;
    for (int s = 0; s < core_.rank; ++s) {
      w.push_back(static_cast<Gen>(s));
      self(self, depth - 1);
      w.pop_back();
    }
  };
  check_all(check_all, g);
  gate_ = Gate::Passed;
}

bool Engine::geom_gate_passed() const {
  std::lock_guard lock(mu_);
  if (gate_ == Gate::Untested) run_geom_gate_locked();
  return gate_ == Gate::Passed;
}

// ---------------------------------------------------------------------------
// Dispatching primitives.
// ---------------------------------------------------------------------------

Word Engine::right_mult_locked(const Word& nf, Gen s) const {
  Word key = nf;
  key.push_back(s);
  if (auto it = reduce_memo_.find(key); it != reduce_memo_.end())
    return it->second;

  Word result;
  if (static_cast<int>(key.size()) <= core_.caps.exact_length_threshold) {
    result = reduce_exact(key);
  } else {
    if (gate_ == Gate::Untested) run_geom_gate_locked();
    try {
      result = geom_locked().right_mult(nf, s);
    } catch (const GeomToleranceError&) {
      result = reduce_exact(key);
    } catch (const GeomDepthError&) {
      result = reduce_exact(key);
    }
  }
  reduce_memo_.emplace(std::move(key), result);
  return result;
}

Word Engine::fold_locked(const Word& nf, const Word& tail) const {
  Word acc = nf;
  for (Gen s : tail) acc = right_mult_locked(acc, s);
  return acc;
}

Word Engine::reduce(const Word& w) const {
  std::lock_guard lock(mu_);
  return fold_locked(Word{}, w);
}

bool Engine::is_reduced(const Word& w) const {
  std::lock_guard lock(mu_);
  Word acc;
  for (Gen s : w) {
    const std::size_t before = acc.size();
    acc = right_mult_locked(acc, s);
    if (acc.size() < before) return false;  // length dropped: not reduced
  }
  return true;
}

Word Engine::right_mult(const Word& nf, Gen s) const {
  std::lock_guard lock(mu_);
  return right_mult_locked(nf, s);
}

Word Engine::left_mult(Gen s, const Word& nf) const {
  std::lock_guard lock(mu_);
  Word start;
  start.push_back(s);
  return fold_locked(start, nf);
}

std::uint64_t Engine::descents_locked(const Word& nf, bool left) const {
  if (auto it = descent_memo_.find(nf); it != descent_memo_.end())
    return left ? it->second.left : it->second.right;

  DescentPair pair;
  if (static_cast<int>(nf.size()) <= core_.caps.exact_length_threshold) {
    // First and last letters over all reduced expressions.
    ClosureScan scan = closure_scan(nf, core_.caps.closure_cap, false);
    for (const Word& u : scan.words)
      if (!u.empty()) {
        pair.left |= std::uint64_t{1} << u.front();
        pair.right |= std::uint64_t{1} << u.back();
      }
  } else {
    if (gate_ == Gate::Untested) run_geom_gate_locked();
    try {
      pair.left = geom_locked().left_descents(nf);
      pair.right = geom_locked().right_descents(nf);
    } catch (const GeomToleranceError&) {
      ClosureScan scan = closure_scan(nf, core_.caps.closure_cap, false);
      for (const Word& u : scan.words)
        if (!u.empty()) {
          pair.left |= std::uint64_t{1} << u.front();
          pair.right |= std::uint64_t{1} << u.back();
        }
    }
  }
  descent_memo_.emplace(nf, pair);
  return left ? pair.left : pair.right;
}

std::uint64_t Engine::left_descents(const Word& nf) const {
  std::lock_guard lock(mu_);
  return descents_locked(nf, true);
}

std::uint64_t Engine::right_descents(const Word& nf) const {
  std::lock_guard lock(mu_);
  return descents_locked(nf, false);
}

std::vector<Word> Engine::braid_closure(const Word& w, std::size_t cap) const {
  std::lock_guard lock(mu_);
  ClosureScan scan =
      closure_scan(w, cap == 0 ? core_.caps.closure_cap : cap, false);
  std::sort(scan.words.begin(), scan.words.end());
  return scan.words;
}

// ---------------------------------------------------------------------------
// Ball enumeration.
// ---------------------------------------------------------------------------

void Engine::ensure_ball_locked(int radius) const {
  if (radius > core_.caps.ball_radius_cap)
    throw ResourceCapError("ball radius exceeds its cap");
  while (static_cast<int>(ball_levels_.size()) - 1 <= radius) {
    const std::size_t lo = ball_levels_[ball_levels_.size() - 2];
    const std::size_t hi = ball_levels_.back();
    if (lo == hi) {  // previous sphere empty: the group is exhausted
      ball_levels_.push_back(hi);
      continue;
    }
    const int level = static_cast<int>(ball_levels_.size()) - 2;
    struct Candidate {
      Word nf;
      std::int32_t parent;
      Gen via;
    };
    std::vector<Candidate> next;
    std::unordered_set<Word, WordHash> seen;
    for (std::size_t idx = lo; idx < hi; ++idx) {
      for (int s = 0; s < core_.rank; ++s) {
        // Copy: right_mult_locked may rehash the memo the nf points into.
        const Word src = ball_nodes_[idx].nf;
        Word product = right_mult_locked(src, static_cast<Gen>(s));
        if (static_cast<int>(product.size()) != level + 1) continue;
        if (seen.insert(product).second)
          next.push_back({std::move(product), static_cast<std::int32_t>(idx),
                          static_cast<Gen>(s)});
      }
    }
    std::sort(next.begin(), next.end(),
              [](const Candidate& a, const Candidate& b) {
                return a.nf < b.nf;
              });
    for (Candidate& c : next) {
      ball_nodes_.push_back({std::move(c.nf), c.parent, c.via});
      if (ball_nodes_.size() > core_.caps.ball_size_cap)
        throw ResourceCapError("ball size exceeds its cap");
    }
    ball_levels_.push_back(ball_nodes_.size());
  }
}

const std::vector<Engine::BallNode>& Engine::ball_nodes(int radius) const {
  std::lock_guard lock(mu_);
  ensure_ball_locked(radius);
  return ball_nodes_;
}

const std::vector<std::size_t>& Engine::ball_levels(int radius) const {
  std::lock_guard lock(mu_);
  ensure_ball_locked(radius);
  return ball_levels_;
}

// ---------------------------------------------------------------------------
// Standard parabolic enumeration and classification.
// ---------------------------------------------------------------------------

std::vector<Word> Engine::parabolic_upto(GenSubset I, int radius) const {
  std::lock_guard lock(mu_);
  std::vector<Word> out{Word{}};
  std::unordered_set<Word, WordHash> seen{Word{}};
  std::size_t lo = 0;
  for (int level = 0; level < radius; ++level) {
    const std::size_t hi = out.size();
    if (lo == hi) break;
    for (std::size_t idx = lo; idx < hi; ++idx)
      for (Gen s : I.members()) {
        const Word src = out[idx];
        Word product = right_mult_locked(src, s);
        if (static_cast<int>(product.size()) != level + 1) continue;
        if (seen.size() >= core_.caps.parabolic_cap)
          throw ResourceCapError("parabolic enumeration exceeded its cap");
        if (seen.insert(product).second) out.push_back(std::move(product));
      }
    lo = hi;
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

const std::vector<Word>& Engine::parabolic_all(GenSubset I) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = parabolic_memo_.find(I.bits); it != parabolic_memo_.end())
      return it->second;
  }
  if (!finite_type(I))
    throw DomainError("standard parabolic subgroup is infinite");
  // A finite group is exhausted once some sphere is empty.
  std::vector<Word> all;
  for (int radius = 1;; ++radius) {
    std::vector<Word> cur = parabolic_upto(I, radius);
    if (cur.size() == all.size()) {
      all = std::move(cur);
      break;
    }
    all = std::move(cur);
  }
  std::lock_guard lock(mu_);
  return parabolic_memo_.emplace(I.bits, std::move(all)).first->second;
}

bool Engine::finite_type(GenSubset I) const {
  std::lock_guard lock(mu_);
  if (auto it = finite_type_memo_.find(I.bits); it != finite_type_memo_.end())
    return it->second;
  const bool value = finite_type_impl(core_, I);
  finite_type_memo_.emplace(I.bits, value);
  return value;
}

}  // namespace cox::detail
