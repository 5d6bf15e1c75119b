#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace cox {

// Generators are identified by their index in the system's label list.
using Gen = std::uint8_t;

// A word is a finite (possibly empty) sequence of generator indices.
using Word = std::vector<Gen>;

// Systems are capped at 64 generators so that generator subsets fit in a
// machine word.
inline constexpr int kMaxRank = 64;

// A subset of the generator set, as a bitset over generator indices.
struct GenSubset {
  std::uint64_t bits = 0;

  static GenSubset all(int rank) {
    return GenSubset{rank >= 64 ? ~std::uint64_t{0}
                                : ((std::uint64_t{1} << rank) - 1)};
  }
  static GenSubset of(std::initializer_list<int> gens) {
    GenSubset s;
    for (int g : gens) s.bits |= std::uint64_t{1} << g;
    return s;
  }

  bool contains(Gen g) const { return (bits >> g) & 1u; }
  void add(Gen g) { bits |= std::uint64_t{1} << g; }
  void remove(Gen g) { bits &= ~(std::uint64_t{1} << g); }
  bool empty() const { return bits == 0; }
  int count() const { return __builtin_popcountll(bits); }
  bool subset_of(GenSubset o) const { return (bits & ~o.bits) == 0; }

  std::vector<Gen> members() const {
    std::vector<Gen> out;
    for (std::uint64_t b = bits; b != 0; b &= b - 1)
      out.push_back(static_cast<Gen>(__builtin_ctzll(b)));
    return out;
  }

  friend bool operator==(GenSubset a, GenSubset b) { return a.bits == b.bits; }
  friend bool operator!=(GenSubset a, GenSubset b) { return a.bits != b.bits; }
  friend bool operator<(GenSubset a, GenSubset b) { return a.bits < b.bits; }
};

// FNV-1a over the letters of a word.
struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Gen g : w) {
      h ^= static_cast<std::size_t>(g);
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Length first, then lexicographic on letters.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// A label-preserving permutation of a generator subset (identity outside it).
struct DiagramAutomorphism {
  GenSubset domain;
  std::array<Gen, kMaxRank> map{};

  static DiagramAutomorphism identity(GenSubset domain) {
    DiagramAutomorphism d;
    d.domain = domain;
    for (int i = 0; i < kMaxRank; ++i) d.map[i] = static_cast<Gen>(i);
    return d;
  }

  Gen operator()(Gen g) const { return map[g]; }

  bool is_identity() const {
    for (Gen g : domain.members())
      if (map[g] != g) return false;
    return true;
  }

  friend bool operator==(const DiagramAutomorphism& a,
                         const DiagramAutomorphism& b) {
    if (a.domain != b.domain) return false;
    for (Gen g : a.domain.members())
      if (a.map[g] != b.map[g]) return false;
    return true;
  }
};

}  // namespace cox
