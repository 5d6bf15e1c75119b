#include "cox/complex.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "core_detail.hpp"
#include "engine.hpp"

namespace cox {

using detail::Access;
using detail::engine_of;
using detail::require_same_system;

namespace {

Element mk(const Element& like, Word nf) {
  return Access::make_element(Access::core(like), std::move(nf));
}

// v^-1 w v for chamber v.
Element pi_value(const Element& w, const Chamber& v) {
  return multiply(multiply(inverse(v), w), v);
}

}  // namespace

int chamber_distance(const Chamber& c, const Chamber& d) {
  require_same_system(c, d);
  return multiply(inverse(c), d).length();
}

Residue::Residue(const Chamber& member, GenSubset typ) : typ_(typ) {
  base_ = min_coset_rep_right(typ, member).min_rep;
}

bool Residue::spherical() const { return base_.system().spherical(typ_); }

bool Residue::contains(const Chamber& c) const {
  return in_standard_parabolic(multiply(inverse(base_), c), typ_);
}

std::vector<Chamber> Residue::members() const {
  std::vector<Chamber> out;
  for (const Element& z : parabolic_elements(base_.system(), typ_))
    out.push_back(multiply(base_, z));
  std::sort(out.begin(), out.end());
  return out;
}

Chamber project(const Residue& r, const Chamber& d) {
  const Element rel = multiply(inverse(r.base()), d);
  const auto dec = min_coset_rep_left(r.typ(), rel);
  return multiply(r.base(), dec.factor);
}

bool parallel(const Residue& r1, const Residue& r2) {
  if (!r1.spherical() || !r2.spherical())
    throw DomainError("parallelism test requires spherical residues");
  // Equal stabilizers, via two-sided generator membership.
  const Element b1 = r1.base(), b2 = r2.base();
  const Element b1i = inverse(b1), b2i = inverse(b2);
  for (Gen s : r1.typ().members()) {
    const Element g = multiply(multiply(b1, s), b1i);  // generator of Stab(R1)
    if (!in_standard_parabolic(multiply(multiply(b2i, g), b2), r2.typ()))
      return false;
  }
  for (Gen s : r2.typ().members()) {
    const Element g = multiply(multiply(b2, s), b2i);
    if (!in_standard_parabolic(multiply(multiply(b1i, g), b1), r1.typ()))
      return false;
  }
  // Stabilizers agree; the mutual projections must then pair the chambers
  // off bijectively.
  std::vector<Chamber> m1 = r1.members(), m2 = r2.members();
  if (m1.size() != m2.size())
    throw InternalError("parallel residues of different sizes");
  std::unordered_set<Word, WordHash> hit;
  for (const Chamber& c : m2) {
    const Chamber p = project(r1, c);
    if (project(r2, p) != c)
      throw InternalError("mutual projections are not inverse bijections");
    hit.insert(p.word());
  }
  if (hit.size() != m1.size())
    throw InternalError("projection between parallel residues not injective");
  return true;
}

std::vector<Chamber> interval(const Chamber& c, const Chamber& d) {
  require_same_system(c, d);
  const Element g = multiply(inverse(c), d);
  if (g.length() > c.system().caps().interval_cap)
    throw ResourceCapError("interval endpoints too far apart");
  const auto& eng = engine_of(*Access::core(c));

  // Elements x with length(x) + length(x^-1 g) = length(g), by BFS level.
  std::unordered_set<Word, WordHash> seen{Word{}};
  std::vector<Word> frontier{Word{}};
  std::vector<Word> all{Word{}};
  const int rank = c.system().rank();
  const int total = g.length();
  for (int level = 0; level < total; ++level) {
    std::vector<Word> next;
    for (const Word& x : frontier) {
      // x^-1 g as an element, recomputed from scratch only once per node.
      for (int s = 0; s < rank; ++s) {
        Word xs = eng.right_mult(x, static_cast<Gen>(s));
        if (static_cast<int>(xs.size()) != level + 1) continue;
        if (seen.count(xs)) continue;
        const Element xe = mk(c, xs);
        if (xe.length() + multiply(inverse(xe), g).length() != total)
          continue;
        seen.insert(xs);
        next.push_back(std::move(xs));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::vector<Chamber> out;
  out.reserve(all.size());
  for (const Word& x : all) out.push_back(multiply(c, mk(c, x)));
  std::sort(out.begin(), out.end());
  return out;
}

CMinSample cmin_in_ball(const Element& w, int radius) {
  const CoxeterSystem sys = w.system();
  if (radius < 0 || radius > sys.caps().ball_radius_cap)
    throw ResourceCapError("sample radius outside the configured cap");
  CMinSample sample;
  sample.w = w;
  sample.radius = radius;
  sample.class_min = conj_min(w).min_length;

  const auto& eng = engine_of(*Access::core(w));
  const auto& nodes = eng.ball_nodes(radius);
  const auto& levels = eng.ball_levels(radius);
  std::vector<Word> pi(levels[radius + 1]);
  pi[0] = w.word();
  if (static_cast<int>(pi[0].size()) == sample.class_min)
    sample.members.push_back(mk(w, Word{}));
  for (std::size_t i = 1; i < levels[radius + 1]; ++i) {
    pi[i] = eng.left_mult(nodes[i].via,
                          eng.right_mult(pi[nodes[i].parent], nodes[i].via));
    if (static_cast<int>(pi[i].size()) == sample.class_min)
      sample.members.push_back(mk(w, nodes[i].nf));
  }
  std::sort(sample.members.begin(), sample.members.end());
  return sample;
}

bool check_w_convexity_sample(const CMinSample& sample) {
  const Element& w = sample.w;
  std::unordered_set<Word, WordHash> members;
  for (const Chamber& c : sample.members) members.insert(c.word());
  const Element winv = inverse(w);

  for (const Chamber& d : sample.members) {
    // Margin rule: only chambers whose intervals surely stay in the ball.
    if (d.length() + w.length() > sample.radius) continue;
    for (int eps = 0; eps < 2; ++eps) {
      const Chamber target = multiply(eps == 0 ? w : winv, d);
      for (const Chamber& e : interval(d, target))
        if (!members.count(e.word())) return false;
    }
  }
  return true;
}

bool check_w_convexity(const Element& w, int radius) {
  return check_w_convexity_sample(cmin_in_ball(w, radius));
}

bool gallery_shift_consistency(const Element& w, const Chamber& c,
                               const Chamber& d) {
  require_same_system(w, c);
  require_same_system(w, d);
  const Element pc = pi_value(w, c);
  const Element pd = pi_value(w, d);
  ShiftClosureResult sc = shift_closure(pc);
  return std::binary_search(sc.set.begin(), sc.set.end(), pd);
}

bool stab_condition(const Element& w, const Residue& r) {
  if (!r.spherical())
    throw DomainError("stabilizer condition requires a spherical residue");
  return normalizer_test(pi_value(w, r.base()), r.typ());
}

CwExploration cw_explore(const Element& w, std::size_t budget) {
  const CoxeterSystem sys = w.system();
  const int rank = sys.rank();
  const int class_min = conj_min(w).min_length;
  const Element winv = inverse(w);

  CwExploration res;
  std::unordered_set<Word, WordHash> seen{Word{}};
  std::deque<Chamber> queue{sys.identity()};
  std::vector<Chamber> all{sys.identity()};
  std::size_t expansions = 0;
  res.complete = true;
  const std::uint64_t full = GenSubset::all(rank).bits;

  while (!queue.empty()) {
    if (expansions >= budget) {
      res.complete = false;
      break;
    }
    ++expansions;
    const Chamber c = std::move(queue.front());
    queue.pop_front();

    auto visit = [&](const Chamber& t) {
      if (seen.insert(t.word()).second) {
        queue.push_back(t);
        all.push_back(t);
      }
    };

    // Step (I): chambers between c and its w-translates.
    for (int eps = 0; eps < 2; ++eps) {
      const Chamber target = multiply(eps == 0 ? w : winv, c);
      for (const Chamber& e : interval(c, target)) visit(e);
    }
    // Step (II): stabilizer-compatible spherical residues through c.
    for (std::uint64_t bits = 1; bits <= full; ++bits) {
      const GenSubset I{bits};
      if (!sys.spherical(I)) continue;
      const Residue r(c, I);
      if (!stab_condition(w, r)) continue;
      for (const Chamber& e : r.members())
        if (pi_value(w, e).length() == class_min) visit(e);
    }
  }
  std::sort(all.begin(), all.end());
  res.chambers = std::move(all);
  return res;
}

bool projection_monotonicity(const Element& w, const Residue& r,
                             const Chamber& d) {
  if (!r.spherical())
    throw DomainError("projection monotonicity requires a spherical residue");
  // wR = R as a chamber set.
  if (!in_standard_parabolic(pi_value(w, r.base()), r.typ()))
    throw DomainError("the element does not stabilize the residue");
  const Chamber c = project(r, d);
  return pi_value(w, c).length() <= pi_value(w, d).length();
}

}  // namespace cox
