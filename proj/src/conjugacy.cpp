#include "cox/conjugacy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
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

// s w s as a normal form.
Word conj_by_gen(const detail::Engine& eng, const Word& nf, Gen s) {
  return eng.left_mult(s, eng.right_mult(nf, s));
}

std::vector<Element> sorted_elements(const Element& like,
                                     std::vector<Word> words) {
  std::sort(words.begin(), words.end(), shortlex_less);
  std::vector<Element> out;
  out.reserve(words.size());
  for (Word& w : words) out.push_back(mk(like, std::move(w)));
  return out;
}

void validate_automorphism(const CoxeterSystem& sys,
                           const DiagramAutomorphism& delta, GenSubset I) {
  if (delta.domain != I)
    throw DomainError("automorphism domain does not match the subset");
  std::uint64_t image = 0;
  for (Gen g : I.members()) {
    if (!I.contains(delta(g)))
      throw DomainError("automorphism image leaves the subset");
    image |= std::uint64_t{1} << delta(g);
  }
  if (image != I.bits) throw DomainError("automorphism is not a bijection");
  for (Gen a : I.members())
    for (Gen b : I.members())
      if (sys.entry(delta(a), delta(b)) != sys.entry(a, b))
        throw DomainError("automorphism does not preserve bond labels");
}

}  // namespace

// ---------------------------------------------------------------------------
// Shift steps and closures.
// ---------------------------------------------------------------------------

std::optional<Element> shift_step(const Element& w, Gen s) {
  const auto& eng = engine_of(*Access::core(w));
  Word c = conj_by_gen(eng, w.word(), s);
  if (c.size() > w.word().size()) return std::nullopt;
  return mk(w, std::move(c));
}

ShiftClosureResult shift_closure(const Element& w) {
  const auto& eng = engine_of(*Access::core(w));
  const int rank = w.system().rank();

  ShiftClosureResult res;
  std::unordered_set<Word, WordHash> seen{w.word()};
  std::deque<Word> queue{w.word()};
  std::vector<Word> all{w.word()};
  while (!queue.empty()) {
    Word cur = std::move(queue.front());
    queue.pop_front();
    for (int s = 0; s < rank; ++s) {
      Word nxt = conj_by_gen(eng, cur, static_cast<Gen>(s));
      if (nxt.size() > cur.size()) continue;
      if (seen.insert(nxt).second) {
        res.parent.emplace(nxt, std::make_pair(cur, static_cast<Gen>(s)));
        queue.push_back(nxt);
        all.push_back(std::move(nxt));
      }
    }
  }
  std::sort(all.begin(), all.end(), shortlex_less);
  res.min_length = static_cast<int>(all.front().size());
  res.min_rep = mk(w, all.front());
  res.set.reserve(all.size());
  for (Word& u : all) res.set.push_back(mk(w, std::move(u)));
  return res;
}

std::vector<Element> kappa_closure(const Element& w) {
  const auto& caps = w.system().caps();
  if (w.length() > caps.kappa_length_cap)
    throw ResourceCapError("element too long for the cyclic-shift closure");
  const auto& eng = engine_of(*Access::core(w));

  std::unordered_set<Word, WordHash> seen{w.word()};
  std::deque<Word> queue{w.word()};
  std::vector<Word> all{w.word()};
  while (!queue.empty()) {
    Word cur = std::move(queue.front());
    queue.pop_front();
    // Every rotation of every reduced expression of the current element.
    for (const Word& expr : eng.braid_closure(cur, caps.closure_cap)) {
      for (std::size_t k = 1; k < expr.size(); ++k) {
        Word rot;
        rot.reserve(expr.size());
        rot.insert(rot.end(), expr.begin() + static_cast<std::ptrdiff_t>(k),
                   expr.end());
        rot.insert(rot.end(), expr.begin(),
                   expr.begin() + static_cast<std::ptrdiff_t>(k));
        Word red = eng.reduce(rot);
        if (seen.insert(red).second) {
          queue.push_back(red);
          all.push_back(std::move(red));
        }
      }
    }
  }
  return sorted_elements(w, std::move(all));
}

bool is_elem_strongly_conjugate(const Element& w, const Element& w2,
                                const Element& x) {
  require_same_system(w, w2);
  require_same_system(w, x);
  if (w.length() != w2.length()) return false;
  const Element xinv = inverse(x);
  if (multiply(multiply(xinv, w), x) != w2) return false;
  return multiply(xinv, w).length() == x.length() + w.length() ||
         multiply(w, x).length() == w.length() + x.length();
}

// ---------------------------------------------------------------------------
// Tight conjugation.
// ---------------------------------------------------------------------------

std::vector<TightStep> tight_neighbors(const Element& w) {
  const CoxeterSystem sys = w.system();
  const int rank = sys.rank();
  if (rank > sys.caps().subset_rank_guard)
    throw ResourceCapError("rank exceeds the subset enumeration guard");
  const auto& eng = engine_of(*Access::core(w));

  std::vector<TightStep> out;
  for (int s = 0; s < rank; ++s) {
    Word c = conj_by_gen(eng, w.word(), static_cast<Gen>(s));
    if (c.size() != w.word().size()) continue;
    TightStep step;
    step.kind = TightStep::Kind::Shift;
    step.s = static_cast<Gen>(s);
    step.from = w;
    step.to = mk(w, std::move(c));
    out.push_back(std::move(step));
  }

  const std::uint64_t full = GenSubset::all(rank).bits;
  for (std::uint64_t bits = 1; bits <= full; ++bits) {
    const GenSubset I{bits};
    if (!sys.spherical(I)) continue;
    if (!normalizer_test(w, I)) continue;
    for (const Element& x : parabolic_elements(sys, I)) {
      const Element xinv = inverse(x);
      const Element xw = multiply(xinv, w);
      const Element to = multiply(xw, x);
      if (to.length() != w.length()) continue;
      const bool additive = xw.length() == x.length() + w.length() ||
                            multiply(w, x).length() == w.length() + x.length();
      if (!additive) continue;
      TightStep step;
      step.kind = TightStep::Kind::Parabolic;
      step.I = I;
      step.x = x;
      step.from = w;
      step.to = to;
      out.push_back(std::move(step));
    }
  }
  return out;
}

TightClosureResult tight_closure(const Element& w) {
  TightClosureResult res;
  std::unordered_set<Word, WordHash> seen{w.word()};
  std::deque<Element> queue{w};
  std::vector<Word> all{w.word()};
  while (!queue.empty()) {
    Element cur = std::move(queue.front());
    queue.pop_front();
    for (TightStep& step : tight_neighbors(cur)) {
      if (seen.insert(step.to.word()).second) {
        all.push_back(step.to.word());
        queue.push_back(step.to);
        res.parent.emplace(step.to.word(), std::move(step));
      }
    }
  }
  res.set = sorted_elements(w, std::move(all));
  return res;
}

// ---------------------------------------------------------------------------
// Minimal conjugates: closure-based computation and brute-force oracle.
// ---------------------------------------------------------------------------

ConjClassSummary conj_min(const Element& w, int nmax) {
  ShiftClosureResult sc = shift_closure(w);
  TightClosureResult tc = tight_closure(sc.min_rep);
  ConjClassSummary out;
  out.min_length = sc.min_length;
  out.o_min = std::move(tc.set);
  if (is_straight_bounded(sc.min_rep, nmax)) out.straight_up_to = nmax;
  return out;
}

OracleResult omin_oracle(const Element& w, int radius) {
  const CoxeterSystem sys = w.system();
  if (radius < 0 || radius > sys.caps().oracle_radius_cap)
    throw ResourceCapError("oracle radius outside the configured cap");
  const auto& eng = engine_of(*Access::core(w));
  const auto& nodes = eng.ball_nodes(radius);
  const auto& levels = eng.ball_levels(radius);

  // Conjugates along the ball forest: v = v' s  =>  v^-1 w v = s (v'^-1 w v') s.
  std::vector<Word> pi(levels[radius + 1]);
  pi[0] = w.word();
  auto collect = [&](std::size_t end_level) {
    int min_len = static_cast<int>(pi[0].size());
    for (std::size_t i = 1; i < levels[end_level + 1]; ++i) {
      pi[i] = conj_by_gen(eng, pi[nodes[i].parent], nodes[i].via);
      min_len = std::min(min_len, static_cast<int>(pi[i].size()));
    }
    std::set<Word, decltype(&shortlex_less)> mins(&shortlex_less);
    for (std::size_t i = 0; i < levels[end_level + 1]; ++i)
      if (static_cast<int>(pi[i].size()) == min_len) mins.insert(pi[i]);
    return std::make_pair(min_len, std::move(mins));
  };

  auto full = collect(static_cast<std::size_t>(radius));
  OracleResult res;
  res.min_length = full.first;
  for (const Word& u : full.second) res.o_min.push_back(mk(w, u));
  if (radius == 0) {
    res.stable = false;
    return res;
  }
  // Restrict to the previous radius to report stabilization.
  int prev_min = static_cast<int>(pi[0].size());
  for (std::size_t i = 1; i < levels[radius]; ++i)
    prev_min = std::min(prev_min, static_cast<int>(pi[i].size()));
  std::set<Word, decltype(&shortlex_less)> prev(&shortlex_less);
  for (std::size_t i = 0; i < levels[radius]; ++i)
    if (static_cast<int>(pi[i].size()) == prev_min) prev.insert(pi[i]);
  res.stable = prev_min == full.first && prev == full.second;
  return res;
}

OracleResult omin_oracle_stabilized(const Element& w, int max_radius) {
  const int cap = max_radius > 0 ? max_radius
                                 : w.system().caps().oracle_radius_cap;
  for (int radius = w.length() + 4; radius <= cap; ++radius) {
    OracleResult res = omin_oracle(w, radius);
    if (res.stable) return res;
  }
  throw ResourceCapError("conjugacy oracle failed to stabilize within cap");
}

// ---------------------------------------------------------------------------
// Certificates.
// ---------------------------------------------------------------------------

bool verify_certificate(const ConjCertificate& cert, const Element& w,
                        const Element& v) {
  Element cur = w;
  for (const CertStep& step : cert.steps) {
    if (step.from != cur) return false;
    switch (step.kind) {
      case CertStep::Kind::ShiftDown:
      case CertStep::Kind::ShiftUp:
      case CertStep::Kind::TightShift: {
        const Element expect = multiply(step.s, multiply(cur, step.s));
        if (step.to != expect) return false;
        if (step.kind == CertStep::Kind::ShiftDown &&
            step.to.length() > cur.length())
          return false;
        if (step.kind == CertStep::Kind::ShiftUp &&
            step.to.length() < cur.length())
          return false;
        if (step.kind == CertStep::Kind::TightShift &&
            step.to.length() != cur.length())
          return false;
        break;
      }
      case CertStep::Kind::TightParabolic: {
        if (!cur.system().spherical(step.I)) return false;
        if (!in_standard_parabolic(step.x, step.I)) return false;
        if (!normalizer_test(cur, step.I)) return false;
        if (!is_elem_strongly_conjugate(cur, step.to, step.x)) return false;
        break;
      }
    }
    cur = step.to;
  }
  return cur == v;
}

namespace {

// Chain of shift steps from w down to target, following the BFS tree.
std::vector<CertStep> trace_shift_chain(const Element& w,
                                        const ShiftClosureResult& sc,
                                        const Element& target) {
  std::vector<std::pair<Word, Gen>> rev;  // (child, via) pairs up the tree
  Word cur = target.word();
  while (cur != w.word()) {
    auto it = sc.parent.find(cur);
    if (it == sc.parent.end())
      throw InternalError("broken parent chain in shift closure");
    rev.emplace_back(cur, it->second.second);
    cur = it->second.first;
  }
  std::vector<CertStep> out;
  Element from = w;
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
    CertStep step;
    step.kind = CertStep::Kind::ShiftDown;
    step.s = it->second;
    step.from = from;
    step.to = mk(w, it->first);
    from = step.to;
    out.push_back(std::move(step));
  }
  return out;
}

CertStep tight_to_cert(const TightStep& t) {
  CertStep step;
  step.kind = t.kind == TightStep::Kind::Shift ? CertStep::Kind::TightShift
                                               : CertStep::Kind::TightParabolic;
  step.s = t.s;
  step.I = t.I;
  step.x = t.x;
  step.from = t.from;
  step.to = t.to;
  return step;
}

// Chain of tight steps from the closure root down to target.
std::vector<CertStep> trace_tight_chain(const Element& root,
                                        const TightClosureResult& tc,
                                        const Element& target) {
  std::vector<CertStep> rev;
  Word cur = target.word();
  while (cur != root.word()) {
    auto it = tc.parent.find(cur);
    if (it == tc.parent.end())
      throw InternalError("broken parent chain in tight closure");
    rev.push_back(tight_to_cert(it->second));
    cur = it->second.from.word();
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

CertStep reverse_step(const CertStep& step) {
  CertStep out = step;
  out.from = step.to;
  out.to = step.from;
  switch (step.kind) {
    case CertStep::Kind::ShiftDown:
      out.kind = CertStep::Kind::ShiftUp;
      break;
    case CertStep::Kind::ShiftUp:
      out.kind = CertStep::Kind::ShiftDown;
      break;
    case CertStep::Kind::TightShift:
      break;
    case CertStep::Kind::TightParabolic:
      out.x = inverse(step.x);
      break;
  }
  return out;
}

}  // namespace

std::optional<ConjCertificate> are_conjugate(const Element& w,
                                             const Element& v) {
  require_same_system(w, v);
  if (w == v) return ConjCertificate{};

  ShiftClosureResult scw = shift_closure(w);
  ShiftClosureResult scv = shift_closure(v);
  if (scw.min_length != scv.min_length) return std::nullopt;
  TightClosureResult tcw = tight_closure(scw.min_rep);
  TightClosureResult tcv = tight_closure(scv.min_rep);

  // Lexicographically least common element of the two closures.
  const Element* common = nullptr;
  std::unordered_set<Word, WordHash> in_w;
  for (const Element& e : tcw.set) in_w.insert(e.word());
  for (const Element& e : tcv.set)
    if (in_w.count(e.word())) {
      common = &e;
      break;
    }
  if (!common) return std::nullopt;

  ConjCertificate cert;
  for (CertStep& s : trace_shift_chain(w, scw, scw.min_rep))
    cert.steps.push_back(std::move(s));
  for (CertStep& s : trace_tight_chain(scw.min_rep, tcw, *common))
    cert.steps.push_back(std::move(s));
  {
    auto chain = trace_tight_chain(scv.min_rep, tcv, *common);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      cert.steps.push_back(reverse_step(*it));
  }
  {
    auto chain = trace_shift_chain(v, scv, scv.min_rep);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      cert.steps.push_back(reverse_step(*it));
  }
  if (!verify_certificate(cert, w, v))
    throw InternalError("conjugacy certificate failed replay verification");
  return cert;
}

// ---------------------------------------------------------------------------
// Straightness.
// ---------------------------------------------------------------------------

bool is_straight_bounded(const Element& w, int nmax) {
  if (nmax < 2) throw DomainError("straightness bound must be at least 2");
  if (w.is_identity()) return true;
  // length(w^n) = n length(w) for all n <= nmax iff the nmax-fold
  // concatenation of the normal form is reduced.
  Word power;
  power.reserve(w.word().size() * static_cast<std::size_t>(nmax));
  for (int i = 0; i < nmax; ++i)
    power.insert(power.end(), w.word().begin(), w.word().end());
  return is_reduced(w.system(), power);
}

bool straight_class_shift_connected(const Element& w, int nmax) {
  if (!is_straight_bounded(w, nmax))
    throw DomainError("element is not straight up to the bound");
  ConjClassSummary summary = conj_min(w, nmax);
  const auto& eng = engine_of(*Access::core(w));

  std::unordered_set<Word, WordHash> members;
  for (const Element& e : summary.o_min) members.insert(e.word());
  if (summary.o_min.empty()) return true;

  std::unordered_set<Word, WordHash> seen{summary.o_min.front().word()};
  std::deque<Word> queue{summary.o_min.front().word()};
  const int rank = w.system().rank();
  while (!queue.empty()) {
    Word cur = std::move(queue.front());
    queue.pop_front();
    for (int s = 0; s < rank; ++s) {
      Word nxt = conj_by_gen(eng, cur, static_cast<Gen>(s));
      if (nxt.size() != cur.size()) continue;
      if (!members.count(nxt)) continue;
      if (seen.insert(nxt).second) queue.push_back(nxt);
    }
  }
  return seen.size() == members.size();
}

// ---------------------------------------------------------------------------
// Twisted conjugation inside a finite standard parabolic.
// ---------------------------------------------------------------------------

std::optional<Element> twisted_shift_step(const Element& z, Gen s,
                                          const DiagramAutomorphism& delta,
                                          GenSubset I) {
  const CoxeterSystem sys = z.system();
  validate_automorphism(sys, delta, I);
  if (!I.contains(s)) throw DomainError("generator outside the subset");
  if (!in_standard_parabolic(z, I))
    throw DomainError("element outside the parabolic subgroup");
  const Element to = multiply(delta(s), multiply(z, s));
  if (to.length() > z.length()) return std::nullopt;
  return to;
}

TwistedClosure twisted_min_closure(const Element& z,
                                   const DiagramAutomorphism& delta,
                                   GenSubset I) {
  const CoxeterSystem sys = z.system();
  validate_automorphism(sys, delta, I);
  if (!sys.spherical(I))
    throw DomainError("twisted closure requires a spherical subset");
  if (!in_standard_parabolic(z, I))
    throw DomainError("element outside the parabolic subgroup");

  std::unordered_set<Word, WordHash> seen{z.word()};
  std::deque<Element> queue{z};
  std::vector<Word> all{z.word()};
  while (!queue.empty()) {
    Element cur = std::move(queue.front());
    queue.pop_front();
    for (Gen s : I.members()) {
      const Element to = multiply(delta(s), multiply(cur, s));
      if (to.length() > cur.length()) continue;
      if (seen.insert(to.word()).second) {
        queue.push_back(to);
        all.push_back(to.word());
      }
    }
  }
  TwistedClosure res;
  res.set = sorted_elements(z, std::move(all));
  res.min_length = res.set.front().length();
  return res;
}

int twisted_min_brute(const Element& z, const DiagramAutomorphism& delta,
                      GenSubset I) {
  const CoxeterSystem sys = z.system();
  validate_automorphism(sys, delta, I);
  if (!in_standard_parabolic(z, I))
    throw DomainError("element outside the parabolic subgroup");
  int best = z.length();
  for (const Element& x : parabolic_elements(sys, I)) {
    // delta(x)^-1 z x
    Word dx;
    for (Gen g : x.word()) dx.push_back(delta(g));
    const Element deltax = reduce(sys, dx);
    const int len = multiply(multiply(inverse(deltax), z), x).length();
    best = std::min(best, len);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Parabolic subset conjugator.
// ---------------------------------------------------------------------------

std::optional<ParabolicConjugation> parabolic_conjugator(
    const CoxeterSystem& sys, GenSubset I, GenSubset J) {
  const int rank = sys.rank();
  if (rank > sys.caps().subset_rank_guard)
    throw ResourceCapError("rank exceeds the subset enumeration guard");

  // Weighted search over subsets; edge weight = length of the move element.
  // The minimal total weight equals the length of the shortest element
  // carrying the simple roots of I onto those of J, so the accumulated
  // lengths along the winning path are additive.
  struct Arrival {
    int dist;
    GenSubset prev;
    Gen s;
    Element x;
    bool settled;
  };
  std::map<std::uint64_t, Arrival> state;
  std::set<std::pair<int, std::uint64_t>> frontier;
  state[I.bits] = {0, I, 0, sys.identity(), false};
  frontier.insert({0, I.bits});

  while (!frontier.empty()) {
    const auto [dist, bits] = *frontier.begin();
    frontier.erase(frontier.begin());
    GenSubset cur{bits};
    state[bits].settled = true;
    if (bits == J.bits) break;

    for (int si = 0; si < rank; ++si) {
      const Gen s = static_cast<Gen>(si);
      if (cur.contains(s)) continue;
      GenSubset grown = cur;
      grown.add(s);
      const GenSubset K = sys.component(grown, s);
      if (!sys.spherical(K)) continue;
      GenSubset K_minus = K;
      K_minus.remove(s);
      const Element x =
          multiply(longest_element(sys, K_minus), longest_element(sys, K));
      // Conjugate every generator of the current subset.
      const Element xinv = inverse(x);
      GenSubset next;
      bool ok = true;
      for (Gen t : cur.members()) {
        const Element conj = multiply(multiply(xinv, t), x);
        if (conj.length() != 1) {
          ok = false;
          break;
        }
        next.add(conj.word()[0]);
      }
      if (!ok)
        throw InternalError("elementary subset move failed to map "
                            "generators to generators");
      const int ndist = dist + x.length();
      auto it = state.find(next.bits);
      if (it == state.end() ||
          (!it->second.settled && ndist < it->second.dist)) {
        if (it != state.end())
          frontier.erase({it->second.dist, next.bits});
        state[next.bits] = {ndist, cur, s, x, false};
        frontier.insert({ndist, next.bits});
      }
    }
  }

  auto it = state.find(J.bits);
  if (it == state.end() || !it->second.settled) return std::nullopt;

  ParabolicConjugation out;
  std::vector<ParabolicMove> rev;
  GenSubset cur = J;
  while (cur != I) {
    const Arrival& a = state.at(cur.bits);
    rev.push_back({a.s, a.prev, cur, a.x});
    cur = a.prev;
  }
  std::reverse(rev.begin(), rev.end());
  out.moves = std::move(rev);
  Element x = sys.identity();
  int total = 0;
  for (const ParabolicMove& mv : out.moves) {
    x = multiply(x, mv.x);
    total += mv.x.length();
  }
  if (x.length() != total)
    throw InternalError("subset conjugator lengths failed to add");
  // Final conjugation check.
  const Element xinv = inverse(x);
  GenSubset image;
  for (Gen t : I.members()) {
    const Element conj = multiply(multiply(xinv, t), x);
    if (conj.length() != 1)
      throw InternalError("subset conjugator image is not a generator");
    image.add(conj.word()[0]);
  }
  if (image != J)
    throw InternalError("subset conjugator missed the target subset");
  out.x = std::move(x);
  return out;
}

}  // namespace cox
