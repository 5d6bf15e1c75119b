#pragma once

#include <Eigen/Dense>

#include "cox/errors.hpp"
#include "cox/types.hpp"

namespace cox::detail {

struct SystemCore;

// Reflection-representation engine.  Computes reducedness, descents and the
// canonical normal form of reduced words in time polynomial in the word
// length, in double precision with a fixed sign-test tolerance.  All results
// are cross-checked against the exact engine before the fast path is used
// (see Engine::geom_gate_passed).
class GeomEngine {
public:
  explicit GeomEngine(const SystemCore& core);

  const Eigen::MatrixXd& gram() const { return B_; }

  // Prefix-positivity criterion.
  bool is_reduced(const Word& w) const;

  // Descent bitsets of the element represented by a reduced word.
  std::uint64_t left_descents(const Word& reduced) const;
  std::uint64_t right_descents(const Word& reduced) const;

  // Greedy smallest-left-descent normal form of a reduced word.
  Word canonical_of_reduced(const Word& reduced) const;

  // Normal form of (nf * s) given the canonical reduced word nf.
  Word right_mult(const Word& nf, Gen s) const;

  // sigma_s(v) = v - 2 B(alpha_s, v) alpha_s.
  void apply_reflection(Gen s, Eigen::VectorXd& v) const;

private:
  enum class Sign { Positive, Negative };
  Sign sign_of(const Eigen::VectorXd& v) const;

  void check_depth(std::size_t len) const;
  // M := M o sigma_s (operator composition on the right).
  void compose_right(Eigen::MatrixXd& M, Gen s) const;
  // M := sigma_s o M.
  void compose_left(Eigen::MatrixXd& M, Gen s) const;
  // True when v matches +alpha_t within the root-matching tolerance.
  bool matches_simple(const Eigen::VectorXd& v, Gen t) const;

  int rank_;
  Eigen::MatrixXd B_;
  double tol_;
  int depth_cap_;
};

}  // namespace cox::detail
