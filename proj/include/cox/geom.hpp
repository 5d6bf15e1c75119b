#pragma once

#include <Eigen/Dense>

#include "cox/element.hpp"
#include "cox/system.hpp"

// Numeric length/descent engine through the standard reflection
// representation.  It is an accelerator: the exact rewriting engine stays
// authoritative, and fast paths are enabled only after a per-system
// cross-check gate has passed.

namespace cox::geom {

// Bilinear form B with B_ss = 1 and B_st = -cos(pi/m_st); infinite entries
// map to -1.
Eigen::MatrixXd gram_matrix(const CoxeterSystem& sys);

// Coordinate vector of the simple root of s in the simple-root basis.
Eigen::VectorXd simple_root(const CoxeterSystem& sys, Gen s);

// Reflection action v - 2 B(alpha_s, v) alpha_s.
Eigen::VectorXd reflect(const Eigen::MatrixXd& gram, Gen s,
                        const Eigen::VectorXd& v);

// Numeric counterpart of is_reduced: w = s1..sd is reduced iff every
// prefix image s1..s_{i-1}(alpha_{s_i}) is a positive root.
bool is_reduced_geom(const CoxeterSystem& sys, const Word& w);

// Numeric descent sets; must agree with the exact engine.
GenSubset left_descents_geom(const Element& a);
GenSubset right_descents_geom(const Element& a);

}  // namespace cox::geom
