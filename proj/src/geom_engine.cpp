#include "geom_engine.hpp"

#include <cmath>
#include <numbers>

#include "core_detail.hpp"

namespace cox::detail {

namespace {
// Root coordinates are compared against simple roots when locating exchange
// deletions; distinct roots are well separated at the depths we allow.
constexpr double kRootMatchTol = 1e-6;
}  // namespace

GeomEngine::GeomEngine(const SystemCore& core)
    : rank_(core.rank),
      B_(core.rank, core.rank),
      tol_(core.caps.geom_tol),
      depth_cap_(core.caps.geom_depth_cap) {
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) {
      if (i == j) {
        B_(i, j) = 1.0;
        continue;
      }
      const int m = core.m(static_cast<Gen>(i), static_cast<Gen>(j));
      B_(i, j) = (m == 0) ? -1.0 : -std::cos(std::numbers::pi / m);
    }
}

void GeomEngine::check_depth(std::size_t len) const {
  if (len > static_cast<std::size_t>(depth_cap_))
    throw GeomDepthError("word exceeds the numeric depth cap");
}

void GeomEngine::apply_reflection(Gen s, Eigen::VectorXd& v) const {
  const double c = B_.row(s).dot(v);
  v(s) -= 2.0 * c;
}

GeomEngine::Sign GeomEngine::sign_of(const Eigen::VectorXd& v) const {
  const double mx = v.maxCoeff();
  const double mn = v.minCoeff();
  if (mx > tol_ && mn < -tol_)
    throw GeomMixedSignError("root vector has coordinates of both signs");
  if (mx <= tol_ && mn >= -tol_)
    throw GeomToleranceError("root vector is ambiguous within tolerance");
  return mx > tol_ ? Sign::Positive : Sign::Negative;
}

void GeomEngine::compose_right(Eigen::MatrixXd& M, Gen s) const {
  // (M o sigma_s) e_j = M e_j - 2 B(s,j) M e_s
  const Eigen::VectorXd col_s = M.col(s);
  for (int j = 0; j < rank_; ++j) M.col(j) -= 2.0 * B_(s, j) * col_s;
}

void GeomEngine::compose_left(Eigen::MatrixXd& M, Gen s) const {
  // (sigma_s o M) differs from M only in row s.
  const Eigen::RowVectorXd r = B_.row(s) * M;
  M.row(s) -= 2.0 * r;
}

bool GeomEngine::is_reduced(const Word& w) const {
  check_depth(w.size());
  // w is reduced iff each prefix image of the next simple root is positive.
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(rank_, rank_);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sign_of(P.col(w[i])) == Sign::Negative) return false;
    compose_right(P, w[i]);
  }
  return true;
}

std::uint64_t GeomEngine::left_descents(const Word& reduced) const {
  check_depth(reduced.size());
  // s is a left descent iff w^-1(alpha_s) is negative.
  Eigen::MatrixXd N = Eigen::MatrixXd::Identity(rank_, rank_);
  for (Gen g : reduced) compose_left(N, g);
  std::uint64_t bits = 0;
  for (int s = 0; s < rank_; ++s)
    if (sign_of(N.col(s)) == Sign::Negative) bits |= std::uint64_t{1} << s;
  return bits;
}

std::uint64_t GeomEngine::right_descents(const Word& reduced) const {
  check_depth(reduced.size());
  // s is a right descent iff w(alpha_s) is negative.
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(rank_, rank_);
  for (Gen g : reduced) compose_right(M, g);
  std::uint64_t bits = 0;
  for (int s = 0; s < rank_; ++s)
    if (sign_of(M.col(s)) == Sign::Negative) bits |= std::uint64_t{1} << s;
  return bits;
}

bool GeomEngine::matches_simple(const Eigen::VectorXd& v, Gen t) const {
  for (int i = 0; i < rank_; ++i) {
    const double want = (i == t) ? 1.0 : 0.0;
    if (std::abs(v(i) - want) > kRootMatchTol) return false;
  }
  return true;
}

Word GeomEngine::canonical_of_reduced(const Word& reduced) const {
  check_depth(reduced.size());
  Word v = reduced;
  Word out;
  out.reserve(v.size());
  while (!v.empty()) {
    // Smallest left descent of the element spelled by v.
    Eigen::MatrixXd N = Eigen::MatrixXd::Identity(rank_, rank_);
    for (Gen g : v) compose_left(N, g);
    int t = -1;
    for (int s = 0; s < rank_; ++s)
      if (sign_of(N.col(s)) == Sign::Negative) {
        t = s;
        break;
      }
    if (t < 0)
      throw InternalError("nonempty reduced word without left descents");
    // Exchange: t * v deletes the letter whose prefix root is alpha_t.
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(rank_, rank_);
    std::size_t del = v.size();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (matches_simple(P.col(v[i]), static_cast<Gen>(t))) {
        del = i;
        break;
      }
      compose_right(P, v[i]);
    }
    if (del == v.size())
      throw InternalError("left descent without an exchange position");
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(del));
    out.push_back(static_cast<Gen>(t));
  }
  return out;
}

Word GeomEngine::right_mult(const Word& nf, Gen s) const {
  check_depth(nf.size() + 1);
  // Right descent test: sign of w(alpha_s).
  Eigen::VectorXd x = Eigen::VectorXd::Zero(rank_);
  x(s) = 1.0;
  for (auto it = nf.rbegin(); it != nf.rend(); ++it) apply_reflection(*it, x);
  if (sign_of(x) == Sign::Positive) {
    Word grown = nf;
    grown.push_back(s);
    return canonical_of_reduced(grown);
  }
  // Exchange from the right: delete the letter v_i with
  // (v_{i+1} .. v_d)(alpha_s) = alpha_{v_i}.
  Eigen::VectorXd y = Eigen::VectorXd::Zero(rank_);
  y(s) = 1.0;
  for (std::size_t i = nf.size(); i-- > 0;) {
    if (matches_simple(y, nf[i])) {
      Word shrunk = nf;
      shrunk.erase(shrunk.begin() + static_cast<std::ptrdiff_t>(i));
      return canonical_of_reduced(shrunk);
    }
    apply_reflection(nf[i], y);
  }
  throw InternalError("right descent without an exchange position");
}

}  // namespace cox::detail
