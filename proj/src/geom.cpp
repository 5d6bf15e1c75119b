#include "cox/geom.hpp"

#include "core_detail.hpp"
#include "engine.hpp"

namespace cox::geom {

using detail::Access;
using detail::engine_of;

Eigen::MatrixXd gram_matrix(const CoxeterSystem& sys) {
  return engine_of(*Access::core(sys)).geom().gram();
}

Eigen::VectorXd simple_root(const CoxeterSystem& sys, Gen s) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(sys.rank());
  v(s) = 1.0;
  return v;
}

Eigen::VectorXd reflect(const Eigen::MatrixXd& gram, Gen s,
                        const Eigen::VectorXd& v) {
  Eigen::VectorXd out = v;
  out(s) -= 2.0 * gram.row(s).dot(v);
  return out;
}

bool is_reduced_geom(const CoxeterSystem& sys, const Word& w) {
  for (Gen g : w)
    if (g >= sys.rank())
      throw DomainError("word contains an out-of-range generator index");
  return engine_of(*Access::core(sys)).geom().is_reduced(w);
}

GenSubset left_descents_geom(const Element& a) {
  const auto& eng = engine_of(*Access::core(a));
  return GenSubset{eng.geom().left_descents(a.word())};
}

GenSubset right_descents_geom(const Element& a) {
  const auto& eng = engine_of(*Access::core(a));
  return GenSubset{eng.geom().right_descents(a.word())};
}

}  // namespace cox::geom
