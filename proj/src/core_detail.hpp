#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cox/element.hpp"
#include "cox/system.hpp"
#include "cox/types.hpp"

namespace cox::detail {

class Engine;

// Immutable data of a system plus its (internally mutable) engine caches.
struct SystemCore {
  int rank = 0;
  std::vector<std::string> labels;
  std::vector<int> matrix;  // row-major; 0 encodes infinity
  Caps caps;
  std::unique_ptr<Engine> engine;

  SystemCore(std::vector<std::string> labels_in, std::vector<int> matrix_in,
             Caps caps_in);
  ~SystemCore();

  int m(Gen a, Gen b) const { return matrix[a * rank + b]; }
  bool m_infinite(Gen a, Gen b) const { return m(a, b) == 0; }
};

// Internal constructor access for Element and CoxeterSystem.
struct Access {
  static Element make_element(std::shared_ptr<const SystemCore> core,
                              Word nf) {
    return Element(std::move(core), std::move(nf));
  }
  static const std::shared_ptr<const SystemCore>& core(const Element& e) {
    return e.core_;
  }
  static const std::shared_ptr<const SystemCore>& core(
      const CoxeterSystem& s) {
    return s.core_;
  }
  static CoxeterSystem make_system(std::shared_ptr<const SystemCore> core) {
    return CoxeterSystem(std::move(core));
  }
};

// The engine of the system that owns this core.
Engine& engine_of(const SystemCore& core);

// Diagram classification against the finite-type list.
bool finite_type_impl(const SystemCore& core, GenSubset I);

// Shared precondition helper.
inline void require_same_system(const Element& a, const Element& b) {
  if (Access::core(a).get() != Access::core(b).get())
    throw MixedSystemError("elements belong to different systems");
}

}  // namespace cox::detail
