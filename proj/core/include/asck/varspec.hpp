#pragma once

#include <memory>
#include <string>
#include <vector>

#include "asck/algebra.hpp"
#include "asck/common.hpp"

namespace asck {

enum class ClassMode { Variety, Quasivariety };

// A finitely generated (quasi)variety: the finite list of finite generating
// algebras, the mode flag, and resource caps.
struct VarietySpec {
  std::vector<std::shared_ptr<const FiniteAlgebra>> generators;
  ClassMode mode = ClassMode::Variety;
  Caps caps;
  std::string name;

  const Signature& signature() const {
    if (generators.empty()) throw PreconditionError("variety spec needs at least one generator");
    const Signature& sig = generators.front()->signature();
    for (const auto& g : generators)
      if (!(g->signature() == sig))
        throw PreconditionError("generator signatures disagree");
    return sig;
  }
};

inline VarietySpec make_variety(std::vector<FiniteAlgebra> gens,
                                ClassMode mode = ClassMode::Variety, Caps caps = {}) {
  VarietySpec k;
  for (auto& g : gens) k.generators.push_back(std::make_shared<FiniteAlgebra>(std::move(g)));
  k.mode = mode;
  k.caps = caps;
  return k;
}

}  // namespace asck
