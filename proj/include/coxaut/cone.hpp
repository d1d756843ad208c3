#pragma once

#include <span>

#include "coxaut/coxeter.hpp"

namespace coxaut {

/// Whether gamma is a nonnegative combination of gens. Decided exactly by a
/// phase-one simplex over the scalar field with Bland's rule.
bool cone_member(const CoxeterSystem& sys, const RootVector& gamma, std::span<const RootVector> gens);

/// Same, for pooled roots.
bool cone_member(const CoxeterSystem& sys, RootId gamma, std::span<const RootId> gens);

}  // namespace coxaut
