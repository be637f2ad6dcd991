#pragma once

#include <memory>
#include <string>
#include <vector>

#include "doctrina/doctrine.hpp"

namespace doctrina {

/// Subobject doctrine on a window of skeletal finite sets of sizes 0..N
/// with all functions, chosen product cells wherever the product size stays
/// within N, powerset fibers, inverse-image reindexing and diagonal deltas.
/// Carries the finite-set model.
DoctrinePtr finset_sub(unsigned N);

/// Weak-subobject doctrine on the same window: fibers are the poset
/// reflections of the slice categories (restricted to in-window domains),
/// reindexing by chosen weak pullback. The builder verifies that
/// factorization classes coincide with images before keying fibers by them.
DoctrinePtr finset_weaksub(unsigned N);

/// Degenerate posetal doctrine: the base is a finite chain 0 < 1 < ... of
/// `chain` elements viewed as a category with meets as products, each fiber
/// a chain of `fiber_size` elements, reindexing the identity map. Delta is
/// forced to top; the builder asserts the forcing.
DoctrinePtr posetal_chain(unsigned chain, unsigned fiber_size);

/// Two parallel arrows f, g : A -> B that every fiber treats identically
/// (top <= P_<f,g>(delta_B)), with squares for A and B in-window; the
/// extensional collapse merges exactly the f/g-derived pairs. No model is
/// attached: the fixture exercises the pure window paths.
DoctrinePtr blur();

/// Full subdoctrine on a subset of objects; products kept when both
/// factors' chosen cell survives. Used to derive micro fixtures.
DoctrinePtr restrict_doctrine(const DoctrinePtr& P, const std::vector<ObjId>& keep,
                              const std::string& name);

} // namespace doctrina
