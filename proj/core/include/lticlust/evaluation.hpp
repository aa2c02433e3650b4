#pragma once

#include <cstddef>
#include <vector>

namespace lticlust {

/// Fraction of items whose label matches the reference after the best
/// one-to-one relabeling of the predicted clusters. Supports up to 20
/// distinct labels on either side.
double aligned_accuracy(const std::vector<std::size_t>& predicted, const std::vector<std::size_t>& reference);

}  // namespace lticlust
