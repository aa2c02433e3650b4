#include "lticlust/evaluation.hpp"

#include "lticlust/error.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace lticlust {

double aligned_accuracy(const std::vector<std::size_t>& predicted, const std::vector<std::size_t>& reference) {
    if (predicted.size() != reference.size()) throw InputError("label vectors differ in length");
    if (predicted.empty()) return 1.0;
    const std::size_t P = *std::max_element(predicted.begin(), predicted.end()) + 1;
    const std::size_t R = *std::max_element(reference.begin(), reference.end()) + 1;
    const std::size_t K = std::max(P, R);
    if (K > 20) throw InputError("aligned_accuracy supports at most 20 labels");

    std::vector<std::vector<int>> overlap(K, std::vector<int>(K, 0));
    for (std::size_t i = 0; i < predicted.size(); ++i) ++overlap[predicted[i]][reference[i]];

    // best[mask]: maximum matches assigning the first popcount(mask) predicted
    // labels to the reference labels in mask.
    const std::size_t full = std::size_t{1} << K;
    std::vector<int> best(full, std::numeric_limits<int>::min());
    best[0] = 0;
    for (std::size_t mask = 0; mask < full; ++mask) {
        if (best[mask] == std::numeric_limits<int>::min()) continue;
        const auto row = static_cast<std::size_t>(std::popcount(mask));
        if (row >= K) continue;
        for (std::size_t col = 0; col < K; ++col) {
            if (mask & (std::size_t{1} << col)) continue;
            const std::size_t next = mask | (std::size_t{1} << col);
            best[next] = std::max(best[next], best[mask] + overlap[row][col]);
        }
    }
    return static_cast<double>(best[full - 1]) / static_cast<double>(predicted.size());
}

}  // namespace lticlust
