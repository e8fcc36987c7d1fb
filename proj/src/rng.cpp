#include "als/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace als {

std::vector<int> RngStream::sample_without_replacement(int n, int k) {
    if (k < 0 || k > n) {
        throw std::invalid_argument("sample_without_replacement: k outside [0, n]");
    }
    std::vector<int> items(static_cast<std::size_t>(n));
    std::iota(items.begin(), items.end(), 0);
    // Partial Fisher-Yates: the first k slots end up holding the draw.
    for (int i = 0; i < k; ++i) {
        const int j = i + uniform_int(n - i);
        std::swap(items[static_cast<std::size_t>(i)], items[static_cast<std::size_t>(j)]);
    }
    items.resize(static_cast<std::size_t>(k));
    return items;
}

IndexSet RngStream::sample_without_replacement(const IndexSet& items, int k) {
    std::vector<int> positions = sample_without_replacement(static_cast<int>(items.size()), k);
    IndexSet out;
    out.reserve(positions.size());
    for (int p : positions) out.push_back(items[static_cast<std::size_t>(p)]);
    return out;
}

} // namespace als
