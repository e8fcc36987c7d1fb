#include "als/pool.hpp"

#include <algorithm>
#include <numeric>

#include "als/errors.hpp"

namespace als {

PoolState PoolState::all_unlabeled(int n) {
    PoolState pool;
    pool.unlabeled.resize(static_cast<std::size_t>(n));
    std::iota(pool.unlabeled.begin(), pool.unlabeled.end(), 0);
    return pool;
}

bool contains_index(const IndexSet& sorted, int value) {
    return std::binary_search(sorted.begin(), sorted.end(), value);
}

IndexSet set_difference(const IndexSet& sorted_a, const IndexSet& sorted_b) {
    IndexSet out;
    out.reserve(sorted_a.size());
    std::set_difference(sorted_a.begin(), sorted_a.end(), sorted_b.begin(), sorted_b.end(),
                        std::back_inserter(out));
    return out;
}

IndexSet set_union(const IndexSet& sorted_a, const IndexSet& sorted_b) {
    IndexSet out;
    out.reserve(sorted_a.size() + sorted_b.size());
    std::set_union(sorted_a.begin(), sorted_a.end(), sorted_b.begin(), sorted_b.end(),
                   std::back_inserter(out));
    return out;
}

namespace {

void check_sorted_unique(const IndexSet& set, const char* which) {
    for (std::size_t i = 1; i < set.size(); ++i) {
        if (set[i - 1] >= set[i]) {
            throw data_error(std::string("pool ") + which + " set not sorted/unique");
        }
    }
}

} // namespace

void validate_pool(const PoolState& pool, const DatasetTable& dataset) {
    check_sorted_unique(pool.labeled, "labeled");
    check_sorted_unique(pool.unlabeled, "unlabeled");
    check_sorted_unique(pool.discarded, "discarded");

    const int n = dataset.size();
    auto check_range = [n](const IndexSet& set, const char* which) {
        for (int idx : set) {
            if (idx < 0 || idx >= n) {
                throw data_error(std::string("pool ") + which + " index " + std::to_string(idx) +
                                 " outside [0, " + std::to_string(n) + ")");
            }
        }
    };
    check_range(pool.labeled, "labeled");
    check_range(pool.unlabeled, "unlabeled");
    check_range(pool.discarded, "discarded");

    auto overlaps = [](const IndexSet& a, const IndexSet& b) {
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] == b[j]) return true;
            if (a[i] < b[j]) ++i; else ++j;
        }
        return false;
    };
    if (overlaps(pool.labeled, pool.unlabeled) || overlaps(pool.labeled, pool.discarded) ||
        overlaps(pool.unlabeled, pool.discarded)) {
        throw data_error("pool sets are not pairwise disjoint");
    }

    for (int idx : pool.labeled) {
        if (dataset.is_ood(idx)) {
            throw data_error("labeled set contains OOD sample " + std::to_string(idx));
        }
    }
}

PoolState sample_initial_labeled(const PoolState& pool, const DatasetTable& dataset,
                                 int n_initial, RngStream& rng) {
    if (n_initial < 0) {
        throw usage_error("n_initial must be >= 0");
    }
    IndexSet eligible;
    eligible.reserve(pool.unlabeled.size());
    for (int idx : pool.unlabeled) {
        if (!dataset.is_ood(idx)) eligible.push_back(idx);
    }
    if (n_initial > static_cast<int>(eligible.size())) {
        throw usage_error("n_initial (" + std::to_string(n_initial) +
                          ") exceeds in-distribution unlabeled samples (" +
                          std::to_string(eligible.size()) + ")");
    }

    IndexSet drawn = rng.sample_without_replacement(eligible, n_initial);
    std::sort(drawn.begin(), drawn.end());

    PoolState out = pool;
    out.labeled = set_union(out.labeled, drawn);
    out.unlabeled = set_difference(out.unlabeled, drawn);
    return out;
}

} // namespace als
