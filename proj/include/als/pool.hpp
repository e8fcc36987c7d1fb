#pragma once

#include "als/dataset.hpp"
#include "als/rng.hpp"
#include "als/types.hpp"

namespace als {

/// Partition of sample indices into labeled / unlabeled / discarded sets.
/// Discarded holds queried samples the oracle revealed as OOD; they stay out
/// of both other sets but their query cost has been spent.
///
/// Sets are pairwise disjoint, sorted ascending, and contained in [0, N).
/// Mutated only by the engine's single orchestrating thread.
struct PoolState {
    IndexSet labeled;
    IndexSet unlabeled;
    IndexSet discarded;

    static PoolState all_unlabeled(int n);

    int universe_size() const {
        return static_cast<int>(labeled.size() + unlabeled.size() + discarded.size());
    }
};

/// Throws if the partition invariants are violated (overlap, out-of-range
/// index, unsorted storage, or an OOD sample in the labeled set).
void validate_pool(const PoolState& pool, const DatasetTable& dataset);

/// Moves exactly n_initial in-distribution indices unlabeled -> labeled,
/// uniformly at random without replacement. OOD samples are never eligible.
PoolState sample_initial_labeled(const PoolState& pool, const DatasetTable& dataset,
                                 int n_initial, RngStream& rng);

// Sorted-set helpers shared by pool bookkeeping.
bool contains_index(const IndexSet& sorted, int value);
IndexSet set_difference(const IndexSet& sorted_a, const IndexSet& sorted_b);
IndexSet set_union(const IndexSet& sorted_a, const IndexSet& sorted_b);

} // namespace als
