#include "als/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "als/errors.hpp"

namespace als {

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::standard: return "standard";
        case ScenarioKind::imbalance: return "imbalance";
        case ScenarioKind::openset: return "openset";
        case ScenarioKind::compositional: return "compositional";
    }
    return "standard";
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
    if (name == "standard") return ScenarioKind::standard;
    if (name == "imbalance") return ScenarioKind::imbalance;
    if (name == "openset") return ScenarioKind::openset;
    if (name == "compositional") return ScenarioKind::compositional;
    throw usage_error("unknown scenario kind: " + name);
}

void ScenarioSpec::validate() const {
    if (gamma <= 0.0 || gamma > 1.0) {
        throw usage_error("imbalance gamma must lie in (0, 1], got " + std::to_string(gamma));
    }
    if (ood_rate < 0.0 || ood_rate >= 1.0) {
        throw usage_error("ood_rate must lie in [0, 1), got " + std::to_string(ood_rate));
    }
    if (needs_ood()) {
        if (ood_rate <= 0.0) {
            throw usage_error(to_string(kind) + " scenario requires ood_rate > 0");
        }
        if (ood_source.empty()) {
            throw usage_error(to_string(kind) + " scenario requires an OOD source");
        }
    }
}

std::vector<int> imbalance_quotas(int n_max, double gamma, int class_count) {
    std::vector<int> quotas(static_cast<std::size_t>(class_count));
    for (int i = 0; i < class_count; ++i) {
        const double exact = n_max * std::pow(gamma, static_cast<double>(i) / (class_count - 1));
        quotas[static_cast<std::size_t>(i)] = static_cast<int>(std::floor(exact + 0.5));
    }
    return quotas;
}

DatasetTable apply_imbalance(const DatasetTable& dataset, double gamma, RngStream& rng) {
    if (gamma <= 0.0 || gamma > 1.0) {
        throw usage_error("apply_imbalance: gamma must lie in (0, 1], got " + std::to_string(gamma));
    }
    const int c = dataset.class_count;
    std::vector<IndexSet> by_class(static_cast<std::size_t>(c));
    for (int i = 0; i < dataset.size(); ++i) {
        const int y = dataset.labels(i);
        if (y == kOodLabel) {
            throw data_error("apply_imbalance: dataset contains OOD samples; imbalance applies "
                             "to ID data only");
        }
        by_class[static_cast<std::size_t>(y)].push_back(i);
    }
    int n_max = 0;
    for (const auto& members : by_class) n_max = std::max(n_max, static_cast<int>(members.size()));

    const std::vector<int> quotas = imbalance_quotas(n_max, gamma, c);
    IndexSet keep;
    for (int i = 0; i < c; ++i) {
        const auto& members = by_class[static_cast<std::size_t>(i)];
        const int quota = quotas[static_cast<std::size_t>(i)];
        if (static_cast<int>(members.size()) < quota) {
            throw data_error("apply_imbalance: class " + std::to_string(i) + " has " +
                             std::to_string(members.size()) + " samples but needs " +
                             std::to_string(quota));
        }
        IndexSet chosen = rng.sample_without_replacement(members, quota);
        keep.insert(keep.end(), chosen.begin(), chosen.end());
    }
    std::sort(keep.begin(), keep.end());

    DatasetTable out;
    out.class_count = c;
    out.name = dataset.name;
    out.features.resize(static_cast<Eigen::Index>(keep.size()), dataset.dim());
    out.labels.resize(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t r = 0; r < keep.size(); ++r) {
        out.features.row(static_cast<Eigen::Index>(r)) = dataset.features.row(keep[r]);
        out.labels(static_cast<Eigen::Index>(r)) = dataset.labels(keep[r]);
    }
    return out;
}

int openset_injection_count(int id_unlabeled, double ood_rate) {
    // ood / (id + ood) == rate  =>  ood == rate * id / (1 - rate)
    return static_cast<int>(std::floor(ood_rate * id_unlabeled / (1.0 - ood_rate) + 0.5));
}

std::pair<PoolState, DatasetTable> apply_openset(const PoolState& id_pool,
                                                 const DatasetTable& id_dataset,
                                                 const DatasetTable& ood_source,
                                                 double ood_rate, RngStream& rng) {
    if (ood_rate < 0.0 || ood_rate >= 1.0) {
        throw usage_error("apply_openset: ood_rate must lie in [0, 1), got " +
                          std::to_string(ood_rate));
    }
    if (ood_rate == 0.0) {
        return {id_pool, id_dataset};
    }
    if (ood_source.dim() != id_dataset.dim()) {
        throw data_error("apply_openset: OOD source dimension " + std::to_string(ood_source.dim()) +
                         " != dataset dimension " + std::to_string(id_dataset.dim()));
    }
    const int id_unlabeled = static_cast<int>(id_pool.unlabeled.size());
    const int n_ood = openset_injection_count(id_unlabeled, ood_rate);
    if (n_ood > ood_source.size()) {
        throw data_error("apply_openset: need " + std::to_string(n_ood) +
                         " OOD samples but source has " + std::to_string(ood_source.size()));
    }

    IndexSet chosen = rng.sample_without_replacement(ood_source.size(), n_ood);
    std::sort(chosen.begin(), chosen.end());

    const int n_id = id_dataset.size();
    DatasetTable merged;
    merged.class_count = id_dataset.class_count;
    merged.name = id_dataset.name;
    merged.features.resize(n_id + n_ood, id_dataset.dim());
    merged.labels.resize(n_id + n_ood);
    merged.features.topRows(n_id) = id_dataset.features;
    merged.labels.head(n_id) = id_dataset.labels;
    for (int r = 0; r < n_ood; ++r) {
        merged.features.row(n_id + r) = ood_source.features.row(chosen[static_cast<std::size_t>(r)]);
        merged.labels(n_id + r) = kOodLabel;
    }

    PoolState pool = id_pool;
    for (int r = 0; r < n_ood; ++r) pool.unlabeled.push_back(n_id + r);
    // Appended indices exceed every ID index, so the set stays sorted.
    return {std::move(pool), std::move(merged)};
}

std::pair<DatasetTable, PoolState> build_scenario(const ScenarioSpec& spec,
                                                  const DatasetTable& dataset,
                                                  const DatasetTable* ood_source,
                                                  RngStream& rng) {
    spec.validate();
    if (spec.needs_ood() && ood_source == nullptr) {
        throw usage_error("build_scenario: scenario needs an OOD source table");
    }

    DatasetTable working = dataset;
    if (spec.needs_imbalance()) {
        working = apply_imbalance(working, spec.gamma, rng);
    }
    PoolState pool = PoolState::all_unlabeled(working.size());
    if (spec.needs_ood()) {
        auto [pool2, merged] = apply_openset(pool, working, *ood_source, spec.ood_rate, rng);
        return {std::move(merged), std::move(pool2)};
    }
    return {std::move(working), std::move(pool)};
}

} // namespace als
