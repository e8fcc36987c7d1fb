#pragma once

#include <optional>
#include <string>
#include <utility>

#include "als/dataset.hpp"
#include "als/pool.hpp"

namespace als {

enum class ScenarioKind { standard, imbalance, openset, compositional };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

/// Recipe for turning a standard dataset/pool into an imbalanced, open-set,
/// or compositional setting.
struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::standard;
    double ood_rate = 0.0;  // fraction of the unlabeled pool that is OOD
    double gamma = 1.0;     // least-to-most frequent class size ratio
    std::string ood_source; // identifier of the table supplying OOD samples

    bool needs_ood() const {
        return kind == ScenarioKind::openset || kind == ScenarioKind::compositional;
    }
    bool needs_imbalance() const {
        return kind == ScenarioKind::imbalance || kind == ScenarioKind::compositional;
    }
    void validate() const;
};

/// Long-tail subsample: class i keeps round(n_max * gamma^(i/(C-1))) rows,
/// chosen uniformly, where n_max is the largest class size and class 0 is the
/// most frequent. Rounding is half-up; relative row order is preserved.
DatasetTable apply_imbalance(const DatasetTable& dataset, double gamma, RngStream& rng);

/// Per-class retained-count profile for the given gamma (round-half-up).
std::vector<int> imbalance_quotas(int n_max, double gamma, int class_count);

/// Injects OOD rows so that |OOD in unlabeled| / |unlabeled| hits ood_rate
/// within rounding. OOD rows are appended to the dataset carrying the
/// sentinel label and enter the unlabeled set; the labeled set is untouched.
std::pair<PoolState, DatasetTable> apply_openset(const PoolState& id_pool,
                                                 const DatasetTable& id_dataset,
                                                 const DatasetTable& ood_source,
                                                 double ood_rate, RngStream& rng);

/// Number of OOD rows needed so that ood / (id_unlabeled + ood) == rate.
int openset_injection_count(int id_unlabeled, double ood_rate);

/// Applies imbalance first (to ID data only), then open-set injection.
/// Standard kind returns the dataset untouched with every sample unlabeled.
/// `ood_source` may be null unless spec.needs_ood().
std::pair<DatasetTable, PoolState> build_scenario(const ScenarioSpec& spec,
                                                  const DatasetTable& dataset,
                                                  const DatasetTable* ood_source,
                                                  RngStream& rng);

} // namespace als
