#pragma once

#include <string>

#include "als/rng.hpp"
#include "als/types.hpp"

namespace als {

/// Label value marking a sample whose true class lies outside the task's
/// known classes. Such samples may sit in the unlabeled pool but are never
/// eligible as training labels.
inline constexpr int kOodLabel = -1;

/// Feature matrix plus labels; the universe from which pools are carved.
/// Immutable after construction and safe to share across threads.
struct DatasetTable {
    Matrix features;   // N x D
    IntVector labels;  // length N, each in [0, class_count) or kOodLabel
    int class_count = 0;
    std::string name;

    int size() const { return static_cast<int>(features.rows()); }
    int dim() const { return static_cast<int>(features.cols()); }
    bool is_ood(int i) const { return labels(i) == kOodLabel; }
};

/// Checks the DatasetTable invariants, throwing data_error on violation.
void validate_dataset(const DatasetTable& table);

/// Loads a headerless CSV where each row is D floats followed by one integer
/// label. Labels must lie in [0, class_count) or equal the OOD sentinel -1.
/// Ragged or malformed rows are rejected with the offending row number.
DatasetTable load_csv_dataset(const std::string& path, int class_count);

/// Writes a DatasetTable in the same CSV layout the loader accepts.
void save_csv_dataset(const DatasetTable& table, const std::string& path);

/// Synthetic stand-in for image/text feature sets: `class_count` isotropic
/// Gaussian blobs of `per_class` points each, class means placed on a circle
/// of radius 4 in the first two feature dimensions (on a line for dim == 1).
/// Rows are grouped class-major; deterministic given the stream.
DatasetTable generate_gaussian_blobs(int class_count, int per_class, int dim,
                                     double spread, RngStream& rng,
                                     const std::string& name = "blobs");

/// Class mean used by generate_gaussian_blobs; exposed so OOD sources can be
/// placed relative to the in-distribution geometry.
Vector blob_mean(int cls, int class_count, int dim, double radius = 4.0);

/// OOD companion set for a blob dataset: blobs at distinct far-out means
/// (radius 12 ring rotated half a step), every label set to the sentinel.
DatasetTable generate_ood_blobs(int blob_count, int per_blob, int dim,
                                double spread, RngStream& rng);

} // namespace als
