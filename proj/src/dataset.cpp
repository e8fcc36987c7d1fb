#include "als/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "als/errors.hpp"

namespace als {

void validate_dataset(const DatasetTable& table) {
    if (table.features.rows() != table.labels.size()) {
        throw data_error("dataset '" + table.name + "': feature rows (" +
                         std::to_string(table.features.rows()) + ") != label count (" +
                         std::to_string(table.labels.size()) + ")");
    }
    if (table.class_count < 2) {
        throw data_error("dataset '" + table.name + "': class_count must be >= 2");
    }
    for (int i = 0; i < table.labels.size(); ++i) {
        const int y = table.labels(i);
        if (y != kOodLabel && (y < 0 || y >= table.class_count)) {
            throw data_error("dataset '" + table.name + "': label " + std::to_string(y) +
                             " at row " + std::to_string(i) + " outside [0, " +
                             std::to_string(table.class_count) + ") and != -1");
        }
    }
}

DatasetTable load_csv_dataset(const std::string& path, int class_count) {
    std::ifstream in(path);
    if (!in) {
        throw data_error("cannot open dataset file: " + path);
    }

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::string line;
    int line_no = 0;
    int dim = -1;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> fields;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw data_error(path + ":" + std::to_string(line_no) +
                                 ": cannot parse field '" + cell + "'");
            }
            while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
            if (pos != cell.size()) {
                throw data_error(path + ":" + std::to_string(line_no) +
                                 ": trailing junk in field '" + cell + "'");
            }
            fields.push_back(v);
        }
        if (fields.size() < 2) {
            throw data_error(path + ":" + std::to_string(line_no) +
                             ": need at least one feature and a label");
        }
        const double raw_label = fields.back();
        fields.pop_back();
        if (raw_label != std::floor(raw_label)) {
            throw data_error(path + ":" + std::to_string(line_no) +
                             ": label must be an integer, got " + std::to_string(raw_label));
        }
        const int label = static_cast<int>(raw_label);
        if (label != kOodLabel && (label < 0 || label >= class_count)) {
            throw data_error(path + ":" + std::to_string(line_no) + ": label " +
                             std::to_string(label) + " outside [0, " +
                             std::to_string(class_count) + ") and != -1");
        }
        if (dim < 0) {
            dim = static_cast<int>(fields.size());
        } else if (static_cast<int>(fields.size()) != dim) {
            throw data_error(path + ":" + std::to_string(line_no) + ": ragged row, expected " +
                             std::to_string(dim) + " features, got " +
                             std::to_string(fields.size()));
        }
        rows.push_back(std::move(fields));
        labels.push_back(label);
    }
    if (rows.empty()) {
        throw data_error(path + ": empty dataset");
    }

    DatasetTable table;
    table.class_count = class_count;
    table.name = path;
    table.features.resize(static_cast<Eigen::Index>(rows.size()), dim);
    table.labels.resize(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int d = 0; d < dim; ++d) table.features(static_cast<Eigen::Index>(i), d) = rows[i][static_cast<std::size_t>(d)];
        table.labels(static_cast<Eigen::Index>(i)) = labels[i];
    }
    validate_dataset(table);
    return table;
}

void save_csv_dataset(const DatasetTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw data_error("cannot write dataset file: " + path);
    }
    char buf[64];
    for (int i = 0; i < table.size(); ++i) {
        for (int d = 0; d < table.dim(); ++d) {
            std::snprintf(buf, sizeof(buf), "%.17g", table.features(i, d));
            out << buf << ',';
        }
        out << table.labels(i) << '\n';
    }
}

Vector blob_mean(int cls, int class_count, int dim, double radius) {
    Vector mean = Vector::Zero(dim);
    if (dim == 1) {
        mean(0) = radius * cls;
        return mean;
    }
    const double angle = 2.0 * M_PI * cls / class_count;
    mean(0) = radius * std::cos(angle);
    mean(1) = radius * std::sin(angle);
    return mean;
}

namespace {

DatasetTable blobs_at(const std::vector<Vector>& means, const std::vector<int>& labels_per_blob,
                      int per_blob, int dim, double spread, int class_count, RngStream& rng,
                      const std::string& name) {
    const int blobs = static_cast<int>(means.size());
    const int n = blobs * per_blob;
    DatasetTable table;
    table.name = name;
    table.class_count = class_count;
    table.features.resize(n, dim);
    table.labels.resize(n);
    int row = 0;
    for (int b = 0; b < blobs; ++b) {
        for (int s = 0; s < per_blob; ++s, ++row) {
            for (int d = 0; d < dim; ++d) {
                table.features(row, d) = means[static_cast<std::size_t>(b)](d) + spread * rng.normal();
            }
            table.labels(row) = labels_per_blob[static_cast<std::size_t>(b)];
        }
    }
    return table;
}

} // namespace

DatasetTable generate_gaussian_blobs(int class_count, int per_class, int dim,
                                     double spread, RngStream& rng,
                                     const std::string& name) {
    if (class_count < 2 || per_class < 1 || dim < 1 || spread <= 0.0) {
        throw data_error("generate_gaussian_blobs: need class_count >= 2, per_class >= 1, "
                         "dim >= 1, spread > 0");
    }
    std::vector<Vector> means;
    std::vector<int> labels;
    means.reserve(static_cast<std::size_t>(class_count));
    for (int c = 0; c < class_count; ++c) {
        means.push_back(blob_mean(c, class_count, dim));
        labels.push_back(c);
    }
    DatasetTable table = blobs_at(means, labels, per_class, dim, spread, class_count, rng, name);
    validate_dataset(table);
    return table;
}

DatasetTable generate_ood_blobs(int blob_count, int per_blob, int dim,
                                double spread, RngStream& rng) {
    if (blob_count < 1 || per_blob < 1 || dim < 1 || spread <= 0.0) {
        throw data_error("generate_ood_blobs: need blob_count >= 1, per_blob >= 1, "
                         "dim >= 1, spread > 0");
    }
    std::vector<Vector> means;
    std::vector<int> labels;
    for (int b = 0; b < blob_count; ++b) {
        Vector mean = Vector::Zero(dim);
        if (dim == 1) {
            mean(0) = -12.0 * (b + 1);
        } else {
            // Half-step rotation keeps OOD means clear of the ID ring.
            const double angle = 2.0 * M_PI * (b + 0.5) / blob_count;
            mean(0) = 12.0 * std::cos(angle);
            mean(1) = 12.0 * std::sin(angle);
        }
        means.push_back(mean);
        labels.push_back(kOodLabel);
    }
    // class_count is nominal; every label is the sentinel.
    return blobs_at(means, labels, per_blob, dim, spread, 2, rng, "ood_blobs");
}

} // namespace als
