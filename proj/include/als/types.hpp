#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace als {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using IntVector = Eigen::VectorXi;

using MatrixRef = Eigen::Ref<Matrix>;
using ConstMatrixRef = Eigen::Ref<const Matrix>;
using ConstVectorRef = Eigen::Ref<const Vector>;

// Sample indices into a DatasetTable. Index sets are kept sorted ascending;
// all pool iteration follows ascending index order so ties resolve to the
// lowest index.
using IndexSet = std::vector<int>;

// Stack of per-pass probability matrices (one T-slice per MC dropout pass).
using ProbStack = std::vector<Matrix>;

} // namespace als
