#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crossum/ids.hpp"
#include "crossum/store.hpp"

namespace crossum {

/// N x N row-major grid over a fixed dataset order: row = train dataset,
/// column = test dataset.
class CrossMatrix {
 public:
  /// Throws unless N >= 2, the order has no duplicates, values holds N*N
  /// finite numbers.
  CrossMatrix(std::vector<DatasetId> order, std::vector<double> values);

  std::size_t size() const noexcept { return order_.size(); }
  const std::vector<DatasetId>& order() const noexcept { return order_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double at(std::size_t train, std::size_t test) const { return values_[train * size() + test]; }

  std::vector<double> row_averages() const;
  std::vector<double> column_averages() const;

 private:
  std::vector<DatasetId> order_;
  std::vector<double> values_;
};

/// U[i][j] = aggregate of (system, train = order[i], test = order[j]).
/// A missing cell throws "missing <train>→<test>".
CrossMatrix build_matrix(const ScoreStore& store, const SystemId& system, const MetricId& metric,
                         const std::string& fingerprint, const std::vector<DatasetId>& order);

/// Column-diagonal normalization: U[i][j] / U[j][j] * 100. The diagonal is
/// exactly 100. A zero diagonal throws naming the dataset.
CrossMatrix normalize(const CrossMatrix& u);

/// Mean of all N^2 cells.
double stiffness(const CrossMatrix& u);

/// Mean of the normalized cells, in percent. Not capped at 100.
double stableness(const CrossMatrix& u);

/// Mean of the diagonal (in-dataset) cells.
double in_dataset_mean(const CrossMatrix& u);

/// Cellwise a - b (or normalize(a) - normalize(b)); orders must match.
CrossMatrix diff(const CrossMatrix& a, const CrossMatrix& b, bool normalized);

/// Descending by value; ties by system name ascending.
std::vector<std::pair<std::string, double>> rank_systems(const std::map<std::string, double>& values);

}  // namespace crossum
