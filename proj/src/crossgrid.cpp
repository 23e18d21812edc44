#include "crossum/crossgrid.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "crossum/error.hpp"

namespace crossum {

CrossMatrix::CrossMatrix(std::vector<DatasetId> order, std::vector<double> values)
    : order_(std::move(order)), values_(std::move(values)) {
  const std::size_t n = order_.size();
  if (n < 2) throw Error("cross-dataset matrix needs at least 2 datasets");
  if (std::set<DatasetId>(order_.begin(), order_.end()).size() != n)
    throw Error("dataset order contains duplicates");
  if (values_.size() != n * n) throw Error("matrix must hold N*N values");
  for (double v : values_)
    if (!std::isfinite(v)) throw Error("matrix values must be finite");
}

std::vector<double> CrossMatrix::row_averages() const {
  const std::size_t n = size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += at(i, j);
    out[i] /= static_cast<double>(n);
  }
  return out;
}

std::vector<double> CrossMatrix::column_averages() const {
  const std::size_t n = size();
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) out[j] += at(i, j);
    out[j] /= static_cast<double>(n);
  }
  return out;
}

CrossMatrix build_matrix(const ScoreStore& store, const SystemId& system, const MetricId& metric,
                         const std::string& fingerprint, const std::vector<DatasetId>& order) {
  const Aggregation agg = aggregation_for(metric);
  std::vector<double> values;
  values.reserve(order.size() * order.size());
  for (const auto& train : order) {
    for (const auto& test : order) {
      auto cell = store.get_cell(CellKey{OutputKey{system, train, test}, metric, fingerprint});
      if (!cell)
        throw Error("missing " + train.str() + "→" + test.str() + " for " + system.str() + " " + metric.name());
      values.push_back(cell->value(agg));
    }
  }
  return CrossMatrix(order, std::move(values));
}

CrossMatrix normalize(const CrossMatrix& u) {
  const std::size_t n = u.size();
  for (std::size_t j = 0; j < n; ++j)
    if (u.at(j, j) == 0.0) throw Error("zero in-dataset value for " + u.order()[j].str());
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = u.at(i, j) / u.at(j, j) * 100.0;
  return CrossMatrix(u.order(), std::move(out));
}

double stiffness(const CrossMatrix& u) {
  double sum = 0.0;
  for (double v : u.values()) sum += v;
  return sum / static_cast<double>(u.values().size());
}

double stableness(const CrossMatrix& u) { return stiffness(normalize(u)); }

double in_dataset_mean(const CrossMatrix& u) {
  double sum = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) sum += u.at(j, j);
  return sum / static_cast<double>(u.size());
}

CrossMatrix diff(const CrossMatrix& a, const CrossMatrix& b, bool normalized) {
  if (a.order() != b.order()) throw Error("cannot compare matrices with different dataset orders");
  const CrossMatrix& lhs = normalized ? normalize(a) : a;
  const CrossMatrix& rhs = normalized ? normalize(b) : b;
  std::vector<double> out(lhs.values().size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = lhs.values()[k] - rhs.values()[k];
  return CrossMatrix(a.order(), std::move(out));
}

std::vector<std::pair<std::string, double>> rank_systems(const std::map<std::string, double>& values) {
  std::vector<std::pair<std::string, double>> out(values.begin(), values.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
  return out;
}

}  // namespace crossum
