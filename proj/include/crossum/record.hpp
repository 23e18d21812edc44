#pragma once

#include <string>

#include "crossum/corpus.hpp"
#include "crossum/ids.hpp"

namespace crossum {

/// One metric value for one sample under one (system, train, test) context.
/// `weight` is the pooling weight (sentence count for factuality, else 1).
struct ScoreRecord {
  std::string sample_id;
  OutputKey key;
  MetricId metric;
  double value = 0.0;
  double weight = 1.0;
  std::string fingerprint;
};

}  // namespace crossum
