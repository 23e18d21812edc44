#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "crossum/error.hpp"

namespace crossum {

/// Nonempty, case-sensitive identifier. The tag keeps dataset and system
/// names from being mixed up.
template <class Tag>
class Name {
 public:
  explicit Name(std::string value) : value_(std::move(value)) {
    if (value_.empty()) throw Error(std::string(Tag::kind) + " name must be nonempty");
  }

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const Name&, const Name&) = default;
  friend bool operator==(const Name&, const Name&) = default;

 private:
  std::string value_;
};

struct DatasetTag {
  static constexpr const char* kind = "dataset";
};
struct SystemTag {
  static constexpr const char* kind = "system";
};

using DatasetId = Name<DatasetTag>;
using SystemId = Name<SystemTag>;

enum class MetricKind {
  Rouge1,
  Rouge2,
  RougeL,
  Coverage,
  CopyLength,
  Novelty,
  Repetition,
  Fusion,
  Factuality,
};

/// One of the closed set of metrics. Novelty and repetition carry n in 1..4.
class MetricId {
 public:
  explicit MetricId(MetricKind kind, int n = 0);

  /// Parses "rouge1", "rougeL", "novelty_2", "repetition_3", ...
  static MetricId parse(std::string_view name);

  MetricKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  std::string name() const;

  /// True for the metrics computed between a summary and its source document.
  bool uses_document() const noexcept;

  friend auto operator<=>(const MetricId&, const MetricId&) = default;
  friend bool operator==(const MetricId&, const MetricId&) = default;

 private:
  MetricKind kind_;
  int n_;
};

}  // namespace crossum
