#pragma once

#include <cstddef>
#include <string>

#include "crossum/bias.hpp"
#include "crossum/ids.hpp"
#include "crossum/rouge.hpp"

namespace crossum {

/// Metric-affecting settings shared by every command.
struct RunConfig {
  bool stemming = true;  // ROUGE only; bias metrics never stem
  RougeLMode rouge_l = RougeLMode::Auto;
  int novelty_n = 2;
  int repetition_n = 3;
  double fusion_delta = 0.02;
  std::size_t fusion_max_support = 3;
  std::size_t max_doc_tokens = 0;
  double alpha = 0.05;

  RougeConfig rouge() const { return {stemming, rouge_l}; }
  BiasConfig bias() const;
};

std::string_view rouge_l_mode_name(RougeLMode mode);
RougeLMode parse_rouge_l_mode(std::string_view name);

/// Canonical "key=value;..." text of the settings that affect `metric`.
std::string canonical_config(const MetricId& metric, const RunConfig& config);

/// 64-bit FNV-1a of canonical_config, as 16 hex digits.
std::string fingerprint(const MetricId& metric, const RunConfig& config);

/// Shortest text that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace crossum
