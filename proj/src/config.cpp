#include "crossum/config.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>

#include "crossum/error.hpp"

namespace crossum {

MetricId::MetricId(MetricKind kind, int n) : kind_(kind), n_(n) {
  const bool ordered = kind == MetricKind::Novelty || kind == MetricKind::Repetition;
  if (ordered && (n < 1 || n > kMaxNgramOrder)) throw Error("metric n-gram order must be in 1..4");
  if (!ordered) n_ = 0;
}

MetricId MetricId::parse(std::string_view name) {
  if (name == "rouge1") return MetricId(MetricKind::Rouge1);
  if (name == "rouge2") return MetricId(MetricKind::Rouge2);
  if (name == "rougeL") return MetricId(MetricKind::RougeL);
  if (name == "coverage") return MetricId(MetricKind::Coverage);
  if (name == "copy_length") return MetricId(MetricKind::CopyLength);
  if (name == "fusion") return MetricId(MetricKind::Fusion);
  if (name == "factuality") return MetricId(MetricKind::Factuality);
  for (auto [prefix, kind] : {std::pair{std::string_view("novelty_"), MetricKind::Novelty},
                              std::pair{std::string_view("repetition_"), MetricKind::Repetition}}) {
    if (name.size() == prefix.size() + 1 && name.substr(0, prefix.size()) == prefix) {
      const char c = name.back();
      if (c >= '1' && c <= '4') return MetricId(kind, c - '0');
    }
  }
  throw Error("unknown metric '" + std::string(name) + "'");
}

std::string MetricId::name() const {
  switch (kind_) {
    case MetricKind::Rouge1: return "rouge1";
    case MetricKind::Rouge2: return "rouge2";
    case MetricKind::RougeL: return "rougeL";
    case MetricKind::Coverage: return "coverage";
    case MetricKind::CopyLength: return "copy_length";
    case MetricKind::Novelty: return "novelty_" + std::to_string(n_);
    case MetricKind::Repetition: return "repetition_" + std::to_string(n_);
    case MetricKind::Fusion: return "fusion";
    case MetricKind::Factuality: return "factuality";
  }
  return "?";
}

bool MetricId::uses_document() const noexcept {
  switch (kind_) {
    case MetricKind::Coverage:
    case MetricKind::CopyLength:
    case MetricKind::Novelty:
    case MetricKind::Fusion:
      return true;
    default:
      return false;
  }
}

BiasConfig RunConfig::bias() const {
  return BiasConfig{FusionParams{fusion_max_support, fusion_delta}, novelty_n, repetition_n, max_doc_tokens};
}

std::string_view rouge_l_mode_name(RougeLMode mode) {
  switch (mode) {
    case RougeLMode::Flat: return "flat";
    case RougeLMode::Union: return "union";
    case RougeLMode::Auto: break;
  }
  return "auto";
}

RougeLMode parse_rouge_l_mode(std::string_view name) {
  for (RougeLMode m : {RougeLMode::Auto, RougeLMode::Flat, RougeLMode::Union})
    if (rouge_l_mode_name(m) == name) return m;
  throw Error("unknown rouge-l mode '" + std::string(name) + "'");
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string canonical_config(const MetricId& metric, const RunConfig& c) {
  std::string s = "metric=" + metric.name();
  switch (metric.kind()) {
    case MetricKind::Rouge1:
    case MetricKind::Rouge2:
      s += ";stemming=" + std::string(c.stemming ? "on" : "off");
      break;
    case MetricKind::RougeL:
      s += ";stemming=" + std::string(c.stemming ? "on" : "off");
      s += ";rouge_l=" + std::string(rouge_l_mode_name(c.rouge_l));
      break;
    case MetricKind::Fusion:
      s += ";fusion_delta=" + format_double(c.fusion_delta);
      s += ";fusion_max_support=" + std::to_string(c.fusion_max_support);
      s += ";max_doc_tokens=" + std::to_string(c.max_doc_tokens);
      break;
    case MetricKind::Coverage:
    case MetricKind::CopyLength:
    case MetricKind::Novelty:
      s += ";max_doc_tokens=" + std::to_string(c.max_doc_tokens);
      break;
    case MetricKind::Repetition:
    case MetricKind::Factuality:
      break;
  }
  return s;
}

std::string fingerprint(const MetricId& metric, const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_config(metric, config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace crossum
