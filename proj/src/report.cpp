#include "crossum/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "crossum/config.hpp"
#include "crossum/error.hpp"
#include "json.hpp"

namespace crossum {

namespace {

using ojson = nlohmann::ordered_json;

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    cells.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  for (auto& c : cells) {
    while (!c.empty() && (c.back() == '\r' || c.back() == ' ')) c.pop_back();
    while (!c.empty() && c.front() == ' ') c.erase(c.begin());
  }
  return cells;
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

double parse_double(const std::string& s, std::string_view source) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw Error(std::string(source) + ": bad number '" + s + "'");
  return v;
}

std::string hex_color(int r, int g, int b) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string round_half_up(double v, int decimals) {
  if (!std::isfinite(v)) throw Error("cannot format a non-finite value");
  if (decimals < 0) throw Error("decimals must be >= 0");
  // glibc prints the exact binary expansion, so only the digit after the
  // last kept one decides the rounding.
  std::vector<char> buf(1200);
  const int len = std::snprintf(buf.data(), buf.size(), "%.1100f", std::fabs(v));
  std::string digits(buf.data(), static_cast<std::size_t>(len));
  const auto dot = digits.find('.');
  std::string integral = digits.substr(0, dot);
  std::string fraction = digits.substr(dot + 1);
  const bool round_up = fraction[static_cast<std::size_t>(decimals)] >= '5';
  std::string kept = integral + fraction.substr(0, static_cast<std::size_t>(decimals));
  if (round_up) {
    std::size_t i = kept.size();
    while (i > 0) {
      --i;
      if (kept[i] == '9') {
        kept[i] = '0';
      } else {
        ++kept[i];
        break;
      }
      if (i == 0) kept.insert(kept.begin(), '1');
    }
  }
  const std::size_t int_len = kept.size() - static_cast<std::size_t>(decimals);
  std::string out = kept.substr(0, int_len);
  if (decimals > 0) out += "." + kept.substr(int_len);
  const bool zero = std::all_of(kept.begin(), kept.end(), [](char c) { return c == '0'; });
  if (v < 0 && !zero) out.insert(out.begin(), '-');
  return out;
}

std::string format_number(double v, int decimals) {
  if (!std::isfinite(v)) throw Error("cannot format a non-finite value");
  return decimals < 0 ? format_double(v) : round_half_up(v, decimals);
}

std::string sanitize_filename(std::string_view name) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                    c == '_' || c == '-';
    out.push_back(ok ? c : '_');
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  if (!out) throw Error("cannot write " + path.string());
}

std::string matrix_csv(const CrossMatrix& m, int decimals) {
  const std::size_t n = m.size();
  const auto rows = m.row_averages();
  const auto cols = m.column_averages();
  std::string out = "train\\test";
  for (const auto& d : m.order()) out += "," + d.str();
  out += ",avg\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += m.order()[i].str();
    for (std::size_t j = 0; j < n; ++j) out += "," + format_number(m.at(i, j), decimals);
    out += "," + format_number(rows[i], decimals) + "\n";
  }
  out += "avg";
  for (double c : cols) out += "," + format_number(c, decimals);
  out += "," + format_number(stiffness(m), decimals) + "\n";
  return out;
}

CrossMatrix parse_matrix_csv(std::string_view text, std::string_view source) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw Error(std::string(source) + ": empty matrix file");
  auto header = split_csv_line(lines[0]);
  if (header.size() < 3) throw Error(std::string(source) + ": header needs at least two datasets");
  header.erase(header.begin());
  const bool has_avg_col = header.back() == "avg";
  if (has_avg_col) header.pop_back();

  std::vector<DatasetId> order;
  for (const auto& h : header) order.emplace_back(h);
  std::vector<DatasetId> row_order;
  std::vector<double> values;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    auto cells = split_csv_line(lines[l]);
    if (cells.at(0) == "avg") break;
    const std::size_t expected = order.size() + 1 + (has_avg_col ? 1 : 0);
    if (cells.size() != expected)
      throw Error(std::string(source) + ":" + std::to_string(l + 1) + ": expected " + std::to_string(expected) +
                  " cells");
    row_order.emplace_back(cells[0]);
    for (std::size_t j = 1; j <= order.size(); ++j) values.push_back(parse_double(cells[j], source));
  }
  if (row_order != order)
    throw Error(std::string(source) + ": row datasets must match the header order");
  return CrossMatrix(std::move(order), std::move(values));
}

CrossMatrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix_csv(ss.str(), path.string());
}

std::string matrix_json(const CrossMatrix& m, const MatrixMeta& meta) {
  ojson j;
  j["system"] = meta.system;
  j["metric"] = meta.metric;
  j["aggregation"] = meta.aggregation;
  j["fingerprint"] = meta.fingerprint;
  j["normalized"] = meta.normalized;
  j["rows"] = "train_dataset";
  j["columns"] = "test_dataset";
  ojson order = ojson::array();
  for (const auto& d : m.order()) order.push_back(d.str());
  j["datasets"] = order;
  ojson values = ojson::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    ojson row = ojson::array();
    for (std::size_t jx = 0; jx < m.size(); ++jx) row.push_back(m.at(i, jx));
    values.push_back(row);
  }
  j["values"] = values;
  j["row_avg"] = m.row_averages();
  j["col_avg"] = m.column_averages();
  j["overall_avg"] = stiffness(m);
  return j.dump(1) + "\n";
}

Holistic holistic(const CrossMatrix& m) { return {stiffness(m), stableness(m), in_dataset_mean(m)}; }

std::string holistic_csv(const std::string& system, const std::string& metric, const Holistic& h, int decimals) {
  return "system,metric,stiffness,stableness,in_dataset_mean\n" + system + "," + metric + "," +
         format_number(h.stiffness, decimals) + "," + format_number(h.stableness, decimals) + "," +
         format_number(h.in_dataset, decimals) + "\n";
}

std::string heatmap_svg(const CrossMatrix& grid, const std::string& title, int decimals) {
  constexpr int kCellW = 72, kCellH = 40, kLeft = 110, kTop = 70;
  const int n = static_cast<int>(grid.size());
  double max_abs = 0.0;
  for (double v : grid.values()) {
    if (!std::isfinite(v)) throw Error("heatmap values must be finite");
    max_abs = std::max(max_abs, std::fabs(v));
  }

  std::ostringstream os;
  const int width = kLeft + n * kCellW + 20, height = kTop + n * kCellH + 20;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<text x=\"" << kLeft << "\" y=\"20\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
  os << "<text x=\"4\" y=\"" << kTop - 8 << "\" font-size=\"10\">train \\ test</text>\n";
  for (int j = 0; j < n; ++j)
    os << "<text class=\"label col\" x=\"" << kLeft + j * kCellW + kCellW / 2 << "\" y=\"" << kTop - 8
       << "\" text-anchor=\"middle\">" << xml_escape(grid.order()[static_cast<std::size_t>(j)].str()) << "</text>\n";
  for (int i = 0; i < n; ++i) {
    os << "<text class=\"label row\" x=\"" << kLeft - 6 << "\" y=\"" << kTop + i * kCellH + kCellH / 2 + 4
       << "\" text-anchor=\"end\">" << xml_escape(grid.order()[static_cast<std::size_t>(i)].str()) << "</text>\n";
    for (int j = 0; j < n; ++j) {
      const double v = grid.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      const double t = max_abs > 0 ? std::fabs(v) / max_abs : 0.0;
      std::string fill = "#ffffff";
      if (v > 0) {
        const int c = static_cast<int>(std::lround(255 - t * (255 - 128)));
        fill = hex_color(c, c, c);
      } else if (v < 0) {
        fill = hex_color(static_cast<int>(std::lround(255 - t * (255 - 214))),
                         static_cast<int>(std::lround(255 - t * (255 - 39))),
                         static_cast<int>(std::lround(255 - t * (255 - 40))));
      }
      const int x = kLeft + j * kCellW, y = kTop + i * kCellH;
      os << "<rect class=\"cell\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCellW << "\" height=\""
         << kCellH << "\" fill=\"" << fill << "\" stroke=\"#999999\"/>\n";
      os << "<text class=\"value\" x=\"" << x + kCellW / 2 << "\" y=\"" << y + kCellH / 2 + 4
         << "\" text-anchor=\"middle\">" << round_half_up(v, decimals) << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string ranking_csv(const std::vector<std::pair<std::string, double>>& ranking, int decimals) {
  std::string out = "rank,system,value\n";
  for (std::size_t i = 0; i < ranking.size(); ++i)
    out += std::to_string(i + 1) + "," + ranking[i].first + "," + format_number(ranking[i].second, decimals) + "\n";
  return out;
}

std::string profiles_csv(std::span<const BiasProfile> profiles) {
  std::string out = "dataset,coverage,copy_length,novelty,fusion,repetition\n";
  for (const auto& p : profiles) {
    out += p.dataset.str() + "," + format_double(p.coverage.mean) + "," + format_double(p.copy_length.mean) + "," +
           format_double(p.selected_novelty().mean) + "," + format_double(p.fusion.mean) + "," +
           format_double(p.selected_repetition().mean) + "\n";
  }
  return out;
}

std::string profiles_json(std::span<const BiasProfile> profiles) {
  auto field = [](const MeanField& f) {
    ojson j;
    j["mean"] = f.mean;
    j["count"] = f.count;
    return j;
  };
  ojson root = ojson::object();
  for (const auto& p : profiles) {
    ojson j;
    j["coverage"] = field(p.coverage);
    j["copy_length"] = field(p.copy_length);
    j["novelty"] = field(p.selected_novelty());
    j["fusion"] = field(p.fusion);
    j["repetition"] = field(p.selected_repetition());
    j["novelty_n"] = p.novelty_n;
    j["repetition_n"] = p.repetition_n;
    ojson nov = ojson::object(), rep = ojson::object();
    for (int n = 1; n <= kMaxNgramOrder; ++n) {
      nov[std::to_string(n)] = field(p.novelty[static_cast<std::size_t>(n - 1)]);
      rep[std::to_string(n)] = field(p.repetition[static_cast<std::size_t>(n - 1)]);
    }
    j["novelty_by_n"] = nov;
    j["repetition_by_n"] = rep;
    root[p.dataset.str()] = j;
  }
  return root.dump(1) + "\n";
}

std::map<std::string, std::array<double, 5>> parse_profiles_csv(std::string_view text) {
  std::map<std::string, std::array<double, 5>> out;
  const auto lines = lines_of(text);
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto cells = split_csv_line(lines[l]);
    if (cells.size() != 6) throw Error("profiles.csv: expected 6 cells per row");
    std::array<double, 5> row{};
    for (std::size_t k = 0; k < 5; ++k) row[k] = parse_double(cells[k + 1], "profiles.csv");
    out[cells[0]] = row;
  }
  return out;
}

std::string merge_significance(std::string_view existing, std::span<const SignificanceRow> rows) {
  static const std::string kHeader = "system_a,system_b,metric,measure,n_effective,W,p,method,verdict";
  std::map<std::tuple<std::string, std::string, std::string, std::string>, std::string> merged;
  const auto lines = lines_of(existing);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (l == 0 && lines[l] == kHeader) continue;
    const auto c = split_csv_line(lines[l]);
    if (c.size() < 4) throw Error("significance.csv: malformed row");
    merged[{c[0], c[1], c[2], c[3]}] = lines[l];
  }
  for (const auto& r : rows) {
    const auto& t = r.result;
    merged[{r.system_a, r.system_b, r.metric, r.measure}] =
        r.system_a + "," + r.system_b + "," + r.metric + "," + r.measure + "," + std::to_string(t.n_effective) + "," +
        format_double(t.statistic) + "," + format_double(t.p_two_sided) + "," + std::string(method_name(t.method)) +
        "," + (t.significant ? "significant" : "not significant");
  }
  std::string out = kHeader + "\n";
  for (const auto& [k, line] : merged) out += line + "\n";
  return out;
}

}  // namespace crossum
