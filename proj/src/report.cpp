#include "perc/report.hpp"

#include <chrono>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace perc {

bool Report::passed() const {
  for (const auto& t : thresholds)
    if (!t.pass && !t.advisory) return false;
  return true;
}

nlohmann::ordered_json Report::body_json() const {
  nlohmann::ordered_json b;
  b["experiment"] = experiment;
  b["config"] = config;
  b["generator"] = kGeneratorName;
  b["results"] = body;
  nlohmann::ordered_json th = nlohmann::ordered_json::array();
  for (const auto& t : thresholds)
    th.push_back({{"name", t.name}, {"rule", t.rule}, {"value", t.value}, {"pass", t.pass}, {"advisory", t.advisory}});
  b["thresholds"] = th;
  b["pass"] = passed();
  return b;
}

nlohmann::ordered_json Report::to_json(const std::string& timestamp, const nlohmann::ordered_json& run_config) const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["header"] = {{"timestamp", timestamp}, {"generator", kGeneratorName}, {"config", run_config}};
  j["body"] = body_json();
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

CsvTable& CsvTable::add(const std::string& v) {
  if (rows_.empty()) throw std::logic_error("add before row");
  if (v.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    rows_.back().push_back(q + "\"");
  } else {
    rows_.back().push_back(v);
  }
  return *this;
}

CsvTable& CsvTable::add(double v) { return add(format_double(v)); }
CsvTable& CsvTable::add(std::int64_t v) { return add(std::to_string(v)); }
CsvTable& CsvTable::add(std::uint64_t v) { return add(std::to_string(v)); }

std::string CsvTable::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& r : rows_) {
    if (r.size() != columns_.size()) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }
  return out.str();
}

std::string field_svg(const TriangularDomain& d, const std::vector<double>& values, const std::string& title,
                      bool include_rim) {
  const int nf = include_rim ? d.total_face_count() : d.face_count();
  double minx = std::numeric_limits<double>::max(), miny = minx, maxx = -minx, maxy = -minx;
  for (int f = 0; f < nf; ++f)
    for (int v : d.face(f).v) {
      const Point p = d.plane(v);
      minx = std::min(minx, p.x);
      maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y);
      maxy = std::max(maxy, p.y);
    }
  const double width = 800, scale = width / std::max(maxx - minx, 1e-12);
  const double height = (maxy - miny) * scale;
  auto px = [&](Point p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f,%.2f", (p.x - minx) * scale + 10, (maxy - p.y) * scale + 30);
    return std::string(buf);
  };
  std::ostringstream s;
  char head[256];
  std::snprintf(head, sizeof head,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%.0f\" height=\"%.0f\">\n",
                width + 20, height + 40);
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n" << head;
  std::string esc;
  for (char c : title) esc += c == '<' ? "&lt;" : c == '&' ? "&amp;" : std::string(1, c);
  s << "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << esc << "</text>\n";
  for (int f = 0; f < nf; ++f) {
    const double v = values.at(f);
    if (std::isnan(v)) continue;
    const double t = std::clamp(v, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(33 + t * (253 - 33)));
    const int g = static_cast<int>(std::lround(49 + t * (231 - 49)));
    const int b = static_cast<int>(std::lround(140 + t * (37 - 140)));
    const Face& fc = d.face(f);
    s << "<polygon points=\"" << px(d.plane(fc.v[0])) << ' ' << px(d.plane(fc.v[1])) << ' ' << px(d.plane(fc.v[2]))
      << "\" fill=\"rgb(" << r << ',' << g << ',' << b << ")\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace perc
