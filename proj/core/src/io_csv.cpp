#include "slicereg/io_csv.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "slicereg/errors.hpp"

namespace slicereg {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write CSV file: " + path.string());
  out << std::setprecision(17);
  return out;
}

std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& path,
                                                const std::string& expected_header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open CSV file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV file: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected_header)
    throw DataError(path.string() + ": expected header '" + expected_header + "', found '" +
                    line + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

double parse_double(const std::string& s, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError(path.string() + ": malformed numeric field '" + s + "'");
  }
}

}  // namespace

void write_annotations(const std::filesystem::path& path, const AnnotationSet& annotations) {
  auto out = open_out(path);
  out << "slice,photo_u,photo_v,ct_u,ct_v\n";
  for (const auto& [photo, ct] : annotations.pairs)
    out << annotations.slice << "," << photo.x << "," << photo.y << "," << ct.x << "," << ct.y
        << "\n";
}

AnnotationSet read_annotations(const std::filesystem::path& path, double pixel_size_mm) {
  const auto rows = read_rows(path, "slice,photo_u,photo_v,ct_u,ct_v");
  AnnotationSet ann;
  ann.pixel_size_mm = pixel_size_mm;
  for (const auto& row : rows) {
    if (row.size() != 5) throw DataError(path.string() + ": annotation row needs 5 fields");
    ann.slice = static_cast<int>(parse_double(row[0], path));
    ann.pairs.emplace_back(Vec2{parse_double(row[1], path), parse_double(row[2], path)},
                           Vec2{parse_double(row[3], path), parse_double(row[4], path)});
  }
  ann.validate();
  return ann;
}

void write_landmarks(const std::filesystem::path& path, const std::vector<Landmark>& landmarks) {
  auto out = open_out(path);
  out << "slice,photo_u,photo_v,ct_x,ct_y,ct_z\n";
  for (const auto& lm : landmarks)
    out << lm.slice_index << "," << lm.photo.x << "," << lm.photo.y << "," << lm.ct.x << ","
        << lm.ct.y << "," << lm.ct.z << "\n";
}

std::vector<Landmark> read_landmarks(const std::filesystem::path& path) {
  const auto rows = read_rows(path, "slice,photo_u,photo_v,ct_x,ct_y,ct_z");
  std::vector<Landmark> landmarks;
  for (const auto& row : rows) {
    if (row.size() != 6) throw DataError(path.string() + ": landmark row needs 6 fields");
    Landmark lm;
    lm.slice_index = static_cast<int>(parse_double(row[0], path));
    lm.photo = {parse_double(row[1], path), parse_double(row[2], path)};
    lm.ct = {parse_double(row[3], path), parse_double(row[4], path), parse_double(row[5], path)};
    landmarks.push_back(lm);
  }
  return landmarks;
}

void write_trace_csv(const std::filesystem::path& path, const OptimTrace& trace) {
  auto out = open_out(path);
  out << "iteration,cost\n";
  for (std::size_t i = 0; i < trace.cost.size(); ++i)
    out << (i + 1) << "," << trace.cost[i] << "\n";
}

void write_intersection_csv(const std::filesystem::path& path, const IntersectionReport& report,
                            const std::vector<int>& slice_indices) {
  auto out = open_out(path);
  out << "slice,intersecting\n";
  for (std::size_t k = 0; k < report.intersecting.size(); ++k)
    out << slice_indices[k] << "," << (report.intersecting[k] ? 1 : 0) << "\n";
  out << "# classification: " << to_string(report.classification) << "\n";
  for (const auto& w : report.warnings) out << "# warning: " << w << "\n";
}

}  // namespace slicereg
