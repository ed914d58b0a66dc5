#include "slicereg/io_json.hpp"

#include <fstream>

#include <json.hpp>

#include "slicereg/errors.hpp"

namespace slicereg {

namespace {

using nlohmann::json;

json theta_to_json(const ThetaDocument& doc) {
  json j;
  j["format"] = "slicereg-theta";
  j["version"] = 1;
  j["conventions"] = {{"euler_order", "ZYX"},
                      {"photo_origin", "image_center"},
                      {"ct_origin", "volume_center"},
                      {"units", "ct_voxels"}};
  j["rotation_x"] = doc.params.rotation_x;
  j["rotation_y"] = doc.params.rotation_y;
  j["rotation_z"] = doc.params.rotation_z;
  j["scaling"] = doc.params.scaling;
  j["spacing"] = doc.params.spacing;
  j["offset_z"] = doc.params.offset_z;
  json offsets = json::array();
  for (const auto& o : doc.params.per_slice_offsets) offsets.push_back({o[0], o[1]});
  j["per_slice_offsets"] = std::move(offsets);
  j["slice_indices"] = doc.slice_indices;
  j["photo_width"] = doc.photo_width;
  j["photo_height"] = doc.photo_height;
  return j;
}

ThetaDocument theta_from_json(const json& j, const std::string& context) {
  for (const char* key : {"rotation_x", "rotation_y", "rotation_z", "scaling", "spacing",
                          "offset_z", "per_slice_offsets"})
    if (!j.contains(key)) throw DataError(context + ": missing key: " + key);
  ThetaDocument doc;
  doc.params.rotation_x = j.at("rotation_x").get<double>();
  doc.params.rotation_y = j.at("rotation_y").get<double>();
  doc.params.rotation_z = j.at("rotation_z").get<double>();
  doc.params.scaling = j.at("scaling").get<double>();
  doc.params.spacing = j.at("spacing").get<double>();
  doc.params.offset_z = j.at("offset_z").get<double>();
  for (const auto& o : j.at("per_slice_offsets"))
    doc.params.per_slice_offsets.push_back({o.at(0).get<double>(), o.at(1).get<double>()});
  if (j.contains("slice_indices")) doc.slice_indices = j.at("slice_indices").get<std::vector<int>>();
  if (j.contains("photo_width")) doc.photo_width = j.at("photo_width").get<int>();
  if (j.contains("photo_height")) doc.photo_height = j.at("photo_height").get<int>();
  return doc;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open JSON file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw DataError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

void save_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write JSON file: " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace

void write_theta(const std::filesystem::path& path, const ThetaDocument& doc) {
  save_json(path, theta_to_json(doc));
}

ThetaDocument read_theta(const std::filesystem::path& path) {
  return theta_from_json(load_json(path), path.string());
}

void write_theta_list(const std::filesystem::path& path, const std::vector<ThetaDocument>& docs) {
  json j;
  j["format"] = "slicereg-theta-list";
  j["version"] = 1;
  json items = json::array();
  for (const auto& d : docs) items.push_back(theta_to_json(d));
  j["items"] = std::move(items);
  save_json(path, j);
}

std::vector<ThetaDocument> read_theta_list(const std::filesystem::path& path) {
  const json j = load_json(path);
  if (!j.contains("items")) throw DataError(path.string() + ": missing key: items");
  std::vector<ThetaDocument> docs;
  for (const auto& item : j.at("items")) docs.push_back(theta_from_json(item, path.string()));
  return docs;
}

}  // namespace slicereg
