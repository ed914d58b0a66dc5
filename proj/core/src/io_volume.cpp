#include "slicereg/io_volume.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "slicereg/errors.hpp"

namespace slicereg {

namespace {

struct Header {
  Dims3 dims;
  double spacing = 1.0;
  std::string element_type;
  std::filesystem::path data_path;
};

void write_header(const std::filesystem::path& header_path, const Dims3& dims, double spacing,
                  const std::string& element_type, const std::string& data_file) {
  std::ofstream out(header_path);
  if (!out) throw DataError("cannot write volume header: " + header_path.string());
  out << "ObjectType = Image\n"
      << "NDims = 3\n"
      << "DimSize = " << dims.nx << " " << dims.ny << " " << dims.nz << "\n"
      << "ElementSpacing = " << spacing << " " << spacing << " " << spacing << "\n"
      << "ElementType = " << element_type << "\n"
      << "ElementDataFile = " << data_file << "\n";
}

Header read_header(const std::filesystem::path& header_path) {
  std::ifstream in(header_path);
  if (!in) throw DataError("cannot open volume header: " + header_path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto require = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw DataError("volume header " + header_path.string() + " missing key: " + key);
    return it->second;
  };

  Header h;
  std::istringstream dims(require("DimSize"));
  if (!(dims >> h.dims.nx >> h.dims.ny >> h.dims.nz) || h.dims.nx <= 0 || h.dims.ny <= 0 ||
      h.dims.nz <= 0)
    throw DataError("invalid DimSize in " + header_path.string());
  std::istringstream sp(require("ElementSpacing"));
  if (!(sp >> h.spacing) || !(h.spacing > 0.0))
    throw DataError("invalid ElementSpacing in " + header_path.string());
  h.element_type = require("ElementType");
  h.data_path = header_path.parent_path() / require("ElementDataFile");
  return h;
}

void read_raw(const std::filesystem::path& path, char* dest, std::size_t bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open raw volume payload: " + path.string());
  in.read(dest, static_cast<std::streamsize>(bytes));
  if (in.gcount() != static_cast<std::streamsize>(bytes))
    throw DataError("raw payload size mismatch in " + path.string());
  char extra;
  if (in.read(&extra, 1))
    throw DataError("raw payload larger than DimSize implies: " + path.string());
}

void write_raw(const std::filesystem::path& path, const char* src, std::size_t bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write raw volume payload: " + path.string());
  out.write(src, static_cast<std::streamsize>(bytes));
}

std::string raw_name(const std::filesystem::path& header_path) {
  return header_path.stem().string() + ".raw";
}

}  // namespace

void write_volume(const std::filesystem::path& header_path, const ScalarVolume& vol) {
  const std::string data_file = raw_name(header_path);
  write_header(header_path, vol.dims, vol.voxel_size, "MET_FLOAT", data_file);
  write_raw(header_path.parent_path() / data_file,
            reinterpret_cast<const char*>(vol.data.data()), vol.data.size() * sizeof(float));
}

void write_volume(const std::filesystem::path& header_path, const BinaryVolume& mask) {
  const std::string data_file = raw_name(header_path);
  write_header(header_path, mask.dims, mask.voxel_size, "MET_UCHAR", data_file);
  write_raw(header_path.parent_path() / data_file,
            reinterpret_cast<const char*>(mask.data.data()), mask.data.size());
}

ScalarVolume read_scalar_volume(const std::filesystem::path& header_path) {
  const Header h = read_header(header_path);
  if (h.element_type != "MET_FLOAT")
    throw DataError("expected MET_FLOAT volume in " + header_path.string() + ", found " +
                    h.element_type);
  ScalarVolume vol(h.dims, h.spacing);
  read_raw(h.data_path, reinterpret_cast<char*>(vol.data.data()),
           vol.data.size() * sizeof(float));
  return vol;
}

BinaryVolume read_binary_volume(const std::filesystem::path& header_path) {
  const Header h = read_header(header_path);
  if (h.element_type != "MET_UCHAR")
    throw DataError("expected MET_UCHAR mask in " + header_path.string() + ", found " +
                    h.element_type);
  BinaryVolume mask(h.dims, h.spacing);
  read_raw(h.data_path, reinterpret_cast<char*>(mask.data.data()), mask.data.size());
  mask.validate();
  return mask;
}

}  // namespace slicereg
