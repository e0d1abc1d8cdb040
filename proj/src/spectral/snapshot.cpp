#include "qmhd/spectral/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "qmhd/errors.hpp"

namespace qmhd {

namespace {

constexpr char kMagic[8] = {'Q', 'M', 'H', 'D', 'S', 'N', 'A', 'P'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kNameWidth = 16;

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    std::memcpy(&v, bytes, sizeof(T));
  }
  return v;
}

template <class T>
void write_raw(std::ostream& os, T v) {
  v = to_little(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_raw(std::istream& is) {
  T v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw FormatError("snapshot: unexpected end of data");
  return to_little(v);
}

}  // namespace

namespace binary {

void write_u32(std::ostream& os, std::uint32_t v) { write_raw(os, v); }
void write_u64(std::ostream& os, std::uint64_t v) { write_raw(os, v); }
void write_f64(std::ostream& os, double v) { write_raw(os, std::bit_cast<std::uint64_t>(v)); }
std::uint32_t read_u32(std::istream& is) { return read_raw<std::uint32_t>(is); }
std::uint64_t read_u64(std::istream& is) { return read_raw<std::uint64_t>(is); }
double read_f64(std::istream& is) { return std::bit_cast<double>(read_raw<std::uint64_t>(is)); }

}  // namespace binary

const ScalarField& Snapshot::get(const std::string& name) const {
  for (const NamedField& f : fields)
    if (f.name == name) return f.field;
  throw FormatError("snapshot: no field named '" + name + "'");
}

void write_snapshot(std::ostream& os, const Snapshot& snap) {
  os.write(kMagic, sizeof(kMagic));
  binary::write_u32(os, kVersion);
  binary::write_u32(os, static_cast<std::uint32_t>(snap.grid.nx()));
  binary::write_u32(os, static_cast<std::uint32_t>(snap.grid.ny()));
  binary::write_u32(os, static_cast<std::uint32_t>(snap.fields.size()));
  binary::write_f64(os, snap.time);
  for (const NamedField& f : snap.fields) {
    if (f.name.size() > kNameWidth) throw FormatError("snapshot: field name too long: " + f.name);
    char name[kNameWidth] = {};
    std::memcpy(name, f.name.data(), f.name.size());
    os.write(name, kNameWidth);
  }
  for (const NamedField& f : snap.fields) {
    if (!(f.field.grid() == snap.grid)) throw FormatError("snapshot: field grid mismatch");
    for (double v : f.field.values()) binary::write_f64(os, v);
  }
  if (!os) throw FormatError("snapshot: write failed");
}

Snapshot read_snapshot(std::istream& is) {
  char magic[8];
  if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw FormatError("snapshot: bad magic");
  const std::uint32_t version = binary::read_u32(is);
  if (version != kVersion) throw FormatError("snapshot: unsupported version " + std::to_string(version));
  const int nx = static_cast<int>(binary::read_u32(is));
  const int ny = static_cast<int>(binary::read_u32(is));
  const std::uint32_t count = binary::read_u32(is);
  Snapshot snap;
  snap.time = binary::read_f64(is);
  snap.grid = Grid(nx, ny);
  std::vector<std::string> names;
  for (std::uint32_t k = 0; k < count; ++k) {
    char name[kNameWidth];
    if (!is.read(name, kNameWidth)) throw FormatError("snapshot: truncated field names");
    names.emplace_back(name, strnlen(name, kNameWidth));
  }
  for (const std::string& name : names) {
    ScalarField f(snap.grid);
    for (double& v : f.values()) v = binary::read_f64(is);
    snap.fields.push_back({name, std::move(f)});
  }
  return snap;
}

void save_snapshot(const std::string& path, const Snapshot& snap) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open '" + path + "' for writing");
  write_snapshot(os, snap);
}

Snapshot load_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open '" + path + "'");
  return read_snapshot(is);
}

}  // namespace qmhd
