#pragma once

// Binary field snapshot, all integers and floats little-endian:
//
//   offset  size  content
//   0       8     magic "QMHDSNAP"
//   8       4     u32 format version (1)
//   12      4     u32 nx
//   16      4     u32 ny
//   20      4     u32 field count F
//   24      8     f64 time
//   32      16*F  field names, ASCII, NUL-padded to 16 bytes
//   ...     8*nx*ny per field, row-major (x fastest), in name order
//
// Trailing bytes after the last field are allowed; checkpoints use them for
// their parameter block.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qmhd/spectral/grid.hpp"

namespace qmhd {

struct NamedField {
  std::string name;
  ScalarField field;
};

struct Snapshot {
  double time = 0.0;
  Grid grid;
  std::vector<NamedField> fields;

  const ScalarField& get(const std::string& name) const;
};

void write_snapshot(std::ostream& os, const Snapshot& snap);
Snapshot read_snapshot(std::istream& is);

void save_snapshot(const std::string& path, const Snapshot& snap);
Snapshot load_snapshot(const std::string& path);

namespace binary {

void write_u32(std::ostream& os, std::uint32_t v);
void write_u64(std::ostream& os, std::uint64_t v);
void write_f64(std::ostream& os, double v);
std::uint32_t read_u32(std::istream& is);
std::uint64_t read_u64(std::istream& is);
double read_f64(std::istream& is);

}  // namespace binary

}  // namespace qmhd
