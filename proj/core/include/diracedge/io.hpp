#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "diracedge/common.hpp"
#include "diracedge/grid2.hpp"

namespace diracedge {

// CSV writer with a mandatory header row.  Numbers are formatted with
// snprintf("%.17g") so output is locale-independent ('.' decimal separator)
// and round-trips doubles exactly.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path,
            const std::vector<std::string>& columns);

  // Writes one data row; the value count must match the header.
  void row(const std::vector<double>& values);

  // Mixed row for columns that carry labels rather than numbers.
  void row_raw(const std::vector<std::string>& cells);

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_ = 0;
};

std::string format_double(double v);

// Two-component field snapshot, a little-endian binary block:
//   bytes 0..3  magic "DEB1"
//   uint32      n1, n2        (grid point counts, x1 slow / row-major)
//   float64     L1, L2, h, t  (box lengths, semiclassical parameter, time)
//   complex128  c0 then c1, n1*n2 values each, row-major
void write_spinor_dump(const std::filesystem::path& path, const SpinorField& f,
                       double h, double t);

struct SpinorDump {
  std::uint32_t n1 = 0, n2 = 0;
  double L1 = 0.0, L2 = 0.0, h = 0.0, t = 0.0;
  std::vector<complex> c0, c1;
};

SpinorDump read_spinor_dump(const std::filesystem::path& path);

// FNV-1a 64-bit content hash (offset basis 14695981039346656037,
// prime 1099511628211); used for scenario hashes in run manifests.
std::uint64_t fnv1a64(std::string_view bytes);

// Whole-file text helpers; failures throw invalid_input naming the path.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace diracedge
