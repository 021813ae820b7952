#include "diracedge/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>

namespace diracedge {

static_assert(std::endian::native == std::endian::little,
              "binary field dumps are defined little-endian; a byte-swapping "
              "writer is needed on this platform");

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& columns)
    : path_(path), columns_(columns.size()) {
  require(!columns.empty(), "csv writer: at least one column is required");
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_)
    throw invalid_input("csv writer: cannot open '" + path.string() +
                        "' for writing");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ << ',';
    out_ << columns[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  require(values.size() == columns_,
          "csv writer: row width does not match the header");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_double(values[i]);
  }
  out_ << '\n';
  if (!out_)
    throw invalid_input("csv writer: write to '" + path_.string() +
                        "' failed");
}

void CsvWriter::row_raw(const std::vector<std::string>& cells) {
  require(cells.size() == columns_,
          "csv writer: row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  if (!out_)
    throw invalid_input("csv writer: write to '" + path_.string() +
                        "' failed");
}

namespace {

void put_bytes(std::ofstream& out, const void* p, std::size_t n) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void get_bytes(std::ifstream& in, void* p, std::size_t n,
               const std::filesystem::path& path) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    throw invalid_input("field dump: '" + path.string() +
                        "' is truncated or not a DEB1 file");
}

}  // namespace

void write_spinor_dump(const std::filesystem::path& path, const SpinorField& f,
                       double h, double t) {
  require(f.c0.size() == f.grid.size() && f.c1.size() == f.grid.size(),
          "field dump: component sizes do not match the grid");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw invalid_input("field dump: cannot open '" + path.string() +
                        "' for writing");
  put_bytes(out, "DEB1", 4);
  std::uint32_t n1 = static_cast<std::uint32_t>(f.grid.n1);
  std::uint32_t n2 = static_cast<std::uint32_t>(f.grid.n2);
  put_bytes(out, &n1, 4);
  put_bytes(out, &n2, 4);
  double header[4] = {f.grid.L1, f.grid.L2, h, t};
  put_bytes(out, header, sizeof(header));
  put_bytes(out, f.c0.data(), f.c0.size() * sizeof(complex));
  put_bytes(out, f.c1.data(), f.c1.size() * sizeof(complex));
  if (!out)
    throw invalid_input("field dump: write to '" + path.string() + "' failed");
}

SpinorDump read_spinor_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw invalid_input("field dump: cannot open '" + path.string() + "'");
  char magic[4];
  get_bytes(in, magic, 4, path);
  if (std::memcmp(magic, "DEB1", 4) != 0)
    throw invalid_input("field dump: '" + path.string() +
                        "' does not start with the DEB1 magic");
  SpinorDump d;
  get_bytes(in, &d.n1, 4, path);
  get_bytes(in, &d.n2, 4, path);
  double header[4];
  get_bytes(in, header, sizeof(header), path);
  d.L1 = header[0];
  d.L2 = header[1];
  d.h = header[2];
  d.t = header[3];
  std::size_t count = std::size_t(d.n1) * std::size_t(d.n2);
  require(count > 0 && count < (std::size_t(1) << 28),
          "field dump: implausible grid size in header");
  d.c0.resize(count);
  d.c1.resize(count);
  get_bytes(in, d.c0.data(), count * sizeof(complex), path);
  get_bytes(in, d.c1.data(), count * sizeof(complex), path);
  return d;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw invalid_input("cannot open '" + path.string() + "' for reading");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad())
    throw invalid_input("read from '" + path.string() + "' failed");
  return text;
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw invalid_input("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw invalid_input("write to '" + path.string() + "' failed");
}

}  // namespace diracedge
