#include "fsp/grid_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fsp/errors.hpp"

namespace fsp {

namespace {

constexpr const char* kAxisNames[] = {"x", "y", "z"};

std::string order_line(int dim) {
  std::string line = "order";
  for (int s = 0; s < dim; ++s) {
    line += ' ';
    line += kAxisNames[s];
  }
  return line + " row-major";
}

std::string read_header_line(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("PGRID: unexpected end of header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

void put_le_f64(std::ostream& os, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char bytes[8];
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>((bits >> (8 * b)) & 0xffu);
  os.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_le_f64(std::istream& is) {
  unsigned char bytes[8];
  if (!is.read(reinterpret_cast<char*>(bytes), 8)) throw FormatError("PGRID: truncated binary data");
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_pgrid(std::ostream& os, const GridFunction& f, PgridEncoding encoding) {
  const UniformGrid& g = f.grid();
  std::ostringstream header;
  header.precision(17);
  header << "PGRID 1\n" << "dim " << g.dim() << "\n" << "bounds";
  for (int s = 0; s < g.dim(); ++s) header << ' ' << g.lower(s) << ' ' << g.upper(s);
  header << "\npanels";
  for (int s = 0; s < g.dim(); ++s) header << ' ' << g.panels(s);
  header << "\n" << order_line(g.dim()) << "\n";
  os << header.str();
  if (encoding == PgridEncoding::text) {
    os << "data text\n";
    char buf[32];
    for (double v : f.values()) {
      std::snprintf(buf, sizeof buf, "%.17g\n", v);
      os << buf;
    }
  } else {
    os << "data binary little-endian f64\n";
    for (double v : f.values()) put_le_f64(os, v);
  }
  if (!os) throw FormatError("PGRID: write failed");
}

GridFunction read_pgrid(std::istream& is) {
  if (read_header_line(is) != "PGRID 1") throw FormatError("PGRID: missing 'PGRID 1' magic line");
  int dim = 0;
  std::vector<double> lower, upper;
  std::vector<std::size_t> panels;
  bool have_order = false;
  for (;;) {
    const std::string line = read_header_line(is);
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "dim") {
      if (!(ls >> dim) || dim < 1 || dim > kMaxDim) throw FormatError("PGRID: bad dim line");
    } else if (key == "bounds") {
      if (dim == 0) throw FormatError("PGRID: bounds before dim");
      for (int s = 0; s < dim; ++s) {
        double a, b;
        if (!(ls >> a >> b)) throw FormatError("PGRID: bad bounds line");
        lower.push_back(a);
        upper.push_back(b);
      }
    } else if (key == "panels") {
      if (dim == 0) throw FormatError("PGRID: panels before dim");
      for (int s = 0; s < dim; ++s) {
        long long m;
        if (!(ls >> m) || m < 2) throw FormatError("PGRID: bad panels line");
        panels.push_back(static_cast<std::size_t>(m));
      }
    } else if (key == "order") {
      if (line != order_line(dim)) throw FormatError("PGRID: unsupported axis order '" + line + "'");
      have_order = true;
    } else if (key == "data") {
      if (lower.empty() || panels.empty() || !have_order) throw FormatError("PGRID: incomplete header before data");
      const UniformGrid grid(lower, upper, panels);
      std::vector<double> values(grid.node_count());
      if (line == "data text") {
        for (auto& v : values) {
          std::string tok;
          if (!(is >> tok)) throw FormatError("PGRID: truncated text data");
          try {
            std::size_t used = 0;
            v = std::stod(tok, &used);
            if (used != tok.size()) throw FormatError("PGRID: bad value '" + tok + "'");
          } catch (const std::logic_error&) {
            throw FormatError("PGRID: bad value '" + tok + "'");
          }
        }
      } else if (line == "data binary little-endian f64") {
        for (auto& v : values) v = get_le_f64(is);
      } else {
        throw FormatError("PGRID: unknown data encoding '" + line + "'");
      }
      return GridFunction(grid, std::move(values));
    } else {
      throw FormatError("PGRID: unknown header key '" + key + "'");
    }
  }
}

void save_pgrid(const std::filesystem::path& path, const GridFunction& f, PgridEncoding encoding) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw FormatError("cannot open " + tmp.string() + " for writing");
    try {
      write_pgrid(os, f, encoding);
    } catch (...) {
      os.close();
      std::filesystem::remove(tmp);
      throw;
    }
  }
  std::filesystem::rename(tmp, path);
}

GridFunction load_pgrid(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  return read_pgrid(is);
}

}  // namespace fsp
