#pragma once

#include <filesystem>
#include <iosfwd>

#include "fsp/grid.hpp"

namespace fsp {

enum class PgridEncoding { text, binary };

/// Writes a grid function in PGRID v1 format.
///
///   PGRID 1
///   dim <d>
///   bounds <a_1> <b_1> ... <a_d> <b_d>
///   panels <M_1> ... <M_d>
///   order x y z row-major          (axis names truncated to d)
///   data text                      one value per line, storage order
///   data binary little-endian f64  raw 8-byte values follow the newline
void write_pgrid(std::ostream& os, const GridFunction& f, PgridEncoding encoding = PgridEncoding::text);

/// Reads a PGRID v1 stream; throws FormatError on unknown keys or malformed content.
GridFunction read_pgrid(std::istream& is);

/// Writes to `path` through a temporary sibling file renamed on success.
void save_pgrid(const std::filesystem::path& path, const GridFunction& f,
                PgridEncoding encoding = PgridEncoding::text);
GridFunction load_pgrid(const std::filesystem::path& path);

}  // namespace fsp
