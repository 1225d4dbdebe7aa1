#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rigicert/gallery.hpp"

namespace rigicert {

/// Malformed fixture input. `where` is a JSON path such as
/// "framework.positions[3]".
class InputError : public std::runtime_error {
 public:
  InputError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

inline constexpr int kFixtureFormatVersion = 1;

/// Fixture files are JSON with 0-based node indices:
///
///   {"version": 1, "name": "...",
///    "graph": {"n": 4, "edges": [[0, 1, "bar"], ...]},
///    "framework": {"d": 2, "positions": [[x, y], ...], "generic": false},
///    "stress": {"kind": "spherical", "order": 4, "entries": [...]},
///    "expected": {"corank": 3, ...}}
///
/// "stress" (entries: the lower triangle row by row), "expected" and "name"
/// are optional. Throws InputError.
Fixture parse_fixture(std::string_view text);

/// Canonical form: sorted keys, two-space indentation, doubles with 17
/// significant digits. parse then serialize is a fixed point.
std::string serialize_fixture(const Fixture& fx);

std::string read_file(const std::string& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex_digest(std::string_view bytes);

}  // namespace rigicert
