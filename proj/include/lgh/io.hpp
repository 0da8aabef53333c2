#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lgh/symbols.hpp"

namespace lgh {

// Malformed spec, coefficient or grid input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultCircleTrunc = 32;
inline constexpr int kDefaultTwoEll = 16;

// printf %.17g.
std::string format_double(double x);

// LGH-COEF v1. Entries with |value| <= drop_below are omitted.
std::string coef_to_string(const FourierTable& table, double drop_below = 0.0);
FourierTable parse_coef(std::string_view text);

// LGH-GRID v1: factor grid sizes then one `re im` line per node, node1-major.
std::string grid_to_string(const GridFunction& f);
GridFunction parse_grid(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);
FourierTable read_coef_file(const std::filesystem::path& path);
GridFunction read_grid_file(const std::filesystem::path& path);
bool has_grid_header(std::string_view text);

struct TruncationOverride {
  std::optional<int> trunc1;
  std::optional<int> trunc2;
};

// Key-value spec text; gridfile paths resolve against base_dir. Missing truncations take the defaults.
OperatorSpec parse_spec(std::string_view text, const std::filesystem::path& base_dir, const TruncationOverride& over = {});
OperatorSpec read_spec_file(const std::filesystem::path& path, const TruncationOverride& over = {});

}  // namespace lgh
