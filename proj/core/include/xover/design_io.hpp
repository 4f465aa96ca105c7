#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "xover/design.hpp"

namespace xover {

// Design text format, version 1:
//
//   # xover-design v1
//   t=<int> p=<int> s=<int>
//   <p lines of s space-separated treatment labels>
//
// Dropout pattern files hold a single line of s completion periods.
// Parsers are strict and throw ParseError with 1-based line and column.

inline constexpr std::string_view kDesignHeader = "# xover-design v1";

CrossoverDesign parse_design(std::string_view text);
std::string format_design(const CrossoverDesign& design);

DropoutPattern parse_pattern(std::string_view text,
                             std::optional<int> expected_subjects = std::nullopt);
std::string format_pattern(const DropoutPattern& pattern);

// File wrappers. IO failures throw Error.
CrossoverDesign read_design(const std::filesystem::path& path);
void write_design(const std::filesystem::path& path, const CrossoverDesign& design);
DropoutPattern read_pattern(const std::filesystem::path& path,
                            std::optional<int> expected_subjects = std::nullopt);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace xover
