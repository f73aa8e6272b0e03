#pragma once

#include <optional>
#include <string>
#include <vector>

namespace frostnet {

// Shortest text that round-trips a double ("%.17g").
std::string format_real(double x);
// Empty field for a missing value.
std::string format_real(const std::optional<double>& x);

std::string csv_line(const std::vector<std::string>& fields);

// Writes the whole file or throws std::runtime_error naming the path.
void write_text_file(const std::string& path, const std::string& content);
void write_binary_file(const std::string& path, const std::vector<unsigned char>& bytes);
std::vector<unsigned char> read_binary_file(const std::string& path);

}  // namespace frostnet
