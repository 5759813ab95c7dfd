#pragma once

#include <string>
#include <vector>

namespace vlift {

// Shortest representation that round-trips a double exactly (17 significant
// digits); all text outputs use it so reruns are byte-identical.
std::string format_double(double v);

// Writes a CSV file: one fixed header line, then rows of format_double values.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace vlift
