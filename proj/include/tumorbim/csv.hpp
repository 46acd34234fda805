#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace tumorbim::csv {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format(double v);

class Writer {
 public:
  Writer(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  void flush() { out_.flush(); }

 private:
  std::ofstream out_;
  std::size_t columns_;
};

/// Column-oriented table: one column per header entry, all equal length.
void write_columns(const std::filesystem::path& path, const std::vector<std::string>& header,
                   const std::vector<const std::vector<double>*>& columns);

}  // namespace tumorbim::csv
