#include "tumorbim/csv.hpp"

#include <cstdio>

#include "tumorbim/errors.hpp"

namespace tumorbim::csv {

std::string format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Writer::Writer(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw Error("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void Writer::row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

void Writer::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw Error("csv row has wrong number of columns");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format(values[i]);
  out_ << '\n';
}

void write_columns(const std::filesystem::path& path, const std::vector<std::string>& header,
                   const std::vector<const std::vector<double>*>& columns) {
  Writer w(path, header);
  const std::size_t n = columns.empty() ? 0 : columns.front()->size();
  std::vector<double> r(columns.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) r[c] = (*columns[c])[i];
    w.row(r);
  }
}

}  // namespace tumorbim::csv
