#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace casimir::cli {

/// CSV file with leading '#' comment lines and a column header.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& comments,
            const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  const std::filesystem::path& path() const { return path_; }
  const std::vector<std::string>& columns() const { return columns_; }

 private:
  std::filesystem::path path_;
  std::vector<std::string> columns_;
  std::ofstream out_;
};

struct PlotSpec {
  std::string title;
  int x = 1;               // 1-based column numbers
  std::vector<int> y;
  bool logx = false;
  bool logy = false;
  bool abs_y = false;      // plot |y| (needed with logy for signed data)
};

/// Companion gnuplot script `<csv>.gp`.
void write_gnuplot(const CsvWriter& csv, const PlotSpec& spec);

std::filesystem::path prepare_dir(const std::string& dir);

}  // namespace casimir::cli
