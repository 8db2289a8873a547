#include "output.hpp"

#include <cmath>
#include <iomanip>

#include "casimir/error.hpp"

namespace casimir::cli {

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& comments,
                     const std::vector<std::string>& columns)
    : path_(path), columns_(columns), out_(path) {
  if (!out_) throw DomainError("cannot write '" + path.string() + "'");
  for (const auto& c : comments) out_ << "# " << c << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
  out_ << std::setprecision(10);
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    if (std::isnan(values[i]))
      out_ << "nan";
    else
      out_ << values[i];
  }
  out_ << '\n';
}

void write_gnuplot(const CsvWriter& csv, const PlotSpec& spec) {
  auto gp = csv.path();
  gp += ".gp";
  std::ofstream out(gp);
  if (!out) throw DomainError("cannot write '" + gp.string() + "'");
  const auto& cols = csv.columns();
  out << "set datafile separator ','\n";
  out << "set key autotitle columnhead\n";
  out << "set title '" << spec.title << "'\n";
  out << "set xlabel '" << cols.at(static_cast<std::size_t>(spec.x - 1)) << "'\n";
  if (spec.logx) out << "set logscale x\n";
  if (spec.logy) out << "set logscale y\n";
  out << "plot ";
  for (std::size_t i = 0; i < spec.y.size(); ++i) {
    const int y = spec.y[i];
    out << (i ? ", \\\n     " : "") << "'" << csv.path().filename().string() << "' using " << spec.x << ":"
        << (spec.abs_y ? "(abs($" + std::to_string(y) + "))" : std::to_string(y)) << " with linespoints title '"
        << cols.at(static_cast<std::size_t>(y - 1)) << "'";
  }
  out << "\npause -1\n";
}

std::filesystem::path prepare_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace casimir::cli
