#include "ildepth/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ild {

CsvError::CsvError(const std::string& path, std::size_t row, std::size_t col,
                   const std::string& what)
    : std::invalid_argument(path + ":" + std::to_string(row) + ":" + std::to_string(col) + ": " +
                            what),
      row_(row),
      col_(col) {}

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] == name) return c;
  return std::nullopt;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

double parse_cell(const std::string& path, std::size_t row, std::size_t col,
                  const std::string& cell) {
  if (cell.empty()) throw CsvError(path, row, col, "empty cell");
  const char* begin = cell.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + cell.size())
    throw CsvError(path, row, col, "non-numeric cell '" + cell + "'");
  return v;
}

std::int64_t parse_integer_cell(const std::string& path, std::size_t row, std::size_t col,
                                double v, const std::string& what) {
  if (!std::isfinite(v) || v != std::floor(v))
    throw CsvError(path, row, col, what + " must be an integer");
  return static_cast<std::int64_t>(v);
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "' for reading");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw CsvError(path, 1, 1, "missing header row");
  table.header = split_line(line);
  if (table.header.empty() || (table.header.size() == 1 && table.header[0].empty()))
    throw CsvError(path, 1, 1, "empty header row");

  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_line(line);
    if (cells.size() != table.header.size())
      throw CsvError(path, row_no, cells.size(),
                     "row has " + std::to_string(cells.size()) + " cells, expected " +
                         std::to_string(table.header.size()));
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c)
      row[c] = parse_cell(path, row_no, c + 1, cells[c]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Dataset dataset_from_table(const CsvTable& table, const std::string& path,
                           const DatasetColumns& cols) {
  auto id_col = table.column(cols.id);
  auto label_col = table.column(cols.label);
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (id_col && c == *id_col) continue;
    if (label_col && c == *label_col) continue;
    bool excluded = false;
    for (const std::string& name : cols.exclude)
      if (table.header[c] == name) excluded = true;
    if (!excluded) feature_cols.push_back(c);
  }
  if (feature_cols.empty()) throw std::invalid_argument(path + ": no feature columns");
  if (table.rows.empty()) throw std::invalid_argument(path + ": no data rows");

  Dataset out(feature_cols.size());
  std::vector<double> coords(feature_cols.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    std::int64_t id = static_cast<std::int64_t>(r);
    if (id_col) id = parse_integer_cell(path, r + 2, *id_col + 1, row[*id_col], "id");
    int label = 0;
    if (label_col) {
      std::int64_t l = parse_integer_cell(path, r + 2, *label_col + 1, row[*label_col], "label");
      if (l < 0) throw CsvError(path, r + 2, *label_col + 1, "label must be nonnegative");
      label = static_cast<int>(l);
    }
    for (std::size_t c = 0; c < feature_cols.size(); ++c) coords[c] = row[feature_cols[c]];
    for (std::size_t c = 0; c < coords.size(); ++c)
      if (!std::isfinite(coords[c]))
        throw CsvError(path, r + 2, feature_cols[c] + 1, "non-finite coordinate");
    out.add({coords.data(), coords.size()}, id, label);
  }
  out.require_unique_ids();
  return out;
}

Dataset read_dataset_csv(const std::string& path, const DatasetColumns& cols) {
  return dataset_from_table(read_csv(path), path, cols);
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_dataset_csv(const std::string& path, const Dataset& X,
                       const std::string& label_column) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  out << "id";
  for (std::size_t c = 0; c < X.dim(); ++c) out << ",x" << c + 1;
  if (X.labeled()) out << "," << label_column;
  out << "\n";
  for (std::size_t i = 0; i < X.size(); ++i) {
    out << X.id(i);
    for (double v : X.point(i)) out << "," << format_number(v);
    if (X.labeled()) out << "," << X.label(i);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_matrix_csv(const std::string& path, const std::vector<std::int64_t>& ids,
                      const SquareMatrix& M) {
  if (ids.size() != M.size())
    throw std::invalid_argument("matrix csv: id count does not match matrix");
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  out << "id";
  for (std::int64_t id : ids) out << "," << id;
  out << "\n";
  for (std::size_t i = 0; i < M.size(); ++i) {
    out << ids[i];
    for (std::size_t j = 0; j < M.size(); ++j) out << "," << format_number(M.at(i, j));
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

NamedMatrix read_matrix_csv(const std::string& path) {
  CsvTable table = read_csv(path);
  if (table.header.size() != table.rows.size() + 1)
    throw std::invalid_argument(path + ": matrix must be square (got " +
                                std::to_string(table.rows.size()) + " rows, " +
                                std::to_string(table.header.size() - 1) + " columns)");
  NamedMatrix out;
  std::size_t n = table.rows.size();
  out.ids.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    try {
      out.ids[j] = std::stoll(table.header[j + 1]);
    } catch (const std::exception&) {
      throw CsvError(path, 1, j + 2, "column name must be a point id");
    }
  }
  out.values = SquareMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t row_id =
        parse_integer_cell(path, i + 2, 1, table.rows[i][0], "row id");
    if (row_id != out.ids[i])
      throw CsvError(path, i + 2, 1, "row id does not match column order");
    for (std::size_t j = 0; j < n; ++j) out.values.at(i, j) = table.rows[i][j + 1];
  }
  return out;
}

}  // namespace ild
