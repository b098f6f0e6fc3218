#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ildepth/dataset.hpp"
#include "ildepth/matrix.hpp"

namespace ild {

// Parse failure with a 1-based location; the message carries path:row:column.
class CsvError : public std::invalid_argument {
public:
  CsvError(const std::string& path, std::size_t row, std::size_t col, const std::string& what);
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

private:
  std::size_t row_;
  std::size_t col_;
};

// Header row of names plus all-numeric body rows.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::optional<std::size_t> column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

struct DatasetColumns {
  std::string id = "id";        // optional in the file; generated when absent
  std::string label = "label";  // optional in the file
  std::vector<std::string> exclude;
};

// Feature columns are everything except the id, label, and excluded names.
// Ids must be integers, labels nonnegative integers.
Dataset dataset_from_table(const CsvTable& table, const std::string& path = "<csv>",
                           const DatasetColumns& cols = {});
Dataset read_dataset_csv(const std::string& path, const DatasetColumns& cols = {});

void write_dataset_csv(const std::string& path, const Dataset& X,
                       const std::string& label_column = "label");

// Square matrix with an id header column and ids as column names.
void write_matrix_csv(const std::string& path, const std::vector<std::int64_t>& ids,
                      const SquareMatrix& M);
struct NamedMatrix {
  std::vector<std::int64_t> ids;
  SquareMatrix values;
};
NamedMatrix read_matrix_csv(const std::string& path);

// 12 significant digits, the serialization contract for all numeric output.
std::string format_number(double v);

}  // namespace ild
