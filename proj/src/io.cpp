#include "signtest/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace signtest {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string tok;
  for (char ch : line) {
    if (ch == ' ' || ch == '\t' || ch == ',' || ch == '\r') {
      if (!tok.empty()) {
        out.push_back(tok);
        tok.clear();
      }
    } else {
      tok.push_back(ch);
    }
  }
  if (!tok.empty()) out.push_back(tok);
  return out;
}

}  // namespace

Matrix read_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  Eigen::Index width = -1;
  int width_row = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '#') continue;
    const std::vector<std::string> toks = tokenize(line);
    if (toks.empty()) continue;
    const int row_number = int(rows.size()) + 1;
    std::vector<double> row;
    row.reserve(toks.size());
    for (std::size_t c = 0; c < toks.size(); ++c) {
      const std::string& t = toks[c];
      char* end = nullptr;
      const double v = std::strtod(t.c_str(), &end);
      if (end == t.c_str() || *end != '\0') {
        std::ostringstream msg;
        msg << "row " << row_number << ", column " << (c + 1) << ": '" << t
            << "' is not a number";
        throw MatrixParseError(msg.str(), row_number, int(c + 1));
      }
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "row " << row_number << ", column " << (c + 1)
            << ": non-finite value";
        throw MatrixParseError(msg.str(), row_number, int(c + 1));
      }
      row.push_back(v);
    }
    if (width < 0) {
      width = Eigen::Index(row.size());
      width_row = row_number;
    } else if (Eigen::Index(row.size()) != width) {
      std::ostringstream msg;
      msg << "row " << row_number << " has " << row.size()
          << " values, expected " << width << " (as in row " << width_row
          << ")";
      throw MatrixParseError(msg.str(), row_number, 0);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw MatrixParseError("no data rows found", 0, 0);
  Matrix m(Eigen::Index(rows.size()), width);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < width; ++j)
      m(i, j) = rows[std::size_t(i)][std::size_t(j)];
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return read_matrix(in);
}

Vector read_vector_file(const std::string& path) {
  const Matrix m = read_matrix_file(path);
  Vector v(m.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v[k++] = m(i, j);
  return v;
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace signtest
