#include "latred/matrix_io.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace latred {

namespace {

std::size_t read_dimension(std::istream& in, const char* what) {
  std::string token;
  if (!(in >> token)) throw InputError(std::string("missing ") + what + " in header");
  const i128 v = parse_i128(token);
  if (v < 1 || v > static_cast<i128>(std::numeric_limits<std::size_t>::max() / 2)) {
    throw InputError(std::string("invalid ") + what + " '" + token + "'");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

IntMatrix read_mat(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw InputError("empty matrix file");
  std::istringstream head(header);
  const std::size_t m = read_dimension(head, "row count");
  const std::size_t n = read_dimension(head, "column count");
  std::string extra;
  if (head >> extra) throw InputError("unexpected token '" + extra + "' in header");

  IntMatrix out(m, n);
  std::string line;
  for (std::size_t r = 0; r < m; ++r) {
    if (!std::getline(in, line)) throw InputError("expected " + std::to_string(m) + " rows, found " + std::to_string(r));
    std::istringstream row(line);
    std::string token;
    std::size_t c = 0;
    while (row >> token) {
      if (c == n) throw InputError("row " + std::to_string(r + 1) + " has more than " + std::to_string(n) + " entries");
      try {
        out(r, c) = parse_i128(token);
      } catch (const InputError& e) {
        throw InputError("row " + std::to_string(r + 1) + ", column " + std::to_string(c + 1) + ": " + e.what());
      }
      ++c;
    }
    if (c != n) throw InputError("row " + std::to_string(r + 1) + " has " + std::to_string(c) + " entries, expected " + std::to_string(n));
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw InputError("trailing content after " + std::to_string(m) + " rows");
  }
  return out;
}

IntMatrix read_mat(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "' for reading");
  try {
    return read_mat(in);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_mat(std::ostream& out, const IntMatrix& matrix) {
  out << matrix.rows() << ' ' << matrix.cols() << '\n';
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      if (c) out << ' ';
      out << to_string(matrix(r, c));
    }
    out << '\n';
  }
}

void write_mat(const std::filesystem::path& path, const IntMatrix& matrix) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  write_mat(out, matrix);
  if (!out) throw InputError("write to '" + path.string() + "' failed");
}

}  // namespace latred
