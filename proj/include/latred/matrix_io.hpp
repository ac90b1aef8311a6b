#pragma once

#include <filesystem>
#include <iosfwd>

#include "latred/core.hpp"

namespace latred {

// `.mat` text format: a first line `m n`, then m lines of n whitespace
// separated decimal integers (row-major). Entries must fit in 128 bits.

IntMatrix read_mat(std::istream& in);
IntMatrix read_mat(const std::filesystem::path& path);

void write_mat(std::ostream& out, const IntMatrix& matrix);
void write_mat(const std::filesystem::path& path, const IntMatrix& matrix);

}  // namespace latred
