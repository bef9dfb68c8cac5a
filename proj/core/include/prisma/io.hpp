#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "prisma/problems.hpp"
#include "prisma/solver.hpp"
#include "prisma/types.hpp"

namespace prisma::io {

/// Reads a dense matrix from a MatrixMarket file (array or coordinate,
/// real general; coordinate files are densified) or from a headered CSV
/// (first line `rows,cols`, second line the dimensions, then one CSV row
/// per matrix row). The format is sniffed from the first line. Parse errors
/// carry the offending line number.
Matrix load_matrix(const std::string& path);

/// Reads observed entries from a MatrixMarket coordinate file. Indices are
/// 1-based in the file, 0-based in the result. Duplicates are an error
/// naming the first duplicate.
problems::ObservedEntries load_observed(const std::string& path);

/// MatrixMarket array format, full precision (values round-trip bitwise).
void save_matrix_market_array(const std::string& path, const Matrix& m);

/// MatrixMarket coordinate format from observed entries, 1-based indices.
void save_matrix_market_coordinate(const std::string& path,
                                   const problems::ObservedEntries& omega);

/// Trace CSV: header `iter,objective,best_objective,rel_step,elapsed_s,rank_estimate`,
/// one row per record, rank_estimate empty when not applicable. Values are
/// printed with 17 significant digits so identical runs produce identical
/// bytes (elapsed_s excepted).
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);
void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& trace);

}  // namespace prisma::io
