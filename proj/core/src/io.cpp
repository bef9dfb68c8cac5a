#include "prisma/io.hpp"

#include <cctype>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace prisma::io {

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line,
                             const std::string& message) {
  throw InvalidInputError(path + ":" + std::to_string(line) + ": " + message);
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(s);
  while (std::getline(in, field, sep)) out.push_back(trim(field));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& token, const std::string& path, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    parse_fail(path, line, "expected a number, got '" + token + "'");
  }
}

long parse_long(const std::string& token, const std::string& path, int line) {
  long v = 0;
  const auto* begin = token.data();
  const auto* end = begin + token.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end)
    parse_fail(path, line, "expected an integer, got '" + token + "'");
  return v;
}

struct LineReader {
  std::ifstream in;
  std::string path;
  int line = 0;

  explicit LineReader(const std::string& p) : in(p), path(p) {
    if (!in) throw InvalidInputError(path + ": cannot open file");
  }

  /// Next nonempty line; % comments are skipped when requested.
  std::optional<std::string> next(bool skip_comments) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line;
      const std::string s = trim(raw);
      if (s.empty()) continue;
      if (skip_comments && s[0] == '%') continue;
      return s;
    }
    return std::nullopt;
  }
};

struct MmHeader {
  bool coordinate = false;
};

MmHeader parse_mm_header(const std::string& header, const std::string& path) {
  std::istringstream in(header);
  std::string banner, object, format, field, symmetry;
  in >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix")
    parse_fail(path, 1, "not a MatrixMarket matrix file");
  MmHeader h;
  if (format == "coordinate")
    h.coordinate = true;
  else if (format != "array")
    parse_fail(path, 1, "unsupported MatrixMarket format '" + format + "'");
  if (field != "real")
    parse_fail(path, 1, "unsupported MatrixMarket field '" + field + "'");
  if (symmetry != "general")
    parse_fail(path, 1, "only general symmetry is supported, got '" + symmetry + "'");
  return h;
}

std::vector<std::string> whitespace_tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

problems::ObservedEntries read_coordinate_body(LineReader& reader) {
  const auto size_line = reader.next(true);
  if (!size_line) parse_fail(reader.path, reader.line, "missing size line");
  const auto dims = whitespace_tokens(*size_line);
  if (dims.size() != 3)
    parse_fail(reader.path, reader.line, "size line must be 'rows cols nnz'");
  const long rows = parse_long(dims[0], reader.path, reader.line);
  const long cols = parse_long(dims[1], reader.path, reader.line);
  const long nnz = parse_long(dims[2], reader.path, reader.line);
  if (rows < 1 || cols < 1)
    parse_fail(reader.path, reader.line, "dimensions must be positive");
  if (nnz < 1) parse_fail(reader.path, reader.line, "file declares no entries");

  std::vector<Index> obs_rows, obs_cols;
  Vector values(nnz);
  std::set<std::pair<Index, Index>> seen;
  for (long t = 0; t < nnz; ++t) {
    const auto entry = reader.next(true);
    if (!entry)
      parse_fail(reader.path, reader.line,
                 "expected " + std::to_string(nnz) + " entries, file ended after " +
                     std::to_string(t));
    const auto tok = whitespace_tokens(*entry);
    if (tok.size() != 3)
      parse_fail(reader.path, reader.line, "entry must be 'row col value'");
    const long i = parse_long(tok[0], reader.path, reader.line);
    const long j = parse_long(tok[1], reader.path, reader.line);
    if (i < 1 || i > rows || j < 1 || j > cols)
      parse_fail(reader.path, reader.line,
                 "index (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside the " + std::to_string(rows) + "x" +
                     std::to_string(cols) + " matrix");
    if (!seen.insert({i - 1, j - 1}).second)
      parse_fail(reader.path, reader.line,
                 "duplicate coordinate (" + std::to_string(i) + ", " +
                     std::to_string(j) + ")");
    obs_rows.push_back(i - 1);
    obs_cols.push_back(j - 1);
    values[t] = parse_double(tok[2], reader.path, reader.line);
  }
  return problems::make_observed(std::move(obs_rows), std::move(obs_cols),
                                 std::move(values), rows, cols);
}

Matrix read_array_body(LineReader& reader) {
  const auto size_line = reader.next(true);
  if (!size_line) parse_fail(reader.path, reader.line, "missing size line");
  const auto dims = whitespace_tokens(*size_line);
  if (dims.size() != 2)
    parse_fail(reader.path, reader.line, "size line must be 'rows cols'");
  const long rows = parse_long(dims[0], reader.path, reader.line);
  const long cols = parse_long(dims[1], reader.path, reader.line);
  if (rows < 1 || cols < 1)
    parse_fail(reader.path, reader.line, "dimensions must be positive");

  Matrix m(rows, cols);
  long filled = 0;
  const long total = rows * cols;
  while (filled < total) {
    const auto entry = reader.next(true);
    if (!entry)
      parse_fail(reader.path, reader.line,
                 "expected " + std::to_string(total) + " values, file ended after " +
                     std::to_string(filled));
    for (const auto& tok : whitespace_tokens(*entry)) {
      if (filled >= total)
        parse_fail(reader.path, reader.line, "more values than rows*cols");
      // Array format is column-major.
      m(filled % rows, filled / rows) = parse_double(tok, reader.path, reader.line);
      ++filled;
    }
  }
  return m;
}

Matrix read_csv_matrix(LineReader& reader) {
  const auto dims_line = reader.next(false);
  if (!dims_line) parse_fail(reader.path, reader.line, "missing dimension line");
  const auto dims = split(*dims_line, ',');
  if (dims.size() != 2)
    parse_fail(reader.path, reader.line, "dimension line must be '<rows>,<cols>'");
  const long rows = parse_long(dims[0], reader.path, reader.line);
  const long cols = parse_long(dims[1], reader.path, reader.line);
  if (rows < 1 || cols < 1)
    parse_fail(reader.path, reader.line, "dimensions must be positive");

  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    const auto row_line = reader.next(false);
    if (!row_line)
      parse_fail(reader.path, reader.line,
                 "expected " + std::to_string(rows) + " data rows, file ended after " +
                     std::to_string(i));
    const auto fields = split(*row_line, ',');
    if (static_cast<long>(fields.size()) != cols)
      parse_fail(reader.path, reader.line,
                 "expected " + std::to_string(cols) + " fields, got " +
                     std::to_string(fields.size()));
    for (long j = 0; j < cols; ++j)
      m(i, j) = parse_double(fields[static_cast<std::size_t>(j)], reader.path,
                             reader.line);
  }
  return m;
}

void print_full(std::FILE* out, double v) { std::fprintf(out, "%.17g", v); }

struct FileHandle {
  std::FILE* f;
  explicit FileHandle(const std::string& path, const char* mode)
      : f(std::fopen(path.c_str(), mode)) {
    if (!f) throw InvalidInputError(path + ": cannot open for writing");
  }
  ~FileHandle() {
    if (f) std::fclose(f);
  }
  FileHandle(const FileHandle&) = delete;
  FileHandle& operator=(const FileHandle&) = delete;
};

}  // namespace

Matrix load_matrix(const std::string& path) {
  LineReader reader(path);
  const auto first = reader.next(false);
  if (!first) throw InvalidInputError(path + ": empty file");
  if (first->rfind("%%MatrixMarket", 0) == 0) {
    const auto header = parse_mm_header(*first, path);
    if (!header.coordinate) return read_array_body(reader);
    const auto omega = read_coordinate_body(reader);
    Matrix m = Matrix::Zero(omega.host_rows, omega.host_cols);
    for (Index t = 0; t < omega.count(); ++t)
      m(omega.rows[static_cast<std::size_t>(t)],
        omega.cols[static_cast<std::size_t>(t)]) = omega.values[t];
    return m;
  }
  if (trim(*first) == "rows,cols") return read_csv_matrix(reader);
  parse_fail(path, reader.line,
             "unrecognized format; expected a MatrixMarket banner or a "
             "'rows,cols' CSV header");
}

problems::ObservedEntries load_observed(const std::string& path) {
  LineReader reader(path);
  const auto first = reader.next(false);
  if (!first) throw InvalidInputError(path + ": empty file");
  if (first->rfind("%%MatrixMarket", 0) != 0)
    parse_fail(path, reader.line, "observed entries require a MatrixMarket file");
  const auto header = parse_mm_header(*first, path);
  if (!header.coordinate)
    parse_fail(path, reader.line,
               "observed entries require the coordinate format, got array");
  return read_coordinate_body(reader);
}

void save_matrix_market_array(const std::string& path, const Matrix& m) {
  if (m.size() == 0) throw InvalidInputError("save_matrix_market_array: empty matrix");
  FileHandle file(path, "w");
  std::fprintf(file.f, "%%%%MatrixMarket matrix array real general\n");
  std::fprintf(file.f, "%" PRIdPTR " %" PRIdPTR "\n",
               static_cast<std::intptr_t>(m.rows()),
               static_cast<std::intptr_t>(m.cols()));
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      print_full(file.f, m(i, j));
      std::fputc('\n', file.f);
    }
}

void save_matrix_market_coordinate(const std::string& path,
                                   const problems::ObservedEntries& omega) {
  FileHandle file(path, "w");
  std::fprintf(file.f, "%%%%MatrixMarket matrix coordinate real general\n");
  std::fprintf(file.f, "%" PRIdPTR " %" PRIdPTR " %" PRIdPTR "\n",
               static_cast<std::intptr_t>(omega.host_rows),
               static_cast<std::intptr_t>(omega.host_cols),
               static_cast<std::intptr_t>(omega.count()));
  for (Index t = 0; t < omega.count(); ++t) {
    std::fprintf(file.f, "%" PRIdPTR " %" PRIdPTR " ",
                 static_cast<std::intptr_t>(omega.rows[static_cast<std::size_t>(t)] + 1),
                 static_cast<std::intptr_t>(omega.cols[static_cast<std::size_t>(t)] + 1));
    print_full(file.f, omega.values[t]);
    std::fputc('\n', file.f);
  }
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
  out << "iter,objective,best_objective,rel_step,elapsed_s,rank_estimate\n";
  char buf[512];
  for (const auto& rec : trace) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,", rec.iter,
                  rec.objective, rec.best_objective, rec.rel_step, rec.elapsed_s);
    out << buf;
    if (rec.rank >= 0) out << rec.rank;
    out << '\n';
  }
}

void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& trace) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError(path + ": cannot open for writing");
  write_trace_csv(out, trace);
  if (!out) throw NumericalError(path + ": write failed");
}

}  // namespace prisma::io
