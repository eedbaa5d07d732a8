#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "aovs/errors.hpp"
#include "aovs/vecset.hpp"

namespace aovs::vec {

namespace {

constexpr char kMagic[4] = {'A', 'O', 'V', 'S'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

std::string printable_magic(const unsigned char* p) {
  std::string s;
  for (int i = 0; i < 4; ++i) {
    if (std::isprint(p[i])) {
      s.push_back(static_cast<char>(p[i]));
    } else {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\x%02x", p[i]);
      s += buf;
    }
  }
  return s;
}

RawMatrix read_f32bin(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::array<unsigned char, 24> header;
  if (!in.read(reinterpret_cast<char*>(header.data()), header.size()))
    throw FormatError(path.string() + ": truncated header (need 24 bytes)");
  if (std::memcmp(header.data(), kMagic, 4) != 0)
    throw FormatError(path.string() + ": bad magic \"" + printable_magic(header.data()) +
                      "\", expected \"AOVS\"");
  const std::uint32_t version = get_u32(header.data() + 4);
  if (version != kVersion)
    throw FormatError(path.string() + ": unsupported version " + std::to_string(version));
  const std::uint64_t rows = get_u64(header.data() + 8);
  const std::uint64_t cols = get_u64(header.data() + 16);

  in.seekg(0, std::ios::end);
  const auto file_size = static_cast<std::uint64_t>(in.tellg());
  const std::uint64_t total = rows * cols;
  if (rows != 0 && total / rows != cols)
    throw FormatError(path.string() + ": rows*cols overflows");
  if (file_size != 24 + 4 * total)
    throw FormatError(path.string() + ": payload is " + std::to_string(file_size - 24) +
                      " bytes, header promises " + std::to_string(4 * total));
  in.seekg(24, std::ios::beg);

  MatrixRM m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::vector<unsigned char> buf(4 * static_cast<std::size_t>(cols));
  for (std::uint64_t r = 0; r < rows; ++r) {
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size())))
      throw FormatError(path.string() + ": truncated payload", r + 1);
    for (std::uint64_t c = 0; c < cols; ++c) {
      const float f = std::bit_cast<float>(get_u32(buf.data() + 4 * c));
      if (!std::isfinite(f))
        throw FormatError(path.string() + ": non-finite entry", r + 1, c + 1);
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = static_cast<double>(f);
    }
  }
  return RawMatrix(std::move(m));
}

void write_f32bin(const RawMatrix& m, const std::filesystem::path& path) {
  std::string out;
  out.reserve(24 + 4 * static_cast<std::size_t>(m.rows() * m.cols()));
  out.append(kMagic, 4);
  put_u32(out, kVersion);
  put_u64(out, static_cast<std::uint64_t>(m.rows()));
  put_u64(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(m.data()(r, c))));
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) throw FormatError("short write to " + path.string());
}

RawMatrix read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<double> values;
  std::uint64_t rows = 0;
  std::int64_t cols = -1;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == EOF) break;  // trailing newline
    std::int64_t col = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string field =
          line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      ++col;
      const char* begin = field.c_str();
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
      if (end == begin || (end && *end != '\0'))
        throw FormatError(path.string() + ": cannot parse \"" + field + "\"", lineno,
                          static_cast<std::uint64_t>(col));
      if (!std::isfinite(v))
        throw FormatError(path.string() + ": non-finite entry", lineno,
                          static_cast<std::uint64_t>(col));
      values.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cols < 0) {
      cols = col;
    } else if (col != cols) {
      throw FormatError(path.string() + ": expected " + std::to_string(cols) +
                            " columns, got " + std::to_string(col),
                        lineno);
    }
    ++rows;
  }
  if (rows == 0) return RawMatrix(MatrixRM(0, 0));
  MatrixRM m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::copy(values.begin(), values.end(), m.data());
  return RawMatrix(std::move(m));
}

void write_csv(const RawMatrix& m, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  char buf[40];
  std::string line;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    line.clear();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) line.push_back(',');
      std::snprintf(buf, sizeof buf, "%.17g", m.data()(r, c));
      line += buf;
    }
    line.push_back('\n');
    os.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
  if (!os) throw FormatError("short write to " + path.string());
}

}  // namespace

Format format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".csv") return Format::csv;
  if (ext == ".f32") return Format::f32bin;
  throw DomainError("cannot infer format from \"" + path.string() +
                    "\" (use .csv or .f32, or pass --format)");
}

RawMatrix read_matrix(const std::filesystem::path& path, Format format) {
  return format == Format::csv ? read_csv(path) : read_f32bin(path);
}

void write_matrix(const RawMatrix& m, const std::filesystem::path& path, Format format) {
  if (format == Format::csv)
    write_csv(m, path);
  else
    write_f32bin(m, path);
}

}  // namespace aovs::vec
