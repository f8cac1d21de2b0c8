#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <regex>
#include <sstream>

#include "rdi/ingest.hpp"

namespace rdi {
namespace {

static_assert(std::endian::native == std::endian::little,
              "NPY payloads are read in place as little-endian");

constexpr std::array<unsigned char, 6> kMagic = {0x93, 'N', 'U', 'M', 'P', 'Y'};

struct NpyHeader {
  std::string descr;
  bool fortran_order = false;
  std::vector<std::int64_t> shape;
  std::size_t data_offset = 0;
};

std::vector<char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

[[noreturn]] void format_error(const std::filesystem::path& path, std::size_t offset,
                               const std::string& what) {
  throw FormatError(path.string() + ": byte " + std::to_string(offset) + ": " + what);
}

std::uint32_t read_le(const std::vector<char>& buf, std::size_t at, std::size_t width) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < width; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[at + i])) << (8 * i);
  }
  return v;
}

NpyHeader parse_header(const std::filesystem::path& path, const std::vector<char>& buf) {
  if (buf.size() < 10 || std::memcmp(buf.data(), kMagic.data(), kMagic.size()) != 0) {
    format_error(path, 0, "missing NPY magic string");
  }
  const int major = static_cast<unsigned char>(buf[6]);
  std::size_t len_width = 0;
  if (major == 1) {
    len_width = 2;
  } else if (major == 2) {
    len_width = 4;
  } else {
    format_error(path, 6, "unsupported NPY version " + std::to_string(major));
  }
  const std::size_t dict_start = 8 + len_width;
  if (buf.size() < dict_start) format_error(path, 8, "truncated header length");
  const std::size_t header_len = read_le(buf, 8, len_width);
  if (buf.size() < dict_start + header_len) {
    format_error(path, buf.size(), "truncated header dictionary");
  }
  const std::string dict(buf.data() + dict_start, header_len);

  NpyHeader h;
  h.data_offset = dict_start + header_len;

  static const std::regex descr_re(R"('descr'\s*:\s*'([^']*)')");
  static const std::regex order_re(R"('fortran_order'\s*:\s*(True|False))");
  static const std::regex shape_re(R"('shape'\s*:\s*\(([^)]*)\))");
  std::smatch m;
  if (!std::regex_search(dict, m, descr_re)) format_error(path, dict_start, "header has no 'descr'");
  h.descr = m[1];
  if (!std::regex_search(dict, m, order_re)) {
    format_error(path, dict_start, "header has no 'fortran_order'");
  }
  h.fortran_order = m[1] == "True";
  if (!std::regex_search(dict, m, shape_re)) format_error(path, dict_start, "header has no 'shape'");
  std::stringstream dims(m[1]);
  std::string item;
  while (std::getline(dims, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    try {
      h.shape.push_back(std::stoll(item.substr(first)));
    } catch (const std::exception&) {
      format_error(path, dict_start, "bad shape entry '" + item + "'");
    }
  }
  if (h.fortran_order) format_error(path, dict_start, "fortran_order True is not supported");
  return h;
}

std::size_t dtype_width(const std::filesystem::path& path, const NpyHeader& h,
                        const char* kind) {
  for (const char* w : {"4", "8"}) {
    if (h.descr == std::string("<") + kind + w) return static_cast<std::size_t>(*w - '0');
  }
  format_error(path, 8, "unsupported dtype '" + h.descr + "'");
}

void check_payload(const std::filesystem::path& path, const std::vector<char>& buf,
                   const NpyHeader& h, std::size_t count, std::size_t width) {
  const std::size_t need = h.data_offset + count * width;
  if (buf.size() < need) {
    format_error(path, buf.size(),
                 "truncated payload: expected " + std::to_string(need) + " bytes");
  }
}

template <typename T>
T load_at(const std::vector<char>& buf, std::size_t at) {
  T v;
  std::memcpy(&v, buf.data() + at, sizeof(T));
  return v;
}

std::string shape_string(const std::vector<std::int64_t>& shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    s += std::to_string(shape[i]);
    s += (shape.size() == 1 || i + 1 < shape.size()) ? "," : "";
    if (i + 1 < shape.size()) s += " ";
  }
  return s + ")";
}

void write_npy(const std::filesystem::path& path, const std::string& descr,
               const std::vector<std::int64_t>& shape, const char* data, std::size_t bytes) {
  std::string dict = "{'descr': '" + descr + "', 'fortran_order': False, 'shape': " +
                     shape_string(shape) + ", }";
  // Magic + version + 2-byte length + dict + '\n' is padded to a multiple of 64.
  const std::size_t unpadded = 10 + dict.size() + 1;
  dict.append((64 - unpadded % 64) % 64, ' ');
  dict.push_back('\n');

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(kMagic.data()), kMagic.size());
  const char version[2] = {1, 0};
  out.write(version, 2);
  const auto len = static_cast<std::uint16_t>(dict.size());
  const char len_bytes[2] = {static_cast<char>(len & 0xff), static_cast<char>(len >> 8)};
  out.write(len_bytes, 2);
  out.write(dict.data(), static_cast<std::streamsize>(dict.size()));
  out.write(data, static_cast<std::streamsize>(bytes));
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

RowMatrix<double> load_npy_matrix(const std::filesystem::path& path) {
  const auto buf = read_file(path);
  const auto h = parse_header(path, buf);
  const std::size_t width = dtype_width(path, h, "f");
  if (h.shape.size() != 2) {
    format_error(path, 8, "expected a 2-D array, got shape " + shape_string(h.shape));
  }
  if (h.shape[0] < 1) throw InvalidInput(path.string() + ": feature matrix has no rows");
  if (h.shape[1] < 1) throw InvalidInput(path.string() + ": feature matrix has no columns");
  const auto rows = static_cast<Eigen::Index>(h.shape[0]);
  const auto cols = static_cast<Eigen::Index>(h.shape[1]);
  check_payload(path, buf, h, static_cast<std::size_t>(rows * cols), width);

  RowMatrix<double> m(rows, cols);
  std::size_t at = h.data_offset;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c, at += width) {
      const double v = width == 4 ? static_cast<double>(load_at<float>(buf, at))
                                  : load_at<double>(buf, at);
      if (!std::isfinite(v)) {
        throw InvalidInput(path.string() + ": non-finite value at row " + std::to_string(r) +
                           ", column " + std::to_string(c));
      }
      m(r, c) = v;
    }
  }
  return m;
}

LabelSet load_npy_labels(const std::filesystem::path& path) {
  const auto buf = read_file(path);
  const auto h = parse_header(path, buf);
  if (h.descr.size() != 3 || h.descr[1] != 'i') {
    throw InvalidInput(path.string() + ": labels must have an integer dtype, got '" + h.descr +
                       "'");
  }
  const std::size_t width = dtype_width(path, h, "i");
  if (h.shape.size() != 1) {
    format_error(path, 8, "expected a 1-D array, got shape " + shape_string(h.shape));
  }
  if (h.shape[0] < 1) throw InvalidInput(path.string() + ": label array is empty");
  const auto n = static_cast<std::size_t>(h.shape[0]);
  check_payload(path, buf, h, n, width);

  std::vector<std::int64_t> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    raw[i] = width == 4 ? load_at<std::int32_t>(buf, h.data_offset + i * 4)
                        : load_at<std::int64_t>(buf, h.data_offset + i * 8);
  }
  std::vector<int> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i] < 0) {
      throw InvalidInput(path.string() + ": negative label " + std::to_string(raw[i]) +
                         " at index " + std::to_string(i));
    }
    if (raw[i] > std::numeric_limits<int>::max() - 1) {
      throw InvalidInput(path.string() + ": label out of range at index " + std::to_string(i));
    }
    labels.push_back(static_cast<int>(raw[i]));
  }
  return summarize_labels(std::move(labels));
}

void write_npy_matrix(const std::filesystem::path& path, const RowMatrix<double>& m) {
  write_npy(path, "<f8", {m.rows(), m.cols()}, reinterpret_cast<const char*>(m.data()),
            static_cast<std::size_t>(m.size()) * sizeof(double));
}

void write_npy_matrix(const std::filesystem::path& path, const RowMatrix<float>& m) {
  write_npy(path, "<f4", {m.rows(), m.cols()}, reinterpret_cast<const char*>(m.data()),
            static_cast<std::size_t>(m.size()) * sizeof(float));
}

void write_npy_labels(const std::filesystem::path& path, const std::vector<int>& labels) {
  const std::vector<std::int64_t> wide(labels.begin(), labels.end());
  write_npy(path, "<i8", {static_cast<std::int64_t>(labels.size())},
            reinterpret_cast<const char*>(wide.data()), wide.size() * sizeof(std::int64_t));
}

}  // namespace rdi
