#include "avfusion/tensor_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "avfusion/error.hpp"

namespace avf {
namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'F', 'V', 'T', '1'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{bytes[offset + i]} << (8 * i);
  return v;
}

std::size_t dims_product(std::span<const std::uint32_t> dims) {
  std::size_t n = 1;
  for (std::uint32_t d : dims) n *= d;
  return n;
}

}  // namespace

std::size_t Tensor::element_count() const noexcept { return dims_product(dims); }

std::vector<std::uint8_t> encode_tensor(std::span<const std::uint32_t> dims,
                                        std::span<const double> values) {
  const std::size_t n = dims_product(dims);
  if (n != values.size()) {
    throw Error(ErrorCode::kLengthMismatch, "dims product " + std::to_string(n) +
                                                " != value count " +
                                                std::to_string(values.size()));
  }
  std::vector<std::uint8_t> out;
  out.reserve(8 + 4 * dims.size() + 4 * n);
  for (std::uint8_t b : kMagic) out.push_back(b);
  put_u32(out, static_cast<std::uint32_t>(dims.size()));
  for (std::uint32_t d : dims) put_u32(out, d);
  for (double v : values) {
    const auto f = static_cast<float>(v);
    if (!std::isfinite(v) || !std::isfinite(f)) {
      throw Error(ErrorCode::kNonFinite, "tensor value " + std::to_string(v));
    }
    put_u32(out, std::bit_cast<std::uint32_t>(f));
  }
  return out;
}

Tensor decode_tensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw Error(ErrorCode::kTruncated, "missing magic");
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw Error(ErrorCode::kBadMagic, "expected FVT1");
  }
  if (bytes.size() < 8) throw Error(ErrorCode::kTruncated, "missing rank");
  const std::uint32_t rank = get_u32(bytes, 4);
  std::size_t offset = 8;
  if (bytes.size() < offset + std::size_t{4} * rank) {
    throw Error(ErrorCode::kTruncated, "dims cut short");
  }
  Tensor t;
  t.dims.reserve(rank);
  for (std::uint32_t i = 0; i < rank; ++i, offset += 4) t.dims.push_back(get_u32(bytes, offset));

  const std::size_t n = t.element_count();
  const std::size_t remaining = bytes.size() - offset;
  if (remaining / 4 < n) {
    throw Error(ErrorCode::kTruncated, "payload has " + std::to_string(remaining) +
                                           " bytes, need " + std::to_string(4 * n));
  }
  if (remaining != 4 * n) throw Error(ErrorCode::kMalformed, "trailing bytes after payload");
  t.values.resize(n);
  for (std::size_t i = 0; i < n; ++i, offset += 4) {
    t.values[i] = std::bit_cast<float>(get_u32(bytes, offset));
  }
  return t;
}

void write_tensor(const std::filesystem::path& path, std::span<const std::uint32_t> dims,
                  std::span<const double> values) {
  const auto bytes = encode_tensor(dims, values);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

Tensor read_tensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                  std::istreambuf_iterator<char>()};
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + path.string());
  return decode_tensor(bytes);
}

void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  const std::array<std::uint32_t, 2> dims = {static_cast<std::uint32_t>(m.rows()),
                                             static_cast<std::uint32_t>(m.cols())};
  std::vector<double> values(static_cast<std::size_t>(m.size()));
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      values.data(), m.rows(), m.cols()) = m;
  write_tensor(path, dims, values);
}

void write_vector(const std::filesystem::path& path, const Eigen::VectorXd& v) {
  const std::array<std::uint32_t, 1> dims = {static_cast<std::uint32_t>(v.size())};
  write_tensor(path, dims, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

Eigen::MatrixXd tensor_to_matrix(const Tensor& t) {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  if (t.rank() == 2) {
    rows = t.dims[0];
    cols = t.dims[1];
  } else if (t.rank() == 1) {
    rows = 1;
    cols = t.dims[0];
  } else {
    throw Error(ErrorCode::kShapeMismatch, "expected rank 1 or 2, got " + std::to_string(t.rank()));
  }
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      t.values.data(), rows, cols);
}

Eigen::VectorXd tensor_to_vector(const Tensor& t) {
  if (t.rank() != 1) {
    throw Error(ErrorCode::kShapeMismatch, "expected rank 1, got " + std::to_string(t.rank()));
  }
  return Eigen::Map<const Eigen::VectorXd>(t.values.data(), static_cast<Eigen::Index>(t.dims[0]));
}

}  // namespace avf
