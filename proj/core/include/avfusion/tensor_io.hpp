#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace avf {

// FVT1 layout: "FVT1", u32 rank, rank x u32 dims, prod(dims) x f32 values.
// All integers and floats little-endian, no padding.

struct Tensor {
  std::vector<std::uint32_t> dims;
  std::vector<double> values;

  std::size_t rank() const noexcept { return dims.size(); }
  std::size_t element_count() const noexcept;
};

/// Values are narrowed to f32 on disk; a finite double that overflows f32
/// is rejected with kNonFinite. Throws kLengthMismatch when the dims product
/// differs from values.size(), kIo on write failure.
void write_tensor(const std::filesystem::path& path, std::span<const std::uint32_t> dims,
                  std::span<const double> values);

/// Throws kBadMagic, kTruncated, kMalformed (trailing bytes) or kIo.
Tensor read_tensor(const std::filesystem::path& path);

// In-memory forms of the same encoding.
std::vector<std::uint8_t> encode_tensor(std::span<const std::uint32_t> dims,
                                        std::span<const double> values);
Tensor decode_tensor(std::span<const std::uint8_t> bytes);

// Eigen helpers. Matrices are stored row-major as [rows, cols].
void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m);
void write_vector(const std::filesystem::path& path, const Eigen::VectorXd& v);
/// Rank-2 tensor -> matrix; a rank-1 tensor is read as a single row.
Eigen::MatrixXd tensor_to_matrix(const Tensor& t);
/// Rank-1 tensor -> vector; throws kShapeMismatch otherwise.
Eigen::VectorXd tensor_to_vector(const Tensor& t);

}  // namespace avf
