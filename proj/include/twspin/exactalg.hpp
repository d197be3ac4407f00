#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "twspin/arith.hpp"

namespace twspin {

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::initializer_list<std::int64_t> values);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  bool is_diagonal() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
BigInt determinant(const IntMatrix& a);

struct SmithForm {
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix d;  // diagonal, d_1 | d_2 | ..., nonnegative
  IntMatrix v;  // unimodular, cols x cols
};

/// D = U * A * V.
SmithForm smith_normal_form(const IntMatrix& a);

/// Homomorphism prod Z/n_j -> prod Z/m_i sending the j-th generator to column j.
/// Well-definedness (m_i | a_ij * n_j) is checked on construction.
class CyclicHom {
 public:
  CyclicHom(IntMatrix matrix, std::vector<std::int64_t> domain_moduli, std::vector<std::int64_t> codomain_moduli);

  const IntMatrix& matrix() const { return matrix_; }
  const std::vector<std::int64_t>& domain_moduli() const { return domain_; }
  const std::vector<std::int64_t>& codomain_moduli() const { return codomain_; }

  BigInt domain_size() const;
  BigInt codomain_size() const;

  /// h(x), reduced into [0, m_i).
  std::vector<std::int64_t> apply(std::span<const std::int64_t> x) const;

 private:
  IntMatrix matrix_;
  std::vector<std::int64_t> domain_;
  std::vector<std::int64_t> codomain_;
};

inline constexpr std::int64_t kKernelEnumerationThreshold = 1'000'000;

/// |ker h|: exhaustive enumeration when the domain has at most `threshold`
/// elements, Smith-form reduction of the relation lattice otherwise.
BigInt hom_kernel_size(const CyclicHom& h, std::int64_t threshold = kKernelEnumerationThreshold);
BigInt hom_kernel_size_enumerate(const CyclicHom& h);
BigInt hom_kernel_size_smith(const CyclicHom& h);

/// Some x with h(x) = t, or nullopt when t is outside the image.
std::optional<std::vector<std::int64_t>> hom_image_contains(const CyclicHom& h, std::span<const std::int64_t> t);

struct CongruenceSolution {
  std::int64_t x0;    // 0 <= x0 < step
  std::int64_t step;  // n / gcd(a, n)
};

/// Solutions of a*x == b (mod n), n >= 1.
std::optional<CongruenceSolution> solve_congruence(std::int64_t a, std::int64_t b, std::int64_t n);

}  // namespace twspin
