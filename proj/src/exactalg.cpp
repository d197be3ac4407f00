#include "twspin/exactalg.hpp"

#include <string>
#include <utility>

#include "twspin/errors.hpp"

namespace twspin {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::initializer_list<std::int64_t> values)
    : IntMatrix(rows, cols) {
  if (values.size() != rows * cols) throw Error(ErrorKind::DimensionMismatch, "initializer size mismatch");
  std::size_t i = 0;
  for (auto v : values) data_[i++] = v;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const BigInt& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i != j && (*this)(i, j) != 0) return false;
    }
  }
  return true;
}

BigInt determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix a = input;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

struct SmithWork {
  IntMatrix& d;
  IntMatrix& u;
  IntMatrix& v;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < d.cols(); ++j) std::swap(d(a, j), d(b, j));
    for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u(a, j), u(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < d.rows(); ++i) std::swap(d(i, a), d(i, b));
    for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v(i, a), v(i, b));
  }
  // row_dst += q * row_src
  void add_row(std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t j = 0; j < d.cols(); ++j) d(dst, j) += q * d(src, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(dst, j) += q * u(src, j);
  }
  // col_dst += q * col_src
  void add_col(std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t i = 0; i < d.rows(); ++i) d(i, dst) += q * d(i, src);
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, dst) += q * v(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < d.cols(); ++j) d(r, j) = -d(r, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(r, j) = -u(r, j);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  SmithForm out{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
  SmithWork w{out.d, out.u, out.v};
  const std::size_t m = a.rows(), n = a.cols();
  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = k, pj = k;
      BigInt best;
      for (std::size_t i = k; i < m; ++i) {
        for (std::size_t j = k; j < n; ++j) {
          const BigInt& x = out.d(i, j);
          if (x == 0) continue;
          BigInt ax = abs(x);
          if (!found || ax < best) {
            found = true;
            best = ax;
            pi = i;
            pj = j;
          }
        }
      }
      if (!found) return out;
      w.swap_rows(k, pi);
      w.swap_cols(k, pj);

      bool clean = true;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (out.d(i, k) == 0) continue;
        BigInt q = out.d(i, k) / out.d(k, k);
        if (q != 0) w.add_row(i, k, -q);
        if (out.d(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (out.d(k, j) == 0) continue;
        BigInt q = out.d(k, j) / out.d(k, k);
        if (q != 0) w.add_col(j, k, -q);
        if (out.d(k, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = k + 1; i < m && divides; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          if (out.d(i, j) % out.d(k, k) != 0) {
            w.add_row(k, i, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (out.d(k, k) < 0) w.negate_row(k);
  }
  return out;
}

CyclicHom::CyclicHom(IntMatrix matrix, std::vector<std::int64_t> domain_moduli,
                     std::vector<std::int64_t> codomain_moduli)
    : matrix_(std::move(matrix)), domain_(std::move(domain_moduli)), codomain_(std::move(codomain_moduli)) {
  if (matrix_.rows() != codomain_.size() || matrix_.cols() != domain_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix shape does not match the moduli");
  }
  for (auto n : domain_) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "domain modulus < 1");
  }
  for (auto m : codomain_) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "codomain modulus < 1");
  }
  for (std::size_t i = 0; i < codomain_.size(); ++i) {
    for (std::size_t j = 0; j < domain_.size(); ++j) {
      if ((matrix_(i, j) * domain_[j]) % codomain_[i] != 0) {
        throw Error(ErrorKind::IllDefinedHom, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                  ") does not define a map Z/" + std::to_string(domain_[j]) +
                                                  " -> Z/" + std::to_string(codomain_[i]));
      }
    }
  }
}

BigInt CyclicHom::domain_size() const {
  BigInt s = 1;
  for (auto n : domain_) s *= n;
  return s;
}

BigInt CyclicHom::codomain_size() const {
  BigInt s = 1;
  for (auto m : codomain_) s *= m;
  return s;
}

std::vector<std::int64_t> CyclicHom::apply(std::span<const std::int64_t> x) const {
  if (x.size() != domain_.size()) throw Error(ErrorKind::DimensionMismatch, "argument length mismatch");
  std::vector<std::int64_t> y(codomain_.size());
  for (std::size_t i = 0; i < codomain_.size(); ++i) {
    BigInt acc = 0;
    for (std::size_t j = 0; j < domain_.size(); ++j) acc += matrix_(i, j) * x[j];
    acc %= codomain_[i];
    if (acc < 0) acc += codomain_[i];
    y[i] = acc.convert_to<std::int64_t>();
  }
  return y;
}

BigInt hom_kernel_size_enumerate(const CyclicHom& h) {
  const auto& dom = h.domain_moduli();
  const auto& cod = h.codomain_moduli();
  if (h.domain_size() > BigInt(std::numeric_limits<std::int64_t>::max() / 2)) {
    throw Error(ErrorKind::DomainTooLarge, "domain too large to enumerate");
  }
  // Columns reduced into [0, m_i).
  std::vector<std::vector<std::int64_t>> col(dom.size(), std::vector<std::int64_t>(cod.size()));
  for (std::size_t j = 0; j < dom.size(); ++j) {
    for (std::size_t i = 0; i < cod.size(); ++i) {
      BigInt r = h.matrix()(i, j) % cod[i];
      if (r < 0) r += cod[i];
      col[j][i] = r.convert_to<std::int64_t>();
    }
  }
  // Odometer: incrementing x_j adds column j; a wrap of x_j back to 0 needs no
  // correction because n_j * column_j == 0 by well-definedness.
  std::vector<std::int64_t> x(dom.size(), 0), y(cod.size(), 0);
  std::size_t nonzero = 0;
  std::int64_t count = 0;
  while (true) {
    if (nonzero == 0) ++count;
    std::size_t j = 0;
    for (; j < dom.size(); ++j) {
      for (std::size_t i = 0; i < cod.size(); ++i) {
        if (col[j][i] == 0) continue;
        bool was_zero = y[i] == 0;
        y[i] += col[j][i];
        if (y[i] >= cod[i]) y[i] -= cod[i];
        bool is_zero = y[i] == 0;
        if (was_zero && !is_zero) ++nonzero;
        if (!was_zero && is_zero) --nonzero;
      }
      if (++x[j] < dom[j]) break;
      x[j] = 0;
    }
    if (j == dom.size()) break;
  }
  return count;
}

namespace {

// [A | diag(m)] with A reduced modulo the codomain.
IntMatrix relation_matrix(const CyclicHom& h) {
  const auto& dom = h.domain_moduli();
  const auto& cod = h.codomain_moduli();
  IntMatrix b(cod.size(), dom.size() + cod.size());
  for (std::size_t i = 0; i < cod.size(); ++i) {
    for (std::size_t j = 0; j < dom.size(); ++j) {
      BigInt r = h.matrix()(i, j) % cod[i];
      if (r < 0) r += cod[i];
      b(i, j) = r;
    }
    b(i, dom.size() + i) = cod[i];
  }
  return b;
}

}  // namespace

BigInt hom_kernel_size_smith(const CyclicHom& h) {
  const auto& cod = h.codomain_moduli();
  if (cod.empty()) return h.domain_size();
  auto snf = smith_normal_form(relation_matrix(h));
  // The relation matrix has full row rank, so coker = prod Z/d_k and
  // |image| = prod m_i / prod d_k.
  BigInt coker = 1;
  for (std::size_t k = 0; k < cod.size(); ++k) coker *= snf.d(k, k);
  return h.domain_size() * coker / h.codomain_size();
}

BigInt hom_kernel_size(const CyclicHom& h, std::int64_t threshold) {
  if (h.domain_size() <= threshold) return hom_kernel_size_enumerate(h);
  return hom_kernel_size_smith(h);
}

std::optional<std::vector<std::int64_t>> hom_image_contains(const CyclicHom& h, std::span<const std::int64_t> t) {
  const auto& dom = h.domain_moduli();
  const auto& cod = h.codomain_moduli();
  if (t.size() != cod.size()) throw Error(ErrorKind::DimensionMismatch, "target length does not match codomain");
  if (cod.empty()) return std::vector<std::int64_t>(dom.size(), 0);

  auto snf = smith_normal_form(relation_matrix(h));
  const std::size_t ncols = dom.size() + cod.size();
  // Solve D y = U t, then z = V y.
  std::vector<BigInt> y(ncols, 0);
  for (std::size_t k = 0; k < cod.size(); ++k) {
    BigInt wk = 0;
    for (std::size_t i = 0; i < cod.size(); ++i) wk += snf.u(k, i) * t[i];
    const BigInt& dk = snf.d(k, k);
    if (wk % dk != 0) return std::nullopt;
    y[k] = wk / dk;
  }
  std::vector<std::int64_t> x(dom.size());
  for (std::size_t j = 0; j < dom.size(); ++j) {
    BigInt z = 0;
    for (std::size_t k = 0; k < ncols; ++k) z += snf.v(j, k) * y[k];
    z %= dom[j];
    if (z < 0) z += dom[j];
    x[j] = z.convert_to<std::int64_t>();
  }
  auto check = h.apply(x);
  for (std::size_t i = 0; i < cod.size(); ++i) {
    if (check[i] != mod_floor(t[i], cod[i])) throw Error(ErrorKind::Internal, "image witness failed verification");
  }
  return x;
}

std::optional<CongruenceSolution> solve_congruence(std::int64_t a, std::int64_t b, std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "modulus must be >= 1");
  const std::int64_t ar = mod_floor(a, n);
  const std::int64_t br = mod_floor(b, n);
  auto eg = extended_gcd(ar, n);
  const std::int64_t g = eg.g == 0 ? n : eg.g;
  if (br % g != 0) return std::nullopt;
  const std::int64_t step = n / g;
  // ar * s == g (mod n), so x = s * (b/g) solves it modulo step.
  __int128 x = static_cast<__int128>(mod_floor(eg.x, step)) * (br / g);
  x %= step;
  return CongruenceSolution{static_cast<std::int64_t>(x), step};
}

}  // namespace twspin
