#pragma once

// Small dense symmetric matrices: cyclic Jacobi eigensolver, spectral
// functions, the three nu-weighted operator means and the Loewner order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "random.hpp"

namespace youngref {

inline constexpr std::size_t max_matrix_dim = 64;

/// Square dense matrix, row-major. No structural invariant.
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}
  Matrix(std::size_t dim, std::vector<double> data) : dim_(dim), data_(std::move(data)) {
    if (data_.size() != dim_ * dim_) {
      throw InputError("Matrix: expected " + std::to_string(dim_ * dim_) + " entries, got " +
                       std::to_string(data_.size()));
    }
  }

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      m(i, i) = 1.0;
    }
    return m;
  }

  static Matrix diagonal(std::span<const double> d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      m(i, i) = d[i];
    }
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }
  std::span<const double> data() const noexcept { return data_; }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) {
      m = std::max(m, std::abs(v));
    }
    return m;
  }

  double frobenius() const noexcept {
    double s = 0.0;
    for (double v : data_) {
      s += v * v;
    }
    return std::sqrt(s);
  }

  Matrix transposed() const {
    Matrix t(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        t(j, i) = (*this)(i, j);
      }
    }
    return t;
  }

  /// (X + X^T) / 2
  Matrix symmetrized() const {
    Matrix s(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      s(i, i) = (*this)(i, i);
      for (std::size_t j = i + 1; j < dim_; ++j) {
        const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
        s(i, j) = v;
        s(j, i) = v;
      }
    }
    return s;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) {
      data_[k] += o.data_[k];
    }
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) {
      data_[k] -= o.data_[k];
    }
    return *this;
  }
  Matrix& operator*=(double s) noexcept {
    for (double& v : data_) {
      v *= s;
    }
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    const std::size_t n = a.dim_;
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const double aik = a(i, k);
        for (std::size_t j = 0; j < n; ++j) {
          c(i, j) += aik * b(k, j);
        }
      }
    }
    return c;
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  void check_same(const Matrix& o) const {
    if (o.dim_ != dim_) {
      throw InputError("matrix dimension mismatch: " + std::to_string(dim_) + " vs " +
                       std::to_string(o.dim_));
    }
  }

  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// max_ij |x_ij - y_ij|
inline double max_abs_diff(const Matrix& x, const Matrix& y) { return (x - y).max_abs(); }

/// A square matrix that is symmetric to within 1e-12 (1 + max|entry|).
/// Entries are stored as given.
class SymMatrix {
public:
  explicit SymMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.dim() == 0) {
      throw InputError("SymMatrix: dimension must be positive");
    }
    for (double v : m_.data()) {
      if (!std::isfinite(v)) {
        throw InputError("SymMatrix: entries must be finite");
      }
    }
    const double tol = 1e-12 * (1.0 + m_.max_abs());
    for (std::size_t i = 0; i < m_.dim(); ++i) {
      for (std::size_t j = i + 1; j < m_.dim(); ++j) {
        if (std::abs(m_(i, j) - m_(j, i)) > tol) {
          throw InputError("SymMatrix: matrix is not symmetric at (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");
        }
      }
    }
  }
  SymMatrix(std::size_t dim, std::vector<double> row_major)
      : SymMatrix(Matrix(dim, std::move(row_major))) {}

  std::size_t dim() const noexcept { return m_.dim(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

private:
  Matrix m_;
};

/// Q orthogonal, lambda ascending, A = Q diag(lambda) Q^T. Eigenvectors are
/// the columns of Q.
struct SpectralDecomposition {
  Matrix q;
  std::vector<double> lambda;

  /// Q diag(f(lambda_i)) Q^T
  template <class F>
  Matrix apply(F&& f) const {
    const std::size_t n = q.dim();
    std::vector<double> fl(n);
    for (std::size_t k = 0; k < n; ++k) {
      fl[k] = f(lambda[k]);
    }
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          s += q(i, k) * fl[k] * q(j, k);
        }
        out(i, j) = s;
        out(j, i) = s;
      }
    }
    return out;
  }

  Matrix reconstruct() const {
    return apply([](double l) { return l; });
  }
};

namespace jacobi {
inline constexpr double convergence = 1e-14; ///< off-diagonal / Frobenius norm
inline constexpr int max_sweeps = 100;
} // namespace jacobi

/// Cyclic Jacobi eigendecomposition.
///
/// Sweeps rotate every (p, q) pair in row order until the off-diagonal
/// Frobenius norm falls below 1e-14 ||A||_F. Throws NumericError after 100
/// sweeps.
inline SpectralDecomposition sym_eigen(const SymMatrix& s) {
  const std::size_t n = s.dim();
  if (n > max_matrix_dim) {
    throw InputError("sym_eigen: dimension " + std::to_string(n) + " exceeds cap " +
                     std::to_string(max_matrix_dim));
  }
  Matrix a = s.matrix().symmetrized();
  Matrix v = Matrix::identity(n);

  auto off_norm = [&] {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        off += a(i, j) * a(i, j);
      }
    }
    return std::sqrt(2.0 * off);
  };

  const double target = jacobi::convergence * a.frobenius();
  int sweep = 0;
  for (double off = off_norm(); off > target; off = off_norm()) {
    if (sweep++ == jacobi::max_sweeps) {
      throw NumericError("sym_eigen: no convergence after " + std::to_string(jacobi::max_sweeps) +
                         " sweeps, off-diagonal norm " + std::to_string(off));
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) {
          continue;
        }
        // Rutishauser's stable choice of the smaller rotation angle.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        const double tau = sn / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) {
            continue;
          }
          const double akp = a(k, p);
          const double akq = a(k, q);
          const double nkp = akp - sn * (akq + tau * akp);
          const double nkq = akq + sn * (akp - tau * akq);
          a(k, p) = nkp;
          a(p, k) = nkp;
          a(k, q) = nkq;
          a(q, k) = nkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = vkp - sn * (vkq + tau * vkp);
          v(k, q) = vkq + sn * (vkp - tau * vkq);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SpectralDecomposition d{Matrix(n), std::vector<double>(n)};
  for (std::size_t c = 0; c < n; ++c) {
    d.lambda[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) {
      d.q(r, c) = v(r, order[c]);
    }
  }
  return d;
}

inline SpectralDecomposition sym_eigen(const Matrix& m) { return sym_eigen(SymMatrix(m)); }

/// Symmetric positive definite matrix with its cached eigensystem.
///
/// Construction re-symmetrizes the input as (X + X^T)/2 and rejects it unless
/// the smallest eigenvalue exceeds 1e-13 times the largest.
class SpdMatrix {
public:
  explicit SpdMatrix(const Matrix& m) : s_(m.symmetrized()), eig_(sym_eigen(s_)) { validate(); }
  explicit SpdMatrix(const SymMatrix& s) : SpdMatrix(s.matrix()) {}
  SpdMatrix(std::size_t dim, std::vector<double> row_major)
      : SpdMatrix(Matrix(dim, std::move(row_major))) {}

  static SpdMatrix identity(std::size_t dim) { return SpdMatrix(Matrix::identity(dim)); }
  static SpdMatrix diagonal(std::span<const double> d) { return SpdMatrix(Matrix::diagonal(d)); }

  std::size_t dim() const noexcept { return s_.dim(); }
  const SymMatrix& sym() const noexcept { return s_; }
  const Matrix& matrix() const noexcept { return s_.matrix(); }
  const SpectralDecomposition& eigen() const noexcept { return eig_; }
  double min_eigenvalue() const noexcept { return eig_.lambda.front(); }
  double max_eigenvalue() const noexcept { return eig_.lambda.back(); }

  operator const SymMatrix&() const noexcept { return s_; }

private:
  void validate() const {
    const double lo = eig_.lambda.front();
    const double hi = eig_.lambda.back();
    if (!(lo > 0.0) || !(lo > 1e-13 * hi)) {
      throw DomainError("SpdMatrix: matrix is not positive definite (eigenvalues in [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "])");
    }
  }

  SymMatrix s_;
  SpectralDecomposition eig_;
};

/// Q diag(lambda_i^p) Q^T. p = 0 and p = 1 return I and A exactly.
inline SpdMatrix matrix_power(const SpdMatrix& a, double p) {
  if (!std::isfinite(p)) {
    throw DomainError("matrix_power: exponent must be finite");
  }
  if (p == 0.0) {
    return SpdMatrix::identity(a.dim());
  }
  if (p == 1.0) {
    return a;
  }
  return SpdMatrix(a.eigen().apply([p](double l) { return std::pow(l, p); }));
}

inline SpdMatrix inverse(const SpdMatrix& a) { return matrix_power(a, -1.0); }

namespace detail {

inline void check_mean_args(const SpdMatrix& a, const SpdMatrix& b, double nu, const char* who) {
  if (a.dim() != b.dim()) {
    throw InputError(std::string(who) + ": dimension mismatch " + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()));
  }
  if (!(nu >= 0.0 && nu <= 1.0)) {
    throw DomainError(std::string(who) + ": nu must lie in [0, 1]");
  }
}

} // namespace detail

/// A #_nu B = A^{1/2} (A^{-1/2} B A^{-1/2})^nu A^{1/2}
inline SpdMatrix power_mean(const SpdMatrix& a, const SpdMatrix& b, double nu) {
  detail::check_mean_args(a, b, nu, "power_mean");
  if (nu == 0.0) {
    return a;
  }
  if (nu == 1.0) {
    return b;
  }
  const Matrix half = a.eigen().apply([](double l) { return std::sqrt(l); });
  const Matrix inv_half = a.eigen().apply([](double l) { return 1.0 / std::sqrt(l); });
  const SpdMatrix x(inv_half * b.matrix() * inv_half);
  const Matrix xnu = x.eigen().apply([nu](double l) { return std::pow(l, nu); });
  return SpdMatrix(half * xnu * half);
}

/// (1 - nu) A + nu B
inline SpdMatrix weighted_arith(const SpdMatrix& a, const SpdMatrix& b, double nu) {
  detail::check_mean_args(a, b, nu, "weighted_arith");
  return SpdMatrix((1.0 - nu) * a.matrix() + nu * b.matrix());
}

/// ((1 - nu) A^{-1} + nu B^{-1})^{-1}
inline SpdMatrix weighted_harm(const SpdMatrix& a, const SpdMatrix& b, double nu) {
  detail::check_mean_args(a, b, nu, "weighted_harm");
  const SpdMatrix s((1.0 - nu) * inverse(a).matrix() + nu * inverse(b).matrix());
  return inverse(s);
}

struct LoewnerResult {
  bool holds;
  double min_eig_gap; ///< smallest eigenvalue of sym(x - y)
};

/// Loewner order check x >= y:
/// holds <=> lambda_min(sym(x - y)) >= -tol (1 + ||x||_max + ||y||_max).
inline LoewnerResult loewner_geq(const Matrix& x, const Matrix& y, double tol) {
  if (x.dim() != y.dim()) {
    throw InputError("loewner_geq: dimension mismatch");
  }
  const Matrix diff = (x - y).symmetrized();
  const double gap = sym_eigen(SymMatrix(diff)).lambda.front();
  const double slack = tol * (1.0 + x.max_abs() + y.max_abs());
  return {gap >= -slack, gap};
}

inline LoewnerResult loewner_geq(const SymMatrix& x, const SymMatrix& y, double tol) {
  return loewner_geq(x.matrix(), y.matrix(), tol);
}

enum class SeparationCondition {
  AUnderB, ///< m' I <= A <= m I < M I <= B <= M' I
  BUnderA, ///< the same with A and B exchanged
};

/// Spectral bounds m' <= m < M <= M' of a separated pair, h = M/m, h' = M'/m'.
struct SpectralBounds {
  double m_prime;
  double m;
  double big_m;
  double big_m_prime;
  double h;
  double h_prime;
  SeparationCondition condition;

  static SpectralBounds make(double m_prime, double m, double big_m, double big_m_prime,
                             SeparationCondition c) {
    if (!(m_prime > 0.0 && m_prime <= m && m < big_m && big_m <= big_m_prime) ||
        !std::isfinite(big_m_prime)) {
      throw InputError("SpectralBounds: require 0 < m' <= m < M <= M'");
    }
    return {m_prime, m, big_m, big_m_prime, big_m / m, big_m_prime / m_prime, c};
  }
};

/// Tightest admissible bounds for a spectrally separated pair. Throws
/// ConditionError when the spectra overlap or touch.
inline SpectralBounds spectral_bounds_from(const SpdMatrix& a, const SpdMatrix& b) {
  if (a.dim() != b.dim()) {
    throw InputError("spectral_bounds_from: dimension mismatch");
  }
  if (a.max_eigenvalue() < b.min_eigenvalue()) {
    return SpectralBounds::make(a.min_eigenvalue(), a.max_eigenvalue(), b.min_eigenvalue(),
                                b.max_eigenvalue(), SeparationCondition::AUnderB);
  }
  if (b.max_eigenvalue() < a.min_eigenvalue()) {
    return SpectralBounds::make(b.min_eigenvalue(), b.max_eigenvalue(), a.min_eigenvalue(),
                                a.max_eigenvalue(), SeparationCondition::BUnderA);
  }
  throw ConditionError("conditions not satisfied: spectra overlap (A in [" +
                       std::to_string(a.min_eigenvalue()) + ", " +
                       std::to_string(a.max_eigenvalue()) + "], B in [" +
                       std::to_string(b.min_eigenvalue()) + ", " +
                       std::to_string(b.max_eigenvalue()) + "])");
}

/// Checks user-supplied bounds against the actual spectra and returns them
/// with h, h' and the matching condition filled in.
inline SpectralBounds validate_bounds(const SpdMatrix& a, const SpdMatrix& b, double m_prime,
                                      double m, double big_m, double big_m_prime) {
  auto admissible = [&](const SpdMatrix& lower, const SpdMatrix& upper) {
    return m_prime <= lower.min_eigenvalue() && lower.max_eigenvalue() <= m &&
           big_m <= upper.min_eigenvalue() && upper.max_eigenvalue() <= big_m_prime;
  };
  if (a.dim() != b.dim()) {
    throw InputError("validate_bounds: dimension mismatch");
  }
  if (!(m_prime > 0.0 && m_prime <= m && m < big_m && big_m <= big_m_prime)) {
    throw ConditionError("conditions not satisfied: bounds must satisfy 0 < m' <= m < M <= M'");
  }
  if (admissible(a, b)) {
    return SpectralBounds::make(m_prime, m, big_m, big_m_prime, SeparationCondition::AUnderB);
  }
  if (admissible(b, a)) {
    return SpectralBounds::make(m_prime, m, big_m, big_m_prime, SeparationCondition::BUnderA);
  }
  throw ConditionError("conditions not satisfied: supplied bounds do not enclose the spectra");
}

/// A Haar-like random orthogonal matrix: modified Gram-Schmidt (applied twice)
/// on a matrix of standard normal draws.
inline Matrix random_orthogonal(std::size_t dim, Rng& rng) {
  Matrix g(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      g(i, j) = standard_normal(rng);
    }
  }
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t c = 0; c < dim; ++c) {
      for (std::size_t p = 0; p < c; ++p) {
        double dot = 0.0;
        for (std::size_t r = 0; r < dim; ++r) {
          dot += g(r, p) * g(r, c);
        }
        for (std::size_t r = 0; r < dim; ++r) {
          g(r, c) -= dot * g(r, p);
        }
      }
      double norm = 0.0;
      for (std::size_t r = 0; r < dim; ++r) {
        norm += g(r, c) * g(r, c);
      }
      norm = std::sqrt(norm);
      for (std::size_t r = 0; r < dim; ++r) {
        g(r, c) /= norm;
      }
    }
  }
  return g;
}

/// Random SPD matrix whose eigenvalues are uniform in [lo, hi] with lo and hi
/// both attained, conjugated by a random orthogonal matrix. Deterministic in
/// `seed`.
inline SpdMatrix random_spd_with_spectrum(std::size_t dim, double lo, double hi,
                                          std::uint64_t seed) {
  if (dim < 2 || dim > max_matrix_dim) {
    throw InputError("random_spd_with_spectrum: dimension must lie in [2, 64]");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo > 0.0) || !(lo <= hi)) {
    throw InputError("random_spd_with_spectrum: require 0 < lo <= hi");
  }
  if (lo == hi) {
    return SpdMatrix(lo * Matrix::identity(dim));
  }
  Rng rng = seeded_rng(seed);
  std::vector<double> lambda(dim);
  for (double& l : lambda) {
    l = uniform(rng, lo, hi);
  }
  lambda[0] = lo;
  lambda[1] = hi;
  const SpectralDecomposition d{random_orthogonal(dim, rng), std::move(lambda)};
  return SpdMatrix(d.reconstruct());
}

/// Random symmetric matrix with independent standard normal entries.
inline SymMatrix random_symmetric(std::size_t dim, Rng& rng) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const double v = standard_normal(rng);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return SymMatrix(std::move(m));
}

} // namespace youngref
