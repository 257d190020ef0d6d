#pragma once

#include <optional>

#include "nscover/cyclotomic.hpp"

namespace nscover {

/// Dense matrix over Q(zeta_m). All arithmetic is exact.
class CMat {
 public:
  CMat() : ctx_(CycloContext::get(1)), nr_(0), nc_(0) {}
  CMat(const CycloContext* ctx, int nr, int nc)
      : ctx_(ctx), nr_(nr), nc_(nc), a_(size_t(nr) * size_t(nc), Cyclo::zero(ctx)) {}

  static CMat identity(const CycloContext* ctx, int n) {
    CMat m(ctx, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Cyclo::one(ctx);
    return m;
  }

  /// Identity plus z at (i, j), 0-based, i != j.
  static CMat elementary(const CycloContext* ctx, int n, int i, int j, const Cyclo& z) {
    if (i == j) throw std::invalid_argument("elementary matrix needs i != j");
    CMat m = identity(ctx, n);
    m.at(i, j) = z;
    return m;
  }

  const CycloContext* ctx() const { return ctx_; }
  int rows() const { return nr_; }
  int cols() const { return nc_; }
  Cyclo& at(int i, int j) { return a_[size_t(i) * size_t(nc_) + size_t(j)]; }
  const Cyclo& at(int i, int j) const { return a_[size_t(i) * size_t(nc_) + size_t(j)]; }

  bool operator==(const CMat& rhs) const {
    return nr_ == rhs.nr_ && nc_ == rhs.nc_ && a_ == rhs.a_;
  }
  bool operator!=(const CMat& rhs) const { return !(*this == rhs); }

  CMat operator*(const CMat& rhs) const {
    if (nc_ != rhs.nr_) throw std::invalid_argument("matrix shape mismatch");
    CMat out(ctx_, nr_, rhs.nc_);
    for (int i = 0; i < nr_; ++i)
      for (int l = 0; l < nc_; ++l) {
        const Cyclo& x = at(i, l);
        if (x.is_zero()) continue;
        for (int j = 0; j < rhs.nc_; ++j) {
          if (rhs.at(l, j).is_zero()) continue;
          out.at(i, j) += x * rhs.at(l, j);
        }
      }
    return out;
  }

  CMat operator+(const CMat& rhs) const {
    CMat out(ctx_, nr_, nc_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + rhs.a_[i];
    return out;
  }

  CMat operator-(const CMat& rhs) const {
    CMat out(ctx_, nr_, nc_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - rhs.a_[i];
    return out;
  }

  CMat scaled(const Cyclo& z) const {
    CMat out(ctx_, nr_, nc_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * z;
    return out;
  }

  CMat transpose() const {
    CMat out(ctx_, nc_, nr_);
    for (int i = 0; i < nr_; ++i)
      for (int j = 0; j < nc_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

  CMat col(int j) const {
    CMat out(ctx_, nr_, 1);
    for (int i = 0; i < nr_; ++i) out.at(i, 0) = at(i, j);
    return out;
  }

  bool is_identity() const {
    if (nr_ != nc_) return false;
    for (int i = 0; i < nr_; ++i)
      for (int j = 0; j < nc_; ++j)
        if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  /// Entrywise Galois conjugation.
  CMat galois(long l) const {
    CMat out(ctx_, nr_, nc_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i].galois(l);
    return out;
  }

  CMat power(long e) const;
  CMat inverse() const;
  Cyclo det() const;

 private:
  const CycloContext* ctx_;
  int nr_, nc_;
  std::vector<Cyclo> a_;
};

/// Row-reduced echelon data: T * A = R with R in RREF.
struct Rref {
  CMat R;
  CMat T;
  std::vector<int> pivots;  // pivot column per pivot row
  int rank() const { return int(pivots.size()); }
};

inline Rref rref(const CMat& A) {
  Rref out{A, CMat::identity(A.ctx(), A.rows()), {}};
  CMat& R = out.R;
  CMat& T = out.T;
  int row = 0;
  for (int col = 0; col < A.cols() && row < A.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < A.rows(); ++i)
      if (!R.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) {
      for (int j = 0; j < R.cols(); ++j) std::swap(R.at(piv, j), R.at(row, j));
      for (int j = 0; j < T.cols(); ++j) std::swap(T.at(piv, j), T.at(row, j));
    }
    Cyclo invp = R.at(row, col).inv();
    for (int j = 0; j < R.cols(); ++j) R.at(row, j) *= invp;
    for (int j = 0; j < T.cols(); ++j) T.at(row, j) *= invp;
    for (int i = 0; i < A.rows(); ++i) {
      if (i == row || R.at(i, col).is_zero()) continue;
      Cyclo f = R.at(i, col);
      for (int j = 0; j < R.cols(); ++j) R.at(i, j) -= f * R.at(row, j);
      for (int j = 0; j < T.cols(); ++j) T.at(i, j) -= f * T.at(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

/// Basis of the right kernel, one column per basis vector.
inline CMat kernel_basis(const CMat& A) {
  Rref f = rref(A);
  std::vector<int> free_cols;
  {
    size_t p = 0;
    for (int c = 0; c < A.cols(); ++c) {
      if (p < f.pivots.size() && f.pivots[p] == c)
        ++p;
      else
        free_cols.push_back(c);
    }
  }
  CMat K(A.ctx(), A.cols(), int(free_cols.size()));
  for (size_t j = 0; j < free_cols.size(); ++j) {
    K.at(free_cols[j], int(j)) = Cyclo::one(A.ctx());
    for (size_t i = 0; i < f.pivots.size(); ++i)
      K.at(f.pivots[i], int(j)) = -f.R.at(int(i), free_cols[j]);
  }
  return K;
}

/// Solves A X = B exactly; nullopt when inconsistent.
inline std::optional<CMat> solve(const CMat& A, const CMat& B) {
  Rref f = rref(A);
  CMat Y = f.T * B;
  // consistency: rows past the rank must be zero
  for (int i = f.rank(); i < A.rows(); ++i)
    for (int j = 0; j < B.cols(); ++j)
      if (!Y.at(i, j).is_zero()) return std::nullopt;
  CMat X(A.ctx(), A.cols(), B.cols());
  for (int i = 0; i < f.rank(); ++i) {
    // free variables are set to zero
    for (int j = 0; j < B.cols(); ++j) X.at(f.pivots[size_t(i)], j) = Y.at(i, j);
  }
  if (f.rank() < A.cols()) {
    // verify the produced X (guards against hidden free-variable dependence)
    if (!(A * X == B)) return std::nullopt;
  }
  return X;
}

inline CMat CMat::inverse() const {
  if (nr_ != nc_) throw std::invalid_argument("inverse needs a square matrix");
  Rref f = rref(*this);
  if (f.rank() != nr_) throw std::domain_error("singular matrix");
  return f.T;
}

inline Cyclo CMat::det() const {
  if (nr_ != nc_) throw std::invalid_argument("det needs a square matrix");
  CMat R = *this;
  Cyclo d = Cyclo::one(ctx_);
  for (int col = 0; col < nc_; ++col) {
    int piv = -1;
    for (int i = col; i < nr_; ++i)
      if (!R.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Cyclo::zero(ctx_);
    if (piv != col) {
      for (int j = 0; j < nc_; ++j) std::swap(R.at(piv, j), R.at(col, j));
      d = -d;
    }
    d *= R.at(col, col);
    Cyclo invp = R.at(col, col).inv();
    for (int i = col + 1; i < nr_; ++i) {
      if (R.at(i, col).is_zero()) continue;
      Cyclo f = R.at(i, col) * invp;
      for (int j = col; j < nc_; ++j) R.at(i, j) -= f * R.at(col, j);
    }
  }
  return d;
}

inline CMat CMat::power(long e) const {
  if (nr_ != nc_) throw std::invalid_argument("power needs a square matrix");
  CMat base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? (unsigned long)(-e) : (unsigned long)e;
  CMat acc = CMat::identity(ctx_, nr_);
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

}  // namespace nscover
