#include "susylab/spectral/sparse_lu.hpp"

#include <umfpack.h>

#include <algorithm>
#include <cmath>

namespace susylab::spectral {

SparseLU::SparseLU(const disc::SparseMatrix& A, double shift) : n_(A.rows()) {
  require(A.rows() == A.cols(), ErrorKind::DimensionMismatch, "LU needs a square matrix");
  ptr_.assign(n_ + 1, 0);
  for (std::int64_t r = 0; r < n_; ++r) {
    bool has_diag = false;
    for (disc::SparseMatrix::InnerIterator it(A, r); it; ++it) {
      if (it.col() == r) has_diag = true;
      idx_.push_back(static_cast<long>(it.col()));
      val_.push_back(it.col() == r ? it.value() - shift : it.value());
    }
    if (!has_diag && shift != 0.0) {
      // keep columns sorted within the row
      auto begin = idx_.begin() + ptr_[r];
      auto pos = std::lower_bound(begin, idx_.end(), static_cast<long>(r));
      const auto off = pos - idx_.begin();
      idx_.insert(pos, static_cast<long>(r));
      val_.insert(val_.begin() + off, -shift);
    }
    ptr_[r + 1] = static_cast<long>(idx_.size());
  }
  double control[UMFPACK_CONTROL];
  double info[UMFPACK_INFO];
  umfpack_dl_defaults(control);
  void* symbolic = nullptr;
  long status = umfpack_dl_symbolic(n_, n_, ptr_.data(), idx_.data(), val_.data(), &symbolic,
                                    control, info);
  if (status != UMFPACK_OK) {
    umfpack_dl_free_symbolic(&symbolic);
    throw Error(ErrorKind::FactorizationFailure, "symbolic factorization failed (status " +
                                                     std::to_string(status) + ")");
  }
  status = umfpack_dl_numeric(ptr_.data(), idx_.data(), val_.data(), symbolic, &numeric_, control,
                              info);
  umfpack_dl_free_symbolic(&symbolic);
  if (status != UMFPACK_OK) {
    if (numeric_) umfpack_dl_free_numeric(&numeric_);
    throw Error(ErrorKind::FactorizationFailure,
                "numeric factorization failed (status " + std::to_string(status) + ")");
  }
}

SparseLU::~SparseLU() {
  if (numeric_) umfpack_dl_free_numeric(&numeric_);
}

Vec SparseLU::run(int sys, const Vec& b) const {
  if (b.size() != n_) throw Error(ErrorKind::LengthMismatch, "right-hand side has the wrong length");
  Vec x(n_);
  double control[UMFPACK_CONTROL];
  double info[UMFPACK_INFO];
  umfpack_dl_defaults(control);
  const long status = umfpack_dl_solve(sys, ptr_.data(), idx_.data(), val_.data(), x.data(),
                                       b.data(), numeric_, control, info);
  if (status != UMFPACK_OK)
    throw Error(ErrorKind::FactorizationFailure, "triangular solve failed (status " +
                                                     std::to_string(status) + ")");
  return x;
}

// The stored arrays are the transpose in UMFPACK's column convention, so the
// roles of UMFPACK_A and UMFPACK_At swap.
Vec SparseLU::solve(const Vec& b) const { return run(UMFPACK_At, b); }
Vec SparseLU::solve_transpose(const Vec& b) const { return run(UMFPACK_A, b); }

}  // namespace susylab::spectral
