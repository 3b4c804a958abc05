#pragma once

#include "susylab/disc/discretize.hpp"

#include <memory>
#include <vector>

namespace susylab::spectral {

/// Sparse direct LU of (A - shift I) with solves against the matrix and its
/// transpose from one factorization. Solves are const and may run
/// concurrently.
class SparseLU {
 public:
  explicit SparseLU(const disc::SparseMatrix& A, double shift = 0.0);
  ~SparseLU();
  SparseLU(const SparseLU&) = delete;
  SparseLU& operator=(const SparseLU&) = delete;

  Vec solve(const Vec& b) const;
  Vec solve_transpose(const Vec& b) const;
  std::int64_t size() const { return n_; }

 private:
  Vec run(int sys, const Vec& b) const;

  std::int64_t n_ = 0;
  // compressed rows of A - shift I, which UMFPACK reads as compressed
  // columns of the transpose
  std::vector<long> ptr_;
  std::vector<long> idx_;
  std::vector<double> val_;
  void* numeric_ = nullptr;
};

}  // namespace susylab::spectral
