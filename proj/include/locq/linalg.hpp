#pragma once

#include <vector>

#include "locq/gf.hpp"

namespace locq {

// Dense matrix over GF(q). Sizes stay small (a few dozen rows/columns), so
// everything is plain table arithmetic with no cleverness.
class Mat {
  public:
    Mat(const Field& f, int rows, int cols);
    static Mat identity(const Field& f, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return *f_; }

    Fe operator()(int r, int c) const { return a_[size_t(r) * cols_ + c]; }
    Fe& operator()(int r, int c) { return a_[size_t(r) * cols_ + c]; }

    Mat transposed() const;
    bool operator==(const Mat& o) const;

  private:
    const Field* f_;
    int rows_, cols_;
    std::vector<Fe> a_;
};

Mat mat_mul(const Mat& a, const Mat& b);

// In-place reduced row echelon form; returns the rank.
int rref_in_place(Mat& m);

int rank_of(Mat m);

// RREF with zero rows dropped: the canonical basis of the row space, so two
// row spaces are equal iff these matrices compare equal.
Mat row_space_rref(const Mat& m);

// Rows form the canonical basis of the right nullspace {v : m v = 0}.
Mat nullspace(const Mat& m);

// Inverse of a square invertible matrix; throws InvalidArgument otherwise.
Mat inverse(const Mat& m);

}  // namespace locq
