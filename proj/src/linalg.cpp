#include "locq/linalg.hpp"

#include "locq/errors.hpp"

namespace locq {

Mat::Mat(const Field& f, int rows, int cols)
    : f_(&f), rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}

Mat Mat::identity(const Field& f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::transposed() const {
    Mat t(*f_, cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool Mat::operator==(const Mat& o) const {
    return f_->q() == o.f_->q() && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows() || a.field().q() != b.field().q())
        throw InvalidArgument("matrix shape mismatch in multiply");
    const Field& f = a.field();
    Mat r(f, a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            Fe aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j)
                r(i, j) = f.add(r(i, j), f.mul(aik, b(k, j)));
        }
    return r;
}

int rref_in_place(Mat& m) {
    const Field& f = m.field();
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows(); ++r)
            if (m(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(rank, c));
        Fe s = f.inv(m(rank, col));
        if (s != 1)
            for (int c = 0; c < m.cols(); ++c) m(rank, c) = f.mul(m(rank, c), s);
        for (int r = 0; r < m.rows(); ++r) {
            if (r == rank) continue;
            Fe v = m(r, col);
            if (v == 0) continue;
            for (int c = 0; c < m.cols(); ++c)
                m(r, c) = f.sub(m(r, c), f.mul(v, m(rank, c)));
        }
        ++rank;
    }
    return rank;
}

int rank_of(Mat m) { return rref_in_place(m); }

Mat row_space_rref(const Mat& m) {
    Mat r = m;
    int rank = rref_in_place(r);
    Mat out(m.field(), rank, m.cols());
    for (int i = 0; i < rank; ++i)
        for (int c = 0; c < m.cols(); ++c) out(i, c) = r(i, c);
    return out;
}

Mat nullspace(const Mat& m) {
    const Field& f = m.field();
    Mat r = m;
    int rank = rref_in_place(r);

    std::vector<int> pivot_col(rank, -1);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int i = 0, col = 0; i < rank; ++i) {
        while (col < m.cols() && r(i, col) == 0) ++col;
        pivot_col[i] = col;
        is_pivot[col] = true;
    }

    Mat basis(f, m.cols() - rank, m.cols());
    int row = 0;
    for (int free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        basis(row, free_col) = 1;
        for (int i = 0; i < rank; ++i)
            basis(row, pivot_col[i]) = f.neg(r(i, free_col));
        ++row;
    }
    return basis;
}

Mat inverse(const Mat& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("inverse of non-square matrix");
    const Field& f = m.field();
    int n = m.rows();
    if (rank_of(m) != n) throw InvalidArgument("matrix is singular");
    Mat aug(f, n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    rref_in_place(aug);
    Mat inv(f, n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
    return inv;
}

}  // namespace locq
