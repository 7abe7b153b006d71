#include "grcat/matrix.hpp"

#include <sstream>

#include "grcat/par.hpp"

namespace grcat {

Vec vec_zero(const FieldSpec& fs, int n) { return Vec(static_cast<size_t>(n), Scalar::zero(fs)); }

Vec vec_unit(const FieldSpec& fs, int n, int k) {
    Vec v = vec_zero(fs, n);
    v[static_cast<size_t>(k)] = Scalar::one(fs);
    return v;
}

Vec vec_add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

Vec vec_scale(const Scalar& c, const Vec& a) {
    Vec r = a;
    for (auto& x : r) x = c * x;
    return r;
}

bool vec_is_zero(const Vec& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

Mat Mat::identity(const FieldSpec& f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Mat Mat::from_rows(const FieldSpec& f, const std::vector<Vec>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Mat m(f, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return m;
}

Vec Mat::row(int r) const {
    Vec v;
    v.reserve(static_cast<size_t>(cols));
    for (int j = 0; j < cols; ++j) v.push_back(at(r, j));
    return v;
}

Vec Mat::col(int c) const {
    Vec v;
    v.reserve(static_cast<size_t>(rows));
    for (int i = 0; i < rows; ++i) v.push_back(at(i, c));
    return v;
}

bool Mat::is_zero() const {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

bool Mat::is_identity() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (i == j && !at(i, j).is_one()) return false;
            if (i != j && !at(i, j).is_zero()) return false;
        }
    return true;
}

Mat Mat::transpose() const {
    Mat m(fs, cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
    return m;
}

bool Mat::operator==(const Mat& o) const {
    if (rows != o.rows || cols != o.cols || !(fs == o.fs)) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != o.a[i]) return false;
    return true;
}

Mat mat_add(const Mat& A, const Mat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw Error("ShapeMismatch", "add");
    Mat r = A;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + B.a[i];
    return r;
}

Mat mat_sub(const Mat& A, const Mat& B) { return mat_add(A, mat_scale(Scalar::of_int(A.fs, -1), B)); }

Mat mat_scale(const Scalar& c, const Mat& A) {
    Mat r = A;
    for (auto& x : r.a) x = c * x;
    return r;
}

Vec mat_apply(const Mat& A, const Vec& x) {
    if (static_cast<int>(x.size()) != A.cols) throw Error("ShapeMismatch", "apply");
    Vec r = vec_zero(A.fs, A.rows);
    for (int i = 0; i < A.rows; ++i) {
        Scalar s = Scalar::zero(A.fs);
        for (int j = 0; j < A.cols; ++j)
            if (!A.at(i, j).is_zero() && !x[static_cast<size_t>(j)].is_zero())
                s = s + A.at(i, j) * x[static_cast<size_t>(j)];
        r[static_cast<size_t>(i)] = s;
    }
    return r;
}

static void mul_row(const Mat& A, const Mat& B, Mat& C, int i) {
    for (int k = 0; k < A.cols; ++k) {
        const Scalar& aik = A.at(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < B.cols; ++j) {
            const Scalar& bkj = B.at(k, j);
            if (!bkj.is_zero()) C.at(i, j) = C.at(i, j) + aik * bkj;
        }
    }
}

Mat mat_mul_serial(const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw Error("ShapeMismatch", "mul");
    if (!(A.fs == B.fs)) throw Error("FieldMismatch", "mul");
    Mat C(A.fs, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i) mul_row(A, B, C, i);
    return C;
}

Mat mat_mul(const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw Error("ShapeMismatch", "mul");
    if (!(A.fs == B.fs)) throw Error("FieldMismatch", "mul");
    if (static_cast<long>(A.rows) * B.cols * A.cols < 8192) return mat_mul_serial(A, B);
    Mat C(A.fs, A.rows, B.cols);
    par::for_n(A.rows, [&](std::ptrdiff_t i) { mul_row(A, B, C, static_cast<int>(i)); });
    return C;
}

/* One elimination pass.  Pivot selection is a fixed scan, so the parallel
 * and serial paths produce identical matrices. */
static Rref rref_impl(Mat m, bool parallel) {
    Rref out;
    int pr = 0;
    for (int c = 0; c < m.cols && pr < m.rows; ++c) {
        int sel = -1;
        for (int r = pr; r < m.rows; ++r)
            if (!m.at(r, c).is_zero()) { sel = r; break; }
        if (sel < 0) continue;
        if (sel != pr)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(pr, j));
        Scalar piv_inv = m.at(pr, c).inv();
        for (int j = c; j < m.cols; ++j) m.at(pr, j) = piv_inv * m.at(pr, j);
        auto eliminate = [&](int r) {
            if (r == pr) return;
            Scalar f = m.at(r, c);
            if (f.is_zero()) return;
            for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) - f * m.at(pr, j);
        };
        // rational rows are expensive enough to parallelize early; residue rows are not
        long threshold = m.fs.is_rationals() ? 2048 : 65536;
        if (parallel && static_cast<long>(m.rows) * (m.cols - c) >= threshold)
            par::for_n(m.rows, [&](std::ptrdiff_t r) { eliminate(static_cast<int>(r)); });
        else
            for (int r = 0; r < m.rows; ++r) eliminate(r);
        out.pivots.push_back(c);
        ++pr;
    }
    out.rank = pr;
    out.m = std::move(m);
    return out;
}

Rref rref_serial(Mat m) { return rref_impl(std::move(m), false); }
Rref rref(Mat m) { return rref_impl(std::move(m), true); }

int rank(const Mat& A) { return rref(A).rank; }

std::optional<Mat> inverse(const Mat& A) {
    if (A.rows != A.cols) return std::nullopt;
    Mat aug(A.fs, A.rows, 2 * A.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols + i) = Scalar::one(A.fs);
    }
    Rref r = rref(std::move(aug));
    for (int i = 0; i < A.rows; ++i)
        if (static_cast<int>(r.pivots.size()) <= i || r.pivots[static_cast<size_t>(i)] != i) return std::nullopt;
    Mat inv(A.fs, A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) inv.at(i, j) = r.m.at(i, A.cols + j);
    return inv;
}

Mat nullspace(const Mat& A) {
    Rref r = rref(A);
    std::vector<bool> is_pivot(static_cast<size_t>(A.cols), false);
    for (int c : r.pivots) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<Vec> basis;
    for (int c = 0; c < A.cols; ++c) {
        if (is_pivot[static_cast<size_t>(c)]) continue;
        Vec v = vec_zero(A.fs, A.cols);
        v[static_cast<size_t>(c)] = Scalar::one(A.fs);
        for (int pi = 0; pi < r.rank; ++pi)
            v[static_cast<size_t>(r.pivots[static_cast<size_t>(pi)])] = r.m.at(pi, c).neg();
        basis.push_back(std::move(v));
    }
    // canonical form: echelonize the kernel basis itself
    if (basis.empty()) return Mat(A.fs, 0, A.cols);
    return rref(Mat::from_rows(A.fs, basis)).m;
}

LinSolve solve_linear(const Mat& A, const Mat& B) {
    if (!(A.fs == B.fs)) throw Error("FieldMismatch", "solve_linear");
    if (A.rows != B.rows) throw Error("ShapeMismatch", "solve_linear: row counts differ");
    Mat aug(A.fs, A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) aug.at(i, A.cols + j) = B.at(i, j);
    }
    Rref r = rref(std::move(aug));
    LinSolve out;
    // inconsistent iff a pivot falls in the RHS block
    for (int c : r.pivots)
        if (c >= A.cols) {
            out.ok = false;
            return out;
        }
    out.ok = true;
    out.particular = Mat(A.fs, A.cols, B.cols);
    for (int pi = 0; pi < r.rank; ++pi) {
        int pc = r.pivots[static_cast<size_t>(pi)];
        for (int j = 0; j < B.cols; ++j) out.particular.at(pc, j) = r.m.at(pi, A.cols + j);
    }
    out.nullspace_rows = nullspace(A);
    return out;
}

std::string mat_str(const Mat& A) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < A.rows; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < A.cols; ++j) {
            if (j) os << ", ";
            os << A.at(i, j).str();
        }
    }
    os << "]";
    return os.str();
}

}  // namespace grcat
