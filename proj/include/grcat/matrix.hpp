#ifndef GRCAT_MATRIX_HPP
#define GRCAT_MATRIX_HPP

#include <optional>
#include <vector>

#include "grcat/scalar.hpp"

namespace grcat {

using Vec = std::vector<Scalar>;

Vec vec_zero(const FieldSpec& fs, int n);
Vec vec_unit(const FieldSpec& fs, int n, int k);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& a);
bool vec_is_zero(const Vec& a);

/* Dense matrix over one exact field, row-major. */
struct Mat {
    int rows = 0, cols = 0;
    FieldSpec fs;
    std::vector<Scalar> a;

    Mat() = default;
    Mat(const FieldSpec& f, int r, int c)
        : rows(r), cols(c), fs(f), a(static_cast<size_t>(r) * c, Scalar::zero(f)) {}

    Scalar& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Scalar& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static Mat identity(const FieldSpec& f, int n);
    static Mat from_rows(const FieldSpec& f, const std::vector<Vec>& rows);

    Vec row(int r) const;
    Vec col(int c) const;
    bool is_zero() const;
    bool is_identity() const;
    Mat transpose() const;
    bool operator==(const Mat& o) const;
};

Mat mat_add(const Mat& A, const Mat& B);
Mat mat_sub(const Mat& A, const Mat& B);
Mat mat_scale(const Scalar& c, const Mat& A);
Vec mat_apply(const Mat& A, const Vec& x);

/* Multiply kernels: `mat_mul` picks the OpenMP path for large inputs and
 * produces output identical to `mat_mul_serial` for any thread count. */
Mat mat_mul_serial(const Mat& A, const Mat& B);
Mat mat_mul(const Mat& A, const Mat& B);

struct Rref {
    Mat m;
    std::vector<int> pivots;  // pivot column per pivot row
    int rank = 0;
};

/* Reduced row echelon form with a fixed pivot rule (first nonzero entry in
 * column order, topmost candidate row): bit-for-bit deterministic. */
Rref rref_serial(Mat m);
Rref rref(Mat m);  // OpenMP row elimination, same output as rref_serial

int rank(const Mat& A);
std::optional<Mat> inverse(const Mat& A);

/* Rows of the result form the canonical reduced-echelon basis of ker(A),
 * acting on column vectors (A x = 0). */
Mat nullspace(const Mat& A);

struct LinSolve {
    bool ok = false;     // false: no solution
    Mat particular;      // cols match b's cols; free coordinates set to 0
    Mat nullspace_rows;  // canonical kernel basis of A
};

// Solve A X = B exactly (B may have several columns).
LinSolve solve_linear(const Mat& A, const Mat& B);

std::string mat_str(const Mat& A);

}  // namespace grcat

#endif
