#include "doctest.h"

#include "grcat/matrix.hpp"
#include "grcat/rng.hpp"

using namespace grcat;

TEST_CASE("solve_linear on the stated instances") {
    FieldSpec q = FieldSpec::rationals();
    // identity system
    Mat a = Mat::identity(q, 3);
    Mat b(q, 3, 1);
    b.at(0, 0) = Scalar::one(q);
    LinSolve s = solve_linear(a, b);
    REQUIRE(s.ok);
    CHECK(s.particular.at(0, 0).is_one());
    CHECK(s.particular.at(1, 0).is_zero());
    CHECK(s.nullspace_rows.rows == 0);

    // [[1,1]] x = 0: kernel basis (1,-1) in echelon normal form
    Mat a2(q, 1, 2);
    a2.at(0, 0) = Scalar::one(q);
    a2.at(0, 1) = Scalar::one(q);
    Mat ker = nullspace(a2);
    REQUIRE(ker.rows == 1);
    CHECK(ker.at(0, 0) == Scalar::of_int(q, 1));
    CHECK(ker.at(0, 1) == Scalar::of_int(q, -1));

    // 2x = 1 over F5 gives x = 3
    FieldSpec f5 = FieldSpec::prime(5);
    Mat a3(f5, 1, 1), b3(f5, 1, 1);
    a3.at(0, 0) = Scalar::of_int(f5, 2);
    b3.at(0, 0) = Scalar::one(f5);
    LinSolve s3 = solve_linear(a3, b3);
    REQUIRE(s3.ok);
    CHECK(s3.particular.at(0, 0) == Scalar::of_int(f5, 3));
}

TEST_CASE("random planted solutions solve exactly") {
    for (int trial = 0; trial < 12; ++trial) {
        Rng rng(100 + static_cast<std::uint64_t>(trial));
        FieldSpec fs = trial % 2 ? FieldSpec::rationals() : FieldSpec::prime(7);
        int m = 3 + static_cast<int>(rng.below(4)), n = 3 + static_cast<int>(rng.below(4));
        Mat a(fs, m, n);
        for (auto& x : a.a) x = rng.scalar(fs);
        Vec planted = vec_zero(fs, n);
        for (auto& x : planted) x = rng.scalar(fs);
        Vec bvec = mat_apply(a, planted);
        Mat b(fs, m, 1);
        for (int i = 0; i < m; ++i) b.at(i, 0) = bvec[static_cast<size_t>(i)];
        LinSolve s = solve_linear(a, b);
        REQUIRE(s.ok);
        CHECK(mat_apply(a, s.particular.col(0)) == bvec);
        for (int r = 0; r < s.nullspace_rows.rows; ++r)
            CHECK(vec_is_zero(mat_apply(a, s.nullspace_rows.row(r))));
    }
}

TEST_CASE("parallel kernels agree with the serial reference bit for bit") {
    Rng rng(0x77);
    for (FieldSpec fs : {FieldSpec::prime(65521), FieldSpec::rationals()}) {
        Mat a(fs, 60, 72), b(fs, 72, 40);
        for (auto& x : a.a) x = rng.scalar(fs);
        for (auto& x : b.a) x = rng.scalar(fs);
        CHECK(mat_mul(a, b) == mat_mul_serial(a, b));
        Rref r1 = rref(a), r2 = rref_serial(a);
        CHECK(r1.m == r2.m);
        CHECK(r1.pivots == r2.pivots);
    }
}

TEST_CASE("determinism: identical inputs give identical rref output") {
    Rng rng(0xdead);
    FieldSpec q = FieldSpec::rationals();
    Mat a(q, 15, 20);
    for (auto& x : a.a) x = rng.scalar(q);
    Rref first = rref(a);
    for (int i = 0; i < 3; ++i) {
        Rref again = rref(a);
        CHECK(again.m == first.m);
    }
}

TEST_CASE("field axioms: a * inv(a) = 1 for random nonzero a") {
    Rng rng(0xf1e1d);
    for (FieldSpec fs : {FieldSpec::rationals(), FieldSpec::prime(5), FieldSpec::prime(65521)}) {
        for (int t = 0; t < 50; ++t) {
            Scalar a = rng.nonzero_scalar(fs, -20, 20);
            CHECK((a * a.inv()).is_one());
            Scalar ainv = arith(ArithOp::Inv, a, nullptr);
            CHECK(arith(ArithOp::Mul, a, &ainv).is_one());
        }
    }
}

TEST_CASE("inverse round trip and failure") {
    FieldSpec f5 = FieldSpec::prime(5);
    Rng rng(0x5150);
    Mat a(f5, 5, 5);
    for (auto& x : a.a) x = rng.scalar(f5);
    auto inv = inverse(a);
    if (inv) CHECK(mat_mul(a, *inv).is_identity());
    Mat z(f5, 3, 3);
    CHECK(!inverse(z));
}
