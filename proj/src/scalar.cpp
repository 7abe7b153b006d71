#include "grcat/scalar.hpp"

namespace grcat {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
    if (!is_prime_u32(p)) throw Error("NotPrime", "modulus " + std::to_string(p) + " is not prime");
    return FieldSpec{FieldKind::Prime, p};
}

std::string FieldSpec::str() const {
    return is_rationals() ? "Q" : "F" + std::to_string(p);
}

static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

static std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

Scalar Scalar::of_int(const FieldSpec& fs, long v) {
    Scalar s;
    s.fs_ = fs;
    if (fs.is_rationals()) {
        s.q_ = mpq_class(v);
    } else {
        long m = v % static_cast<long>(fs.p);
        if (m < 0) m += fs.p;
        s.r_ = static_cast<std::uint64_t>(m);
    }
    return s;
}

Scalar Scalar::rational(long num, long den) {
    if (den == 0) throw Error("DivisionByZero", "rational with zero denominator");
    Scalar s;
    s.fs_ = FieldSpec::rationals();
    s.q_ = mpq_class(num, den);
    s.q_.canonicalize();
    return s;
}

Scalar Scalar::from_mpq(const FieldSpec& fs, const mpq_class& q) {
    Scalar s;
    s.fs_ = fs;
    if (fs.is_rationals()) {
        s.q_ = q;
        s.q_.canonicalize();
    } else {
        // reduce n/d mod p
        mpz_class n = q.get_num(), d = q.get_den();
        mpz_class pz(static_cast<unsigned long>(fs.p));
        mpz_class nr = n % pz, dr = d % pz;
        if (nr < 0) nr += pz;
        if (dr < 0) dr += pz;
        std::uint64_t du = dr.get_ui();
        if (du == 0) throw Error("DivisionByZero", "denominator divisible by " + std::to_string(fs.p));
        s.r_ = mulmod(nr.get_ui(), powmod(du, fs.p - 2, fs.p), fs.p);
    }
    return s;
}

void Scalar::check_same(const Scalar& o) const {
    if (!(fs_ == o.fs_))
        throw Error("FieldMismatch", "operands over " + fs_.str() + " and " + o.fs_.str());
}

bool Scalar::is_zero() const {
    return fs_.is_rationals() ? (q_ == 0) : (r_ == 0);
}

bool Scalar::is_one() const {
    return fs_.is_rationals() ? (q_ == 1) : (r_ == 1 % fs_.p);
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar s;
    s.fs_ = fs_;
    if (fs_.is_rationals())
        s.q_ = q_ + o.q_;
    else
        s.r_ = (r_ + o.r_) % fs_.p;
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + o.neg(); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar s;
    s.fs_ = fs_;
    if (fs_.is_rationals())
        s.q_ = q_ * o.q_;
    else
        s.r_ = mulmod(r_, o.r_, fs_.p);
    return s;
}

Scalar Scalar::neg() const {
    Scalar s;
    s.fs_ = fs_;
    if (fs_.is_rationals())
        s.q_ = -q_;
    else
        s.r_ = r_ == 0 ? 0 : fs_.p - r_;
    return s;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
    Scalar s;
    s.fs_ = fs_;
    if (fs_.is_rationals())
        s.q_ = 1 / q_;
    else
        s.r_ = powmod(r_, fs_.p - 2, fs_.p);
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    if (!(fs_ == o.fs_)) return false;
    return fs_.is_rationals() ? (q_ == o.q_) : (r_ == o.r_);
}

std::string Scalar::str() const {
    if (!fs_.is_rationals()) return std::to_string(r_);
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Scalar arith(ArithOp op, const Scalar& a, const Scalar* b) {
    switch (op) {
        case ArithOp::Add:
            if (!b) throw Error("BadArgument", "add needs two operands");
            return a + *b;
        case ArithOp::Mul:
            if (!b) throw Error("BadArgument", "mul needs two operands");
            return a * *b;
        case ArithOp::Neg: return a.neg();
        case ArithOp::Inv: return a.inv();
    }
    throw Error("BadArgument", "unknown op");
}

}  // namespace grcat
