#ifndef GRCAT_SCALAR_HPP
#define GRCAT_SCALAR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace grcat {

/* All mathematical failures that are contract violations (not check-report
 * outcomes) are thrown as Error with a stable `kind` tag. */
struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& msg)
        : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

enum class FieldKind : std::uint8_t { Rationals, Prime };

struct FieldSpec {
    FieldKind kind = FieldKind::Rationals;
    std::uint32_t p = 0;  // modulus, only for Prime

    static FieldSpec rationals() { return FieldSpec{FieldKind::Rationals, 0}; }
    static FieldSpec prime(std::uint32_t p);

    bool is_rationals() const { return kind == FieldKind::Rationals; }
    bool operator==(const FieldSpec& o) const = default;
    std::string str() const;
};

bool is_prime_u32(std::uint32_t n);

/* Exact field element: a rational in lowest terms (GMP mpq) or a residue
 * in [0,p).  Immutable in spirit; all ops return fresh values. */
class Scalar {
  public:
    Scalar() : fs_(FieldSpec::rationals()), r_(0) {}  // 0 in Q

    static Scalar zero(const FieldSpec& fs) { return of_int(fs, 0); }
    static Scalar one(const FieldSpec& fs) { return of_int(fs, 1); }
    static Scalar of_int(const FieldSpec& fs, long v);
    static Scalar rational(long num, long den);
    static Scalar from_mpq(const FieldSpec& fs, const mpq_class& q);

    const FieldSpec& field() const { return fs_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar neg() const;
    Scalar inv() const;  // throws DivisionByZero on 0
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;  // "n/d" lowest terms, or bare residue

    // residue value (Prime only)
    std::uint64_t residue() const { return r_; }
    const mpq_class& rat() const { return q_; }

  private:
    FieldSpec fs_;
    mpq_class q_;        // canonical (lowest terms, positive denominator)
    std::uint64_t r_ = 0;

    void check_same(const Scalar& o) const;
};

// op dispatch used by the CLI's scalar sanity command and tests
enum class ArithOp { Add, Mul, Neg, Inv };
Scalar arith(ArithOp op, const Scalar& a, const Scalar* b);

}  // namespace grcat

#endif
