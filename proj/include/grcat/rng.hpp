#ifndef GRCAT_RNG_HPP
#define GRCAT_RNG_HPP

#include <cstdint>

#include "grcat/scalar.hpp"

namespace grcat {

/* splitmix64: tiny, portable, and independent of libstdc++ distribution
 * internals, so seeded streams are byte-identical across platforms. */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n) by rejection
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do { v = next(); } while (v >= lim);
        return v % n;
    }

    // derive an independent stream for task `k` of the same seed
    Rng fork(std::uint64_t k) const {
        Rng r(s_ ^ (0x632be59bd9b4e019ULL * (k + 1)));
        r.next();
        return r;
    }

    Scalar scalar(const FieldSpec& fs, long lo = -4, long hi = 4) {
        if (fs.is_rationals())
            return Scalar::of_int(fs, lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))));
        return Scalar::of_int(fs, static_cast<long>(below(fs.p)));
    }

    Scalar nonzero_scalar(const FieldSpec& fs, long lo = -4, long hi = 4) {
        for (;;) {
            Scalar s = scalar(fs, lo, hi);
            if (!s.is_zero()) return s;
        }
    }

  private:
    std::uint64_t s_;
};

}  // namespace grcat

#endif
