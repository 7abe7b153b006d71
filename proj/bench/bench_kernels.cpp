// Benchmarks for the exact elimination kernels: OpenMP path against the
// serial reference, plus a batch of Hom computations.
#include <chrono>
#include <iostream>

#include "grcat/fixtures.hpp"
#include "grcat/par.hpp"
#include "grcat/rng.hpp"

using namespace grcat;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Mat random_mat(const FieldSpec& fs, int r, int c, Rng& rng) {
    Mat m(fs, r, c);
    for (auto& x : m.a) x = rng.scalar(fs, -9, 9);
    return m;
}

void bench_rref(const FieldSpec& fs, int n, Rng& rng) {
    Mat m = random_mat(fs, n, n, rng);
    auto t0 = Clock::now();
    Rref serial = rref_serial(m);
    double ts = ms_since(t0);
    t0 = Clock::now();
    Rref parallel = rref(m);
    double tp = ms_since(t0);
    bool same = serial.m == parallel.m && serial.pivots == parallel.pivots;
    std::cout << "rref " << fs.str() << " " << n << "x" << n << ": serial " << ts << " ms, omp " << tp
              << " ms, speedup " << (tp > 0 ? ts / tp : 0) << (same ? "" : "  MISMATCH") << "\n";
}

void bench_mul(const FieldSpec& fs, int n, Rng& rng) {
    Mat a = random_mat(fs, n, n, rng), b = random_mat(fs, n, n, rng);
    auto t0 = Clock::now();
    Mat serial = mat_mul_serial(a, b);
    double ts = ms_since(t0);
    t0 = Clock::now();
    Mat parallel = mat_mul(a, b);
    double tp = ms_since(t0);
    std::cout << "mul  " << fs.str() << " " << n << "x" << n << ": serial " << ts << " ms, omp " << tp
              << " ms, speedup " << (tp > 0 ? ts / tp : 0) << (serial == parallel ? "" : "  MISMATCH") << "\n";
}

void bench_presilting_batch() {
    Workspace ws = load_document(fixture_document("ex-8.6", 5));
    const TiltingColaxData& td = ws.tiltings.at("T");
    auto t0 = Clock::now();
    for (const auto& fib : td.fibers) check_presilting(fib);
    std::cout << "presilting batch over the n=5 gluing fixture: " << ms_since(t0) << " ms (jobs="
              << par::max_jobs << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    int jobs = argc > 1 ? std::atoi(argv[1]) : 0;
    par::set_jobs(jobs);
    Rng rng(0xbe9c4);
    bench_mul(FieldSpec::prime(65521), 192, rng);
    bench_rref(FieldSpec::prime(65521), 448, rng);
    bench_mul(FieldSpec::rationals(), 56, rng);
    bench_rref(FieldSpec::rationals(), 72, rng);
    bench_presilting_batch();
    return 0;
}
