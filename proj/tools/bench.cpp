// Benchmark: serial reference vs OpenMP kernel on the two scan-heavy loads,
// a certified sup enumeration and a moment-envelope sweep.

#include <chrono>
#include <iostream>

#include "padicr/distribution.hpp"

using namespace padicr;

namespace {

double time_ms(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::cout << name << ": serial " << serial_ms << " ms, openmp " << parallel_ms << " ms";
    if (parallel_ms > 0) std::cout << "  (x" << serial_ms / parallel_ms << ")";
    std::cout << "\n";
}

}  // namespace

int main() {
    auto F = Field::make(FieldDescriptor{3, 2, 1}, 32);

    // sup enumeration over a dense level-2 function, forced full depth
    LocPolyFun f(F, 2);
    for (const auto& a : F->residue_system(2)) {
        long long v = 1 + (long long)(F->pack_rep(a) % 7);
        f.set_coeff(a, MultiIndex({1, 1}), Scalar::from_int(F, v));
        f.set_coeff(a, MultiIndex({2, 0}), Scalar::from_int(F, v + 1).shift_pi(1));
    }
    CosetRep whole;
    SupInterval si_serial, si_parallel;
    double s1 = time_ms([&] { si_serial = sup_abs(f, whole, 5, ExecPolicy::Serial); });
    double p1 = time_ms([&] { si_parallel = sup_abs(f, whole, 5, ExecPolicy::Parallel); });
    report("sup_abs depth 5 (q=9)", s1, p1);
    if (!value_eq(si_serial.lower, si_parallel.lower) ||
        !value_eq(si_serial.upper, si_parallel.upper)) {
        std::cout << "MISMATCH between serial and parallel results\n";
        return 1;
    }

    // moment envelope sweep (Dirac has per-coset work, no memo shortcut)
    auto F5 = Field::make(FieldDescriptor{5, 1, 1}, 32);
    CosetRep pt;
    pt.digits = {2, 3, 1, 4};
    DiracOracle mu(F5, pt, 8);
    AvvReport a_serial, a_parallel;
    double s2 = time_ms([&] { a_serial = avv_check(mu, Rational(1), 8, 7, ExecPolicy::Serial); });
    double p2 =
        time_ms([&] { a_parallel = avv_check(mu, Rational(1), 8, 7, ExecPolicy::Parallel); });
    report("avv_check depth 7 (p=5)", s2, p2);
    if (!value_eq(a_serial.C_estimate, a_parallel.C_estimate) ||
        a_serial.argmax_n != a_parallel.argmax_n) {
        std::cout << "MISMATCH between serial and parallel results\n";
        return 1;
    }

    std::cout << "serial and openmp kernels agree\n";
    return 0;
}
