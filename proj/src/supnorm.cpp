#include "padicr/supnorm.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace padicr {

namespace {
std::atomic<ExecPolicy> g_policy{ExecPolicy::Parallel};
}

ExecPolicy default_policy() { return g_policy.load(); }
void set_default_policy(ExecPolicy p) { g_policy.store(p); }

ScanBest max_scan_serial(size_t n, const ScanFn& fn, const std::optional<Rational>& stop_at) {
    ScanBest best;
    for (size_t i = 0; i < n; ++i) {
        auto c = fn(i);
        if (!c) continue;
        if (!best.has || *c < best.pexp) {
            best.has = true;
            best.pexp = *c;
            best.index = i;
            if (stop_at && best.pexp <= *stop_at) break;
        }
    }
    return best;
}

ScanBest max_scan_parallel(size_t n, const ScanFn& fn, const std::optional<Rational>& stop_at) {
#ifndef _OPENMP
    return max_scan_serial(n, fn, stop_at);
#else
    if (n < 64) return max_scan_serial(n, fn, stop_at);
    std::atomic<bool> stop{false};
    std::exception_ptr err = nullptr;
    int nthreads = omp_get_max_threads();
    std::vector<ScanBest> local((size_t)nthreads);
    constexpr size_t kChunk = 64;
    size_t nchunks = (n + kChunk - 1) / kChunk;
#pragma omp parallel num_threads(nthreads)
    {
        int tid = omp_get_thread_num();
        ScanBest mine;
#pragma omp for schedule(dynamic)
        for (long long ci = 0; ci < (long long)nchunks; ++ci) {
            if (stop.load(std::memory_order_relaxed)) continue;
            size_t lo = (size_t)ci * kChunk, hi = std::min(n, lo + kChunk);
            for (size_t i = lo; i < hi; ++i) {
                std::optional<Rational> c;
                try {
                    c = fn(i);
                } catch (...) {
#pragma omp critical
                    {
                        if (!err) err = std::current_exception();
                    }
                    stop.store(true);
                    break;
                }
                if (!c) continue;
                if (!mine.has || *c < mine.pexp || (*c == mine.pexp && i < mine.index)) {
                    mine.has = true;
                    mine.pexp = *c;
                    mine.index = i;
                    if (stop_at && mine.pexp <= *stop_at) stop.store(true);
                }
            }
        }
        local[(size_t)tid] = mine;
    }
    if (err) std::rethrow_exception(err);
    ScanBest best;
    for (const auto& m : local) {
        if (!m.has) continue;
        if (!best.has || m.pexp < best.pexp || (m.pexp == best.pexp && m.index < best.index))
            best = m;
    }
    // with early stop the winner may differ from the serial one only among
    // candidates of equal value, and ties resolve by smallest index across
    // the already-computed set; re-run the prefix to pin determinism
    if (stop_at && best.has && best.pexp <= *stop_at) {
        ScanBest pinned = max_scan_serial(best.index + 1, fn, stop_at);
        if (pinned.has) return pinned;
    }
    return best;
#endif
}

ScanBest max_scan(size_t n, const ScanFn& fn, const std::optional<Rational>& stop_at,
                  ExecPolicy pol) {
    return pol == ExecPolicy::Serial ? max_scan_serial(n, fn, stop_at)
                                     : max_scan_parallel(n, fn, stop_at);
}

// ---------------------------------------------------------------------------

AbsValue coset_gauss(const Field& F, const LocPolyFun::CoeffMap& coeffs, int scale_level) {
    GaussAcc acc;
    Rational fk((long long)F.f() * scale_level);
    for (const auto& [m, c] : coeffs) {
        AbsValue a = c.abs();
        if (!a.is_zero()) a.pexp = a.pexp + fk * Rational(m.total());
        acc.feed(a);
    }
    return acc.settle("coset_gauss");
}

AbsValue coset_gauss_upper(const Field& F, const LocPolyFun::CoeffMap& coeffs, int scale_level) {
    GaussAcc acc;
    Rational fk((long long)F.f() * scale_level);
    for (const auto& [m, c] : coeffs) {
        AbsValue a = c.abs();
        if (!a.is_zero()) a.pexp = a.pexp + fk * Rational(m.total());
        acc.feed(a);
    }
    return acc.settle_upper();
}

std::vector<uint16_t> tail_digits(uint64_t idx, int count, long long q) {
    std::vector<uint16_t> d((size_t)count);
    for (int t = 0; t < count; ++t) {
        d[(size_t)t] = (uint16_t)(idx % (uint64_t)q);
        idx /= (uint64_t)q;
    }
    return d;
}

std::optional<Rational> exact_abs_exp(const Field& F, const Scalar& v, bool retry_full) {
    (void)F;
    (void)retry_full;
    if (v.is_exact_zero()) return std::nullopt;
    if (v.kind() == Scalar::Kind::ZeroToPrec) return std::nullopt;  // callers retry at full precision
    return v.abs().pexp;
}

namespace {

struct SupBlock {
    CosetRep center;              // evaluation center inside the region
    LocPolyFun::CoeffMap coeffs;  // coefficients around that center
    int level;                    // offsets live at positions >= this
    AbsValue gauss;
};

AbsValue block_gauss(const Field& F, const LocPolyFun::CoeffMap& coeffs, int level) {
    GaussAcc acc;
    Rational fk((long long)F.f() * level);
    for (const auto& [m, c] : coeffs) {
        AbsValue a = c.abs();
        if (!a.is_zero()) a.pexp = a.pexp + fk * Rational(m.total());
        acc.feed(a);
    }
    return acc.settle_upper();
}

}  // namespace

// Branch-and-bound certified sup: the analytic upper comes from per-block
// Gauss bounds, blocks are split by one digit whenever the bound stays above
// the achieved maximum (the plain Gauss bound is not attained when same-grade
// terms cancel on the whole block, so subdivision is the honest refinement).
SupInterval sup_abs(const LocPolyFun& f, const CosetRep& region, int depth, ExecPolicy pol) {
    const auto& F = f.field();
    const int h = f.level();
    const int k = region.level();
    if (depth < k) throw InvalidParameters("sup_abs: depth below region level");

    SupInterval out;
    out.lower = AbsValue::zero();
    out.upper = AbsValue::zero();

    std::vector<SupBlock> frontier;
    if (k <= h) {
        for (const auto& [key, coeffs] : f.cosets()) {
            CosetRep c = F->unpack_rep(key, h);
            bool inside = true;
            for (int t = 0; t < k; ++t)
                if (c.digits[(size_t)t] != region.digits[(size_t)t]) { inside = false; break; }
            if (!inside) continue;
            frontier.push_back(SupBlock{c, coeffs, h, block_gauss(*F, coeffs, h)});
        }
    } else {
        CosetRep c = region.truncated(h);
        const auto* t = f.coset_table(c);
        if (t) {
            Scalar delta = Scalar::from_rep(F, region) - Scalar::from_rep(F, c);
            LocPolyFun::CoeffMap rc = recenter_coeffs(F, *t, delta);
            AbsValue g = block_gauss(*F, rc, k);
            frontier.push_back(SupBlock{region, std::move(rc), k, g});
        }
    }
    if (frontier.empty()) return out;  // zero on the region, tight

    AbsValue best = AbsValue::zero();  // achieved at an evaluated point
    std::vector<uint16_t> best_digits;
    auto feed_value = [&](const AbsValue& v, const std::vector<uint16_t>& digs) {
        if (v.is_zero() || !v.is_exact()) return;
        if (value_less(best, v)) {
            best = v;
            best_digits = digs;
        }
    };
    for (const auto& b : frontier) {
        auto it = b.coeffs.find(MultiIndex::zeros(F->d()));
        if (it != b.coeffs.end()) feed_value(it->second.abs(), b.center.padded(b.level).digits);
    }

    AbsValue resolved = AbsValue::zero();  // bound over pruned/retired blocks
    for (;;) {
        GaussAcc env;
        env.feed(best);
        env.feed(resolved);
        for (const auto& b : frontier) env.feed(b.gauss);
        out.upper = env.settle_upper();
        if (frontier.empty()) break;
        if (!best.is_zero() && value_eq(best, out.upper) && out.upper.is_exact()) break;

        std::vector<SupBlock> work;
        for (auto& b : frontier) {
            if ((!best.is_zero() && value_leq(b.gauss, best)) || b.level >= depth) {
                if (value_less(resolved, b.gauss)) resolved = b.gauss;
                continue;
            }
            work.push_back(std::move(b));
        }
        frontier.clear();
        if (work.empty()) {
            GaussAcc fin;
            fin.feed(best);
            fin.feed(resolved);
            out.upper = fin.settle_upper();
            break;
        }

        // phase 1: cheap sweep of child-center values to raise the achieved max
        struct Probe {
            Rational pexp;
            bool has = false;
        };
        std::vector<Probe> probes(work.size() * (size_t)(F->q() - 1));
        std::exception_ptr err = nullptr;
#ifdef _OPENMP
        bool par = pol == ExecPolicy::Parallel && probes.size() >= 32;
#pragma omp parallel for schedule(dynamic, 8) if (par)
#endif
        for (long long pi = 0; pi < (long long)probes.size(); ++pi) {
            try {
                const SupBlock& b = work[(size_t)pi / (size_t)(F->q() - 1)];
                uint16_t d = (uint16_t)(1 + (size_t)pi % (size_t)(F->q() - 1));
                Scalar w = Scalar::teichmuller(F, d).shift_pi(b.level);
                Scalar acc = Scalar::zero(F);
                for (const auto& [m, c] : b.coeffs) acc = acc + c * monomial_eval(w, m);
                if (acc.kind() == Scalar::Kind::Unit) {
                    probes[(size_t)pi].pexp = acc.abs().pexp;
                    probes[(size_t)pi].has = true;
                }
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        for (size_t pi = 0; pi < probes.size(); ++pi) {
            if (!probes[pi].has) continue;
            const SupBlock& b = work[pi / (size_t)(F->q() - 1)];
            uint16_t d = (uint16_t)(1 + pi % (size_t)(F->q() - 1));
            feed_value(AbsValue::exact(probes[pi].pexp), b.center.padded(b.level).child(d).digits);
        }

        // phase 2: materialize children only where the bound can still improve
        std::vector<SupBlock> parents;
        for (auto& b : work) {
            if (!best.is_zero() && value_leq(b.gauss, best)) {
                if (value_less(resolved, b.gauss)) resolved = b.gauss;
                continue;
            }
            parents.push_back(std::move(b));
        }
        std::vector<std::vector<SupBlock>> kids(parents.size());
#ifdef _OPENMP
        bool par2 = pol == ExecPolicy::Parallel && parents.size() >= 4;
#pragma omp parallel for schedule(dynamic) if (par2)
#endif
        for (long long bi = 0; bi < (long long)parents.size(); ++bi) {
            try {
                const SupBlock& b = parents[(size_t)bi];
                for (uint16_t d = 0; d < F->q(); ++d) {
                    SupBlock child;
                    child.center = b.center.padded(b.level).child(d);
                    child.level = b.level + 1;
                    child.coeffs =
                        d == 0 ? b.coeffs
                               : recenter_coeffs(F, b.coeffs,
                                                 Scalar::teichmuller(F, d).shift_pi(b.level));
                    child.gauss = block_gauss(*F, child.coeffs, child.level);
                    if (!child.gauss.is_zero()) kids[(size_t)bi].push_back(std::move(child));
                }
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        for (auto& ks : kids)
            for (auto& child : ks) frontier.push_back(std::move(child));
        std::sort(frontier.begin(), frontier.end(), [&](const SupBlock& a, const SupBlock& b) {
            return a.center.padded(a.level).digits < b.center.padded(b.level).digits;
        });
    }

    out.lower = best;
    if (!best.is_zero()) {
        CosetRep w;
        w.digits = best_digits;
        out.witness.x = w.str();
        out.witness.x_digits = best_digits;
    }
    assert(value_leq(out.lower, out.upper));
    return out;
}

}  // namespace padicr
