#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "padicr/rational.hpp"

namespace padicr {

enum class ExecPolicy { Serial, Parallel };

// process-wide default; Parallel falls back to the serial path when built
// without OpenMP
ExecPolicy default_policy();
void set_default_policy(ExecPolicy p);

struct ScanBest {
    bool has = false;
    Rational pexp;      // candidate value is p^{-pexp}; max value = min pexp
    size_t index = 0;   // smallest index among ties (deterministic)
};

using ScanFn = std::function<std::optional<Rational>(size_t)>;

// Max-reduction of |candidate(i)| over i in [0,n).  fn returns the exact
// p-exponent of the candidate or nullopt to skip.  If stop_at is given, the
// scan may return as soon as a candidate reaches value p^{-stop_at} (i.e.
// pexp <= stop_at): that candidate is already a certified maximum.
// Serial reference implementation; kept independently of the OpenMP kernel.
ScanBest max_scan_serial(size_t n, const ScanFn& fn,
                         const std::optional<Rational>& stop_at = std::nullopt);
// OpenMP kernel; identical results including tie-breaks.
ScanBest max_scan_parallel(size_t n, const ScanFn& fn,
                           const std::optional<Rational>& stop_at = std::nullopt);
ScanBest max_scan(size_t n, const ScanFn& fn,
                  const std::optional<Rational>& stop_at = std::nullopt,
                  ExecPolicy pol = default_policy());

}  // namespace padicr
