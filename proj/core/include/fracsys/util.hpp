#ifndef FRACSYS_UTIL_HPP
#define FRACSYS_UTIL_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace fracsys {

// k values from a to b inclusive, evenly spaced. k = 1 returns {a}.
std::vector<double> linspace(double a, double b, std::size_t k);

// k values from a to b inclusive, evenly spaced in log; requires a, b > 0.
std::vector<double> logspace(double a, double b, std::size_t k);

// Worker count for parallel sections: FRACSYS_THREADS caps it, 0 or unset
// means hardware concurrency.
std::size_t worker_count();

// Runs fn(i) for i in [0, n) on up to worker_count() threads. Results must be
// written to caller-owned per-index slots; the call returns after all indices
// complete, so any reduction done afterwards is in a fixed order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Locale-independent shortest round-trip formatting, for reproducible files.
std::string format_double(double v);

}  // namespace fracsys

#endif
