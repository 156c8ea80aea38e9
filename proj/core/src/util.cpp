#include "fracsys/util.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace fracsys {

std::vector<double> linspace(double a, double b, std::size_t k) {
  if (k == 0) return {};
  if (k == 1) return {a};
  std::vector<double> out(k);
  const double step = (b - a) / static_cast<double>(k - 1);
  for (std::size_t i = 0; i < k; ++i) out[i] = a + step * static_cast<double>(i);
  out.back() = b;
  return out;
}

std::vector<double> logspace(double a, double b, std::size_t k) {
  if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("logspace requires positive endpoints");
  if (k == 0) return {};
  if (k == 1) return {a};
  std::vector<double> out(k);
  const double la = std::log(a), lb = std::log(b);
  const double step = (lb - la) / static_cast<double>(k - 1);
  for (std::size_t i = 0; i < k; ++i) out[i] = std::exp(la + step * static_cast<double>(i));
  out.back() = b;
  return out;
}

std::size_t worker_count() {
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const char* env = std::getenv("FRACSYS_THREADS");
  if (env == nullptr) return hw;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v < 0) return hw;
  if (v == 0) return hw;
  return std::min<std::size_t>(hw, static_cast<std::size_t>(v));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace fracsys
