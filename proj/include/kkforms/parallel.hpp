#pragma once

// Point-parallel map. The serial path is the reference implementation; the
// OpenMP path must produce identical per-point results (each point is a pure
// function of its input, results land in their own slot).

#include <exception>
#include <vector>

#include <omp.h>

namespace kkforms {

enum class Exec { serial, parallel };

template <class R, class In, class F>
std::vector<R> map_points(const std::vector<In>& in, F&& f, Exec exec = Exec::parallel) {
  const long n = static_cast<long>(in.size());
  std::vector<R> out(in.size());
  if (exec == Exec::serial) {
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(in[static_cast<std::size_t>(i)]);
    return out;
  }
  // Errors are kept per slot so the one rethrown is the same as in the serial path.
  std::vector<std::exception_ptr> err(in.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(in[static_cast<std::size_t>(i)]);
    } catch (...) {
      err[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : err) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace kkforms
