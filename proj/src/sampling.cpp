#include "kkforms/sampling.hpp"

#include <cmath>
#include <random>

namespace kkforms {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace

double radical_inverse(std::uint64_t i, int base) {
  const double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

std::vector<ChartPoint> sample_points(const Domain& domain, int count, std::uint64_t seed) {
  const int d = domain.dim();
  if (d < 1 || static_cast<int>(domain.hi.size()) != d) throw InvalidArgument("sample_points: malformed domain box");
  if (d > static_cast<int>(std::size(kPrimes))) throw InvalidArgument("sample_points: dimension too large");
  if (count < 0) throw InvalidArgument("sample_points: negative count");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> shift(static_cast<std::size_t>(d));
  for (auto& s : shift) s = u(rng);

  std::vector<ChartPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  const std::uint64_t max_tries = 1000 * static_cast<std::uint64_t>(count) + 1000;
  std::vector<double> x(static_cast<std::size_t>(d));
  for (std::uint64_t i = 1; static_cast<int>(out.size()) < count; ++i) {
    if (i > max_tries) throw InvalidArgument("sample_points: domain predicate rejects almost every point");
    for (int a = 0; a < d; ++a) {
      const std::size_t s = static_cast<std::size_t>(a);
      double t = radical_inverse(i, kPrimes[a]) + shift[s];
      t -= std::floor(t);
      x[s] = domain.lo[s] + t * (domain.hi[s] - domain.lo[s]);
    }
    ChartPoint p(x);
    if (domain.contains(p)) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace kkforms
