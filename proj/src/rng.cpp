#include "facetlab/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ftl {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
  std::uint64_t x = master_seed ^ (stream_index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  for (auto& s : s_) s = splitmix64(x);
  // All-zero state is unreachable: splitmix64 is a bijection of a counter.
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_double_open() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_double_open();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 6.283185307179586476925286766559 * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

void sample_sphere_point(RngStream& rng, int n, double* out) {
  while (true) {
    double norm2 = 0.0;
    for (int j = 0; j < n; ++j) {
      out[j] = rng.next_gaussian();
      norm2 += out[j] * out[j];
    }
    if (norm2 > 1e-300) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (int j = 0; j < n; ++j) out[j] *= inv;
      return;
    }
  }
}

PointCloud sample_sphere(RngStream& rng, int n, long count) {
  if (n < 2) throw std::invalid_argument("sample_sphere: n must be >= 2");
  if (count < 1) throw std::invalid_argument("sample_sphere: count must be >= 1");
  PointCloud cloud;
  cloud.dim = n;
  cloud.count = count;
  cloud.coords.resize(static_cast<std::size_t>(count) * n);
  for (long i = 0; i < count; ++i) sample_sphere_point(rng, n, cloud.point(i));
  return cloud;
}

}  // namespace ftl
