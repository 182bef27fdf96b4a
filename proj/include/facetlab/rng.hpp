#pragma once

#include <cstdint>
#include <vector>

namespace ftl {

// Counter-seeded xoshiro256++ stream. Streams are derived by hashing
// (master_seed, stream_index) through splitmix64, so the same pair always
// reproduces the same sequence and distinct indices give independent
// streams. Cheap to construct, safe to move across threads.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double();

  // Uniform in (0, 1]; used where log() must not see zero.
  double next_double_open();

  // Standard normal via Box-Muller. The spare value is cached, so draws
  // come in deterministic pairs.
  double next_gaussian();

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  std::uint64_t s_[4];
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct PointCloud {
  int dim = 0;
  long count = 0;
  std::vector<double> coords;  // flat, count x dim

  const double* point(long i) const { return coords.data() + i * dim; }
  double* point(long i) { return coords.data() + i * dim; }
};

// N i.i.d. uniform points on S^{n-1}, generated as normalized Gaussian
// vectors. Throws std::invalid_argument for n < 2 or count < 1.
PointCloud sample_sphere(RngStream& rng, int n, long count);

// Fills one unit vector (n entries) in place.
void sample_sphere_point(RngStream& rng, int n, double* out);

}  // namespace ftl
