#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "rmmcop/bivariate.hpp"
#include "rmmcop/ncopula.hpp"

namespace rmmcop {

/// Seeded pseudo-random draws from a copula.  Identical (spec, n, seed)
/// reproduce the batch bit for bit.
struct SampleBatch {
  int dim = 2;
  std::uint64_t seed = 0;
  std::vector<std::array<double, 3>> points;  // third coordinate unused in 2-d
};

/// Conditional-inversion sampler: draw u and t uniform, then take the
/// leftmost v with dC/du(u, v) >= t, the conditional cdf coming from a
/// symmetric difference quotient.  Atoms of the conditional cdf collapse an
/// interval of t values onto a single v, which places samples on singular
/// curves.
SampleBatch sample2(const BivariateCopula& c, std::size_t n,
                    std::uint64_t seed);

/// Trivariate sampler: (u1,u2) from the marginal C(.,.,1) as in sample2,
/// then u3 inverted from the conditional cdf
///   z -> d2C/du1du2(u1,u2,z) / d2C/du1du2(u1,u2,1)
/// with the mixed partial taken by a 4-point difference quotient.  Pairs with
/// vanishing conditional mass are redrawn up to a retry cap.
SampleBatch sample3(const NCopula& c, std::size_t n, std::uint64_t seed);

/// CSV with header u1,u2[,u3], one row per point, 10 significant digits.
void export_csv(const SampleBatch& batch, const std::filesystem::path& path);

/// Counter-based generator (splitmix64) so batches are reproducible across
/// platforms; not for cryptographic use.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();  // in [0,1)

 private:
  std::uint64_t state_;
};

}  // namespace rmmcop
