#include <cmath>

#include "schatten/errors.hpp"
#include "schatten/rng.hpp"
#include "schatten/samplers.hpp"

namespace schatten {

SampleBatch ball_pushforward(const SampleBatch& gas, std::uint64_t seed) {
  SampleBatch out;
  out.params = gas.params;
  out.p = gas.p;
  out.diagnostics = gas.diagnostics;
  out.diagnostics.sampler = "pushforward(" + gas.diagnostics.sampler + ")";
  if (gas.p.is_infinite()) {
    // The cube-restricted gas already is the ball-restricted measure.
    out.points = gas.points;
    return out;
  }
  const double d = static_cast<double>(gas.params.total_degree());
  const double inv_d = 1.0 / d;
  std::mt19937_64 rng = make_stream(seed, 0x70f);
  out.points.resize(gas.points.rows(), gas.points.cols());
  std::vector<long> kept_per_chain = gas.diagnostics.chain_lengths;
  long write = 0;
  long read = 0;
  for (std::size_t chain = 0; chain < kept_per_chain.size(); ++chain) {
    const long len = gas.diagnostics.chain_lengths[chain];
    long kept = 0;
    for (long s = 0; s < len; ++s, ++read) {
      const double u = uniform_open(rng);
      const double norm = lp_norm(gas.points.col(read), gas.p);
      if (!(norm > 0.0)) continue;
      out.points.col(write++) = std::pow(u, inv_d) / norm * gas.points.col(read);
      ++kept;
    }
    kept_per_chain[chain] = kept;
  }
  if (read != gas.points.cols()) throw DimensionMismatch("sample batch chain lengths do not cover its draws");
  out.points.conservativeResize(Eigen::NoChange, write);
  out.diagnostics.chain_lengths = kept_per_chain;
  return out;
}

}  // namespace schatten
