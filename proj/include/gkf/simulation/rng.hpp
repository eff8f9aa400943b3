#pragma once

#include <cstdint>
#include <random>

#include <boost/random/normal_distribution.hpp>

namespace gkf::sim {

/// A reproducible random stream: identical (seed, stream_id) pairs give
/// identical draws, and distinct stream ids seed the engine differently.
class RngStream
{
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id)
    {
        // One engine per Monte Carlo sample, so seeding must be cheap: the pair is
        // hashed by two splitmix64 rounds into a single 64-bit engine seed.
        engine_.seed(splitmix64(splitmix64(seed) ^ stream_id));
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    double normal() { return normal_(engine_); }
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double chi_square(double dof) { return 2.0 * std::gamma_distribution<double>(0.5 * dof, 1.0)(engine_); }

    std::mt19937_64& engine() { return engine_; }

    static std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    boost::random::normal_distribution<double> normal_; // ziggurat
};

} // namespace gkf::sim
