#pragma once

#include <doctest.h>

#include <random>

#include "ekgw/modular.hpp"

namespace ekgw::test {

inline bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

// deterministic points of the fundamental parallelogram
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
    cplx point(const ModularPoint& m) { return uniform(-0.5, 0.5) + uniform(-0.5, 0.5) * m.tau(); }

private:
    std::mt19937_64 rng_;
};

}  // namespace ekgw::test
