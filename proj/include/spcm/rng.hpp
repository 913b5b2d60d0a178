#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace spcm {

/// Seeded generator owned by exactly one chain. All stochastic library code
/// draws through this wrapper so a fixed seed reproduces a run bit-for-bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    /// Uniform draw from {0, ..., n-1}.
    int uniform_int(int n) {
        return std::uniform_int_distribution<int>(0, n - 1)(engine_);
    }

    double normal() {
        return std::normal_distribution<double>(0.0, 1.0)(engine_);
    }

    double gamma(double shape, double rate = 1.0) {
        return std::gamma_distribution<double>(shape, 1.0 / rate)(engine_);
    }

    double chi_squared(double dof) {
        return std::chi_squared_distribution<double>(dof)(engine_);
    }

    int poisson(double mean) {
        return std::poisson_distribution<int>(mean)(engine_);
    }

    /// Index draw proportional to non-negative weights. Weights need not sum to one.
    int discrete(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = uniform() * total;
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
            acc += weights[k];
            if (u < acc) return static_cast<int>(k);
        }
        return static_cast<int>(weights.size()) - 1;
    }

    /// Fisher-Yates permutation of {0, ..., n-1}.
    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        for (int i = n - 1; i > 0; --i) {
            int j = uniform_int(i + 1);
            std::swap(p[i], p[j]);
        }
        return p;
    }

    /// Child seed; lets independent work streams fork deterministically.
    std::uint64_t fork_seed() { return engine_(); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace spcm
