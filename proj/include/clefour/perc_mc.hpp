#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "clefour/errors.hpp"

namespace clefour {

// Site percolation at p = 1/2 on the triangular lattice, realized as a square
// grid with one diagonal: neighbors (+-1,0), (0,+-1), (+-1,+-1) along (1,1).

struct ConnectivityParams {
    int L = 512;             // rows
    int width = 768;         // columns
    int a = 64, b = 18;      // outer/inner marked half-offsets on the bottom row
    int w = 3;               // segment half-width
    long samples = 200000;
    std::uint64_t seed = 1;
    int workers = 0;         // 0 -> hardware concurrency
    // Far-boundary A/B switch: false = sites beyond the box absent (default),
    // true = left/right/top edges forced open (maximal far-side wiring).
    bool wired_far_boundary = false;
};

struct ConnectivityResult {
    long long n_1234 = 0, n_12_34 = 0, n_14_23 = 0, n_13_24 = 0, n_other = 0;
    long long samples = 0;
    int a = 0, b = 0;

    double lambda() const;                       // ((a-b)/(a+b))^2
    long long denominator() const { return n_1234 + n_12_34 + n_14_23; }
    double ratio() const;                        // n_14_23 / denominator
    double ratio_stderr() const;
};

// Per-sample keyed counter RNG: counts depend only on (seed, samples), not on
// the worker partition.
ConnectivityResult run_connectivity(const ConnectivityParams& params);

// Left-right crossing of an L x L rhombus; exactly 1/2 in the ensemble.
double crossing_probability(int L, long samples, std::uint64_t seed, int workers = 0);

struct OneArmFit {
    double exponent;                              // decay power of P(L)
    std::vector<std::pair<int, double>> points;   // (L, estimated probability)
};

// P[bottom-center site's cluster reaches the top row] ~ L^{-1/3}.
OneArmFit one_arm_exponent(const std::vector<int>& sizes, long samples, std::uint64_t seed,
                           int workers = 0);

// Integer offsets (a, b) whose cross-ratio ((a-b)/(a+b))^2 best matches the
// target, with segments of half-width w kept disjoint.
std::pair<int, int> choose_offsets(double lambda_target, int w, int a_min, int a_max);

} // namespace clefour
