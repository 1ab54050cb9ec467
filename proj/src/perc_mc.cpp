#include "clefour/perc_mc.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace clefour {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-style stream keyed by (seed, sample index), so results do not depend
// on how samples are split across workers.
struct BitStream {
    std::uint64_t state;
    BitStream(std::uint64_t seed, std::uint64_t sample)
        : state(mix64(seed ^ mix64(sample ^ 0x9E3779B97F4A7C15ULL))) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        return mix64(state);
    }
};

// Sliding-row cluster tracker over maximal open runs.  A row is reduced to its
// run list; each run matches the previous row's runs on the overlap window
// [start-1, end] (W, S, SW adjacency of the square-plus-diagonal lattice), so
// work per row scales with the number of runs, not sites, and the whole state
// is a few O(width) arrays that stay cache-resident.  Clusters carry a small
// bit mask (boundary segments, box edges); masks travel with merges, and a
// marked cluster that dies mid-sweep leaves its mask in a retirement list.
struct RowSweep {
    int W, L, words;
    std::vector<std::uint64_t> bits;                  // current row occupancy
    std::vector<std::int32_t> cs, ce, cl;             // current row runs
    std::vector<std::int32_t> ps, pe, pl;             // previous row runs
    std::vector<std::int32_t> lparent;                // label pool
    std::vector<std::uint8_t> lmask;
    std::vector<std::int32_t> stamp;                  // last row with sites, or kRetired
    std::vector<std::int32_t> freelist, pending, pending_old;
    std::vector<std::uint8_t> finished;               // masks of retired marked clusters
    int alloc_count = 0;

    static constexpr std::int32_t kRetired = -2;

    RowSweep(int width, int rows)
        : W(width), L(rows), words((width + 63) / 64), bits(words),
          lparent(3 * width + 16), lmask(lparent.size()), stamp(lparent.size()) {
        const int cap = width / 2 + 2;
        cs.reserve(cap);
        ce.reserve(cap);
        cl.reserve(cap);
        ps.reserve(cap);
        pe.reserve(cap);
        pl.reserve(cap);
        freelist.reserve(lparent.size());
        pending.reserve(cap);
        pending_old.reserve(cap);
        finished.reserve(32);
    }

    bool open(int x) const { return (bits[x >> 6] >> (x & 63)) & 1u; }

    int alloc() {
        int l;
        if (!freelist.empty()) {
            l = freelist.back();
            freelist.pop_back();
        } else {
            if (alloc_count == static_cast<int>(lparent.size()))
                throw std::logic_error("row sweep: label pool exhausted");
            l = alloc_count++;
        }
        lparent[l] = l;
        lmask[l] = 0;
        stamp[l] = -1;
        return l;
    }

    int find(int v) {
        while (lparent[v] != v) {
            lparent[v] = lparent[lparent[v]];
            v = lparent[v];
        }
        return v;
    }

    // both arguments must be roots; the first survives
    int merge(int a, int b) {
        if (a == b) return a;
        lparent[b] = a;
        lmask[a] |= lmask[b];
        pending.push_back(b);   // still reachable from this row's entries
        return a;
    }

    void begin_sample() {
        alloc_count = 0;
        freelist.clear();
        ps.clear();
        pe.clear();
        pl.clear();
        pending.clear();
        pending_old.clear();
        finished.clear();
    }

    void draw_row(BitStream& rng, int y, bool wired) {
        for (int k = 0; k < words; ++k) bits[k] = rng.next();
        if (wired) {
            bits[0] |= 1ULL;
            bits[(W - 1) >> 6] |= 1ULL << ((W - 1) & 63);
            if (y == L - 1)
                for (int k = 0; k < words; ++k) bits[k] = ~0ULL;
        }
        if (W & 63) bits[words - 1] &= (1ULL << (W & 63)) - 1;
    }

    void build_runs() {
        cs.clear();
        ce.clear();
        bool carry = false;
        for (int k = 0; k < words; ++k) {
            const std::uint64_t w = bits[k];
            if (!w) {
                carry = false;
                continue;
            }
            const int base = k << 6;
            int pos = 0;
            while (pos < 64) {
                const std::uint64_t rest = w >> pos;
                if (!rest) break;
                const int s = pos + std::countr_zero(rest);
                const int len = std::countr_one(w >> s);
                if (s == 0 && carry)
                    ce.back() = base + len - 1;
                else {
                    cs.push_back(base + s);
                    ce.push_back(base + s + len - 1);
                }
                carry = (s + len == 64);
                pos = s + len + 1;
            }
        }
        cl.resize(cs.size());
    }

    void assign_runs(int y) {
        const int pn = static_cast<int>(ps.size());
        int p = 0;
        for (int i = 0; i < static_cast<int>(cs.size()); ++i) {
            const int lo = cs[i] - 1, hi = ce[i];
            while (p < pn && pe[p] < lo) ++p;
            int lab = -1, q = p;
            while (q < pn && ps[q] <= hi) {
                const int root = find(pl[q]);
                pl[q] = root;
                lab = lab < 0 ? root : merge(lab, root);
                ++q;
            }
            if (lab < 0) lab = alloc();
            cl[i] = lab;
            stamp[lab] = y;
            if (q > p) p = q - 1;   // the last matched run may span the next window
        }
    }

    // clusters with no run in row y ended below it; record marked ones
    void retire(int y) {
        for (const int l : pl) {
            const int r = find(l);
            if (stamp[r] == y || stamp[r] == kRetired) continue;
            if (lmask[r]) finished.push_back(lmask[r]);
            stamp[r] = kRetired;
            freelist.push_back(r);
        }
        // merge losers two rows back have no live references left
        for (const int l : pending_old) freelist.push_back(l);
        pending_old.swap(pending);
        pending.clear();
        ps.swap(cs);
        pe.swap(ce);
        pl.swap(cl);
    }

    // call between assign_runs and retire
    void mark_run(int i, std::uint8_t m) { lmask[find(cl[i])] |= m; }

    bool any_mask(std::uint8_t m) {
        for (const int l : cl)
            if (lmask[find(l)] & m) return true;
        return false;
    }

    // run index covering column x, or -1
    int run_at(int x) const {
        const auto it = std::upper_bound(cs.begin(), cs.end(), x);
        if (it == cs.begin()) return -1;
        const int i = static_cast<int>(it - cs.begin()) - 1;
        return ce[i] >= x ? i : -1;
    }

    // after the last retire() the final row's labels sit on the "previous" side
    void collect_live() {
        for (const int l : pl) {
            const std::uint8_t m = lmask[find(l)];
            if (m) finished.push_back(m);   // duplicates collapse in classification
        }
    }
};

struct Counts {
    long long n_1234 = 0, n_12_34 = 0, n_14_23 = 0, n_13_24 = 0, n_other = 0;
    void operator+=(const Counts& c) {
        n_1234 += c.n_1234;
        n_12_34 += c.n_12_34;
        n_14_23 += c.n_14_23;
        n_13_24 += c.n_13_24;
        n_other += c.n_other;
    }
};

// Collapse the retired cluster masks into the wiring pattern of the four
// bottom-row segments; clusters touching several segments merge them, and
// transitive chains collapse through the four-element union-find.
void classify(const std::vector<std::uint8_t>& masks, const bool occupied[4], Counts& out) {
    if (!(occupied[0] && occupied[1] && occupied[2] && occupied[3])) {
        ++out.n_other;
        return;
    }
    int segp[4] = {0, 1, 2, 3};
    auto sfind = [&](int s) {
        while (segp[s] != s) s = segp[s];
        return s;
    };
    for (const std::uint8_t m : masks) {
        int first = -1;
        for (int s = 0; s < 4; ++s) {
            if (!(m & (1u << s))) continue;
            if (first < 0) {
                first = s;
                continue;
            }
            const int A = sfind(first), B = sfind(s);
            if (A != B) segp[std::max(A, B)] = std::min(A, B);
        }
    }
    const int r0 = sfind(0), r1 = sfind(1), r2 = sfind(2), r3 = sfind(3);
    if (r0 == r1 && r1 == r2 && r2 == r3)
        ++out.n_1234;
    else if (r0 == r1 && r2 == r3)
        ++out.n_12_34;
    else if (r0 == r3 && r1 == r2)
        ++out.n_14_23;
    else if (r0 == r2 && r1 == r3)
        ++out.n_13_24;
    else
        ++out.n_other;
}

int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Runs body(worker, lo, hi) over a contiguous partition of [0, samples).
template <class Body>
void parallel_samples(long samples, int workers, Body body) {
    const int nw = std::min<long>(resolve_workers(workers), samples);
    if (nw <= 1) {
        body(0, 0L, samples);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int t = 0; t < nw; ++t) {
        const long lo = samples * t / nw;
        const long hi = samples * (t + 1) / nw;
        pool.emplace_back([=] { body(t, lo, hi); });
    }
    for (auto& th : pool) th.join();
}

} // namespace

double ConnectivityResult::lambda() const {
    const double d = static_cast<double>(a - b) / static_cast<double>(a + b);
    return d * d;
}

double ConnectivityResult::ratio() const {
    const long long den = denominator();
    if (den <= 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(n_14_23) / static_cast<double>(den);
}

double ConnectivityResult::ratio_stderr() const {
    const long long den = denominator();
    if (den < 2) return std::numeric_limits<double>::infinity();
    const double p = ratio();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(den));
}

ConnectivityResult run_connectivity(const ConnectivityParams& params) {
    const int W = params.width, L = params.L;
    const int a = params.a, b = params.b, w = params.w;
    if (L < 4 || W < 4 || params.samples < 1)
        throw DomainError("connectivity: box or sample count too small");
    if (w < 0 || b < w + 1 || a - b < 2 * w + 1)
        throw DomainError("connectivity: segments overlap");
    const int cx = W / 2;
    // keep the marked span inside the central half of the bottom edge
    if (cx - a - w < W / 4 || cx + a + w > W - W / 4 - 1)
        throw DomainError("connectivity: segments leave the central half of the boundary");

    const int centers[4] = {cx - a, cx - b, cx + b, cx + a};
    const int nw = resolve_workers(params.workers);
    std::vector<Counts> partial(std::max(nw, 1));
    std::vector<std::array<bool, 4>> seen(std::max(nw, 1), {false, false, false, false});

    parallel_samples(params.samples, params.workers, [&](int worker, long lo, long hi) {
        RowSweep sweep(W, L);
        Counts local;
        bool occ[4] = {false, false, false, false};
        for (long s = lo; s < hi; ++s) {
            BitStream rng(params.seed, static_cast<std::uint64_t>(s));
            sweep.begin_sample();
            bool sample_occ[4] = {false, false, false, false};
            for (int y = 0; y < L; ++y) {
                sweep.draw_row(rng, y, params.wired_far_boundary);
                sweep.build_runs();
                sweep.assign_runs(y);
                if (y == 0) {
                    for (int g = 0; g < 4; ++g) {
                        const int wlo = centers[g] - w, whi = centers[g] + w;
                        for (int i = 0; i < static_cast<int>(sweep.cs.size()); ++i) {
                            if (sweep.cs[i] > whi || sweep.ce[i] < wlo) continue;
                            sample_occ[g] = true;
                            sweep.mark_run(i, static_cast<std::uint8_t>(1u << g));
                        }
                    }
                }
                sweep.retire(y);
            }
            sweep.collect_live();
            classify(sweep.finished, sample_occ, local);
            for (int g = 0; g < 4; ++g) occ[g] = occ[g] || sample_occ[g];
        }
        partial[worker] += local;
        for (int g = 0; g < 4; ++g) seen[worker][g] = occ[g];
    });

    ConnectivityResult res;
    for (const Counts& c : partial) {
        res.n_1234 += c.n_1234;
        res.n_12_34 += c.n_12_34;
        res.n_14_23 += c.n_14_23;
        res.n_13_24 += c.n_13_24;
        res.n_other += c.n_other;
    }
    for (int g = 0; g < 4; ++g) {
        bool ever = false;
        for (const auto& m : seen) ever = ever || m[g];
        if (!ever) throw DomainError("connectivity: a segment never met an open site");
    }
    res.samples = params.samples;
    res.a = a;
    res.b = b;
    return res;
}

double crossing_probability(int L, long samples, std::uint64_t seed, int workers) {
    if (L < 2 || samples < 1) throw DomainError("crossing: box or sample count too small");
    const int nw = resolve_workers(workers);
    std::vector<long long> partial(std::max(nw, 1), 0);

    parallel_samples(samples, workers, [&](int worker, long lo, long hi) {
        RowSweep sweep(L, L);
        long long crossed = 0;
        for (long s = lo; s < hi; ++s) {
            BitStream rng(seed, static_cast<std::uint64_t>(s));
            sweep.begin_sample();
            for (int y = 0; y < L; ++y) {
                sweep.draw_row(rng, y, false);
                sweep.build_runs();
                sweep.assign_runs(y);
                if (!sweep.cs.empty()) {
                    if (sweep.cs.front() == 0) sweep.mark_run(0, 1u);
                    if (sweep.ce.back() == L - 1)
                        sweep.mark_run(static_cast<int>(sweep.cs.size()) - 1, 2u);
                }
                bool spans = false;
                for (const int l : sweep.cl)
                    if ((sweep.lmask[sweep.find(l)] & 3u) == 3u) {
                        spans = true;
                        break;
                    }
                if (spans) {
                    ++crossed;
                    break;
                }
                sweep.retire(y);
            }
        }
        partial[worker] += crossed;
    });

    long long crossed = 0;
    for (long long c : partial) crossed += c;
    return static_cast<double>(crossed) / static_cast<double>(samples);
}

OneArmFit one_arm_exponent(const std::vector<int>& sizes, long samples, std::uint64_t seed,
                           int workers) {
    if (sizes.size() < 2) throw DomainError("one-arm: need at least two box sizes");
    OneArmFit fit;
    for (int L : sizes) {
        if (L < 4) throw DomainError("one-arm: box too small");
        const int W = 2 * L;
        const int cx = W / 2;
        const int nw = resolve_workers(workers);
        std::vector<long long> partial(std::max(nw, 1), 0);

        parallel_samples(samples, workers, [&](int worker, long lo, long hi) {
            RowSweep sweep(W, L);
            long long hits = 0;
            for (long s = lo; s < hi; ++s) {
                BitStream rng(seed ^ (0x5bf0'3635'dc1d'9c2bULL * L),
                              static_cast<std::uint64_t>(s));
                sweep.begin_sample();
                bool alive = false;
                for (int y = 0; y < L; ++y) {
                    sweep.draw_row(rng, y, false);
                    sweep.build_runs();
                    if (y == 0) {
                        sweep.assign_runs(0);
                        const int i = sweep.run_at(cx);
                        if (i < 0) break;   // closed origin: immediate miss
                        sweep.mark_run(i, 1u);
                        alive = true;
                    } else {
                        sweep.assign_runs(y);
                        alive = sweep.any_mask(1u);
                        if (!alive) break;   // the marked cluster ended short of the top
                    }
                    sweep.retire(y);
                }
                if (alive) ++hits;
            }
            partial[worker] += hits;
        });

        long long hits = 0;
        for (long long h : partial) hits += h;
        fit.points.emplace_back(L, static_cast<double>(hits) / static_cast<double>(samples));
    }

    // least-squares slope of ln P against ln L
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(fit.points.size());
    for (const auto& [L, p] : fit.points) {
        if (!(p > 0)) throw ConvergenceError("one-arm: vanishing probability estimate");
        const double x = std::log(static_cast<double>(L)), y = std::log(p);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.exponent = -slope;
    return fit;
}

std::pair<int, int> choose_offsets(double lambda_target, int w, int a_min, int a_max) {
    if (!(lambda_target > 0.0 && lambda_target < 1.0))
        throw DomainError("choose_offsets: cross-ratio must lie in (0,1)");
    int best_a = -1, best_b = -1;
    double best_err = std::numeric_limits<double>::infinity();
    for (int a = a_min; a <= a_max; ++a) {
        for (int b = w + 1; a - b >= 2 * w + 1; ++b) {
            const double d = static_cast<double>(a - b) / static_cast<double>(a + b);
            const double err = std::fabs(d * d - lambda_target);
            if (err < best_err) {
                best_err = err;
                best_a = a;
                best_b = b;
            }
        }
    }
    if (best_a < 0) throw DomainError("choose_offsets: no admissible geometry");
    return {best_a, best_b};
}

} // namespace clefour
