#pragma once

// Deterministic instance generators. All randomness flows through a
// splitmix64 stream seeded explicitly, so identical specs reproduce
// identical graphs on every platform.

#include "core.hpp"

#include <memory>

namespace arcbound {

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return double(next() >> 11) * 0x1.0p-53; }
    bool next_bit() { return next() & 1; }
};

// Tournament on n vertices; each pair oriented by one stream draw, pairs
// visited in lexicographic order.
inline OrientedGraph random_tournament(int n, std::uint64_t seed) {
    OrientedGraph d(n);
    SplitMix64 rng(seed);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (rng.next_bit())
                d.add_arc(u, v);
            else
                d.add_arc(v, u);
        }
    return d;
}

// Each pair becomes adjacent with probability p, then oriented uniformly.
// Two draws per pair regardless of the first outcome, keeping the arc set
// of a given seed stable under changes to p only where thresholds cross.
inline OrientedGraph random_oriented(int n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw contract_error("arc probability outside [0,1]");
    OrientedGraph d(n);
    SplitMix64 rng(seed);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool present = rng.next_unit() < p;
            bool forward = rng.next_bit();
            if (!present) continue;
            if (forward)
                d.add_arc(u, v);
            else
                d.add_arc(v, u);
        }
    return d;
}

namespace detail {

inline bool is_prime(int q) {
    if (q < 2) return false;
    for (int f = 2; (long long)f * f <= q; ++f)
        if (q % f == 0) return false;
    return true;
}

}  // namespace detail

// Quadratic residue tournament: vertices 0..q-1, arc i -> j iff j - i is a
// nonzero square mod q. Needs q prime with q = 3 (mod 4) so that exactly one
// of x, -x is a residue and every pair gets one arc.
inline OrientedGraph qr_tournament(int q) {
    if (!detail::is_prime(q) || q % 4 != 3)
        throw contract_error("qr_tournament needs a prime q = 3 (mod 4), got " + std::to_string(q));
    std::vector<char> is_square(q, 0);
    for (int x = 1; x < q; ++x) is_square[(long long)x * x % q] = 1;
    OrientedGraph d(q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            if (i != j && is_square[((j - i) % q + q) % q]) d.add_arc(i, j);
    return d;
}

// Acyclic tournament: arcs run from smaller to larger id.
inline OrientedGraph transitive_tournament(int n) {
    OrientedGraph d(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) d.add_arc(u, v);
    return d;
}

// Directed cycle 0 -> 1 -> ... -> n-1 -> 0; needs n >= 3 to avoid a digon.
inline OrientedGraph directed_cycle(int n) {
    if (n < 3) throw contract_error("directed_cycle needs n >= 3");
    OrientedGraph d(n);
    for (int v = 0; v < n; ++v) d.add_arc(v, (v + 1) % n);
    return d;
}

// Replace base vertex i by an independent set of parts[i] copies; every base
// arc i -> j becomes all arcs between the copy blocks. Copy c of vertex i
// gets id offset(i) + c with blocks laid out in base id order.
inline OrientedGraph blowup(const OrientedGraph& base, const std::vector<int>& parts) {
    if (int(parts.size()) != base.n())
        throw contract_error("blowup needs one part size per base vertex");
    std::vector<int> offset(base.n() + 1, 0);
    for (int i = 0; i < base.n(); ++i) {
        if (parts[i] <= 0) throw contract_error("blowup part sizes must be >= 1");
        offset[i + 1] = offset[i] + parts[i];
    }
    OrientedGraph d(offset.back());
    for (const auto& e : base.arcs())
        for (int a = 0; a < parts[e.from]; ++a)
            for (int b = 0; b < parts[e.to]; ++b)
                d.add_arc(offset[e.from] + a, offset[e.to] + b);
    return d;
}

inline OrientedGraph blowup_uniform(const OrientedGraph& base, int copies) {
    return blowup(base, std::vector<int>(base.n(), copies));
}

// Declarative instance description, used by the CLI and tests. Blowup specs
// nest one level: the base must itself be a non-blowup model.
struct GenSpec {
    enum class Model { random_tournament, random_oriented, qr, transitive, cycle, blowup };
    Model model = Model::random_tournament;
    int n = 0;
    double p = 0.5;
    std::uint64_t seed = 1;
    int q = 7;
    int copies = 2;
    std::vector<int> parts;  // blowup only; overrides copies when nonempty
    std::shared_ptr<GenSpec> base;  // blowup only
};

inline OrientedGraph generate(const GenSpec& spec) {
    using M = GenSpec::Model;
    switch (spec.model) {
        case M::random_tournament:
            return random_tournament(spec.n, spec.seed);
        case M::random_oriented:
            return random_oriented(spec.n, spec.p, spec.seed);
        case M::qr:
            return qr_tournament(spec.q);
        case M::transitive:
            return transitive_tournament(spec.n);
        case M::cycle:
            return directed_cycle(spec.n);
        case M::blowup: {
            if (!spec.base) throw contract_error("blowup spec needs a base");
            if (spec.base->model == M::blowup)
                throw contract_error("blowup bases must be primitive models");
            OrientedGraph base = generate(*spec.base);
            if (!spec.parts.empty()) return blowup(base, spec.parts);
            return blowup_uniform(base, spec.copies);
        }
    }
    throw contract_error("unknown generator model");
}

}  // namespace arcbound
