#ifndef RCM_EXTREMAL_HPP
#define RCM_EXTREMAL_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rcm/colouring.hpp"

namespace rcm {

// splitmix64 (Steele, Lea & Flood). Fixed portable generator so corpora are
// bit-identical across platforms and languages. State transition:
//   state += 0x9E3779B97F4A7C15
//   z = state; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
//   z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31; output z
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound) by rejection; bound must be positive.
    std::uint64_t bounded(std::uint64_t bound);

private:
    std::uint64_t state_;
};

// Exact probability num/den with 0 <= num <= den, den > 0.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    // Accepts "a/b" or a decimal such as "0.25" or "1".
    static Rational parse(const std::string& text);
    std::string to_string() const;
};

struct BurrParams {
    long long chi = 0;    // chromatic number, >= 2
    long long order = 0;  // |G|, >= 2
    long long sigma = 0;  // smallest colour class, >= 1
};

// (chi - 1)(order - 1) + sigma
long long burr_lower_bound(const BurrParams& p);

// Vertex layout of burr_colouring: r-1 contiguous parts of size rn-1, then Y.
struct BurrLayout {
    std::vector<std::pair<int, int>> parts;  // half-open index ranges
    std::pair<int, int> y;                   // half-open; empty when n == 1
    int vertex_count = 0;
};

BurrLayout burr_layout(int r, long long n);

// The lower-bound construction: blue inside each part, red between parts.
Colouring burr_colouring(int r, long long n);

// Each pair red independently with probability p; pairs are drawn in
// lexicographic order (u < v), one generator call per pair.
Colouring random_colouring(int n, Rational p, std::uint64_t seed);

// Toggles exactly `flips` distinct pairs, chosen uniformly without
// replacement (partial Fisher-Yates over lexicographic pair indices).
Colouring perturb(const Colouring& g, long long flips, std::uint64_t seed);

}  // namespace rcm

#endif
