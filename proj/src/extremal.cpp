#include "rcm/extremal.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace rcm {

std::uint64_t SplitMix64::bounded(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bounded: zero bound");
    // rejection sampling over the largest multiple of bound
    std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        std::uint64_t x = next();
        if (x >= threshold) return x % bound;
    }
}

Rational Rational::parse(const std::string& text) {
    auto parse_u64 = [](const std::string& s) -> std::uint64_t {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw std::invalid_argument("bad rational: " + s);
        return v;
    };
    Rational r;
    if (auto slash = text.find('/'); slash != std::string::npos) {
        r.num = parse_u64(text.substr(0, slash));
        r.den = parse_u64(text.substr(slash + 1));
    } else if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string frac = text.substr(dot + 1);
        if (frac.size() > 18) throw std::invalid_argument("too many decimal digits");
        std::uint64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        std::uint64_t whole = text.substr(0, dot).empty() ? 0 : parse_u64(text.substr(0, dot));
        std::uint64_t fnum = frac.empty() ? 0 : parse_u64(frac);
        r.num = whole * scale + fnum;
        r.den = scale;
    } else {
        r.num = parse_u64(text);
        r.den = 1;
    }
    if (r.den == 0) throw std::invalid_argument("rational with zero denominator");
    if (r.num > r.den) throw std::invalid_argument("probability above 1");
    std::uint64_t g = std::gcd(r.num, r.den);
    r.num /= g;
    r.den /= g;
    return r;
}

std::string Rational::to_string() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

long long burr_lower_bound(const BurrParams& p) {
    if (p.chi < 2 || p.order < p.chi || p.sigma < 1)
        throw std::invalid_argument("bad Burr parameters");
    return (p.chi - 1) * (p.order - 1) + p.sigma;
}

BurrLayout burr_layout(int r, long long n) {
    if (r < 2 || n < 1) throw std::invalid_argument("burr_colouring needs r >= 2, n >= 1");
    long long part = static_cast<long long>(r) * n - 1;
    long long total = (r - 1) * part + (n - 1);
    if (total > 1'000'000) throw std::invalid_argument("burr_colouring: graph too large");
    BurrLayout layout;
    int at = 0;
    for (int i = 0; i < r - 1; ++i) {
        layout.parts.emplace_back(at, at + static_cast<int>(part));
        at += static_cast<int>(part);
    }
    layout.y = {at, at + static_cast<int>(n - 1)};
    layout.vertex_count = static_cast<int>(total);
    return layout;
}

Colouring burr_colouring(int r, long long n) {
    BurrLayout layout = burr_layout(r, n);
    int total = layout.vertex_count;
    std::vector<int> block_of(static_cast<std::size_t>(total));
    for (std::size_t b = 0; b < layout.parts.size(); ++b)
        for (int v = layout.parts[b].first; v < layout.parts[b].second; ++v)
            block_of[static_cast<std::size_t>(v)] = static_cast<int>(b);
    for (int v = layout.y.first; v < layout.y.second; ++v)
        block_of[static_cast<std::size_t>(v)] = static_cast<int>(layout.parts.size());

    ColouringBuilder b(total);
    for (int u = 0; u < total; ++u)
        for (int v = u + 1; v < total; ++v)
            if (block_of[static_cast<std::size_t>(u)] != block_of[static_cast<std::size_t>(v)])
                b.set_colour(u, v, Colour::red);
    return b.build();
}

Colouring random_colouring(int n, Rational p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_colouring needs n >= 1");
    SplitMix64 rng(seed);
    ColouringBuilder b(n);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            std::uint64_t draw = rng.next();
            // red iff draw/2^64 < num/den, compared exactly in 128 bits
            bool red = static_cast<unsigned __int128>(draw) * p.den <
                       (static_cast<unsigned __int128>(p.num) << 64);
            if (red) b.set_colour(u, v, Colour::red);
        }
    }
    return b.build();
}

Colouring perturb(const Colouring& g, long long flips, std::uint64_t seed) {
    long long n = g.vertex_count();
    long long pair_count = n * (n - 1) / 2;
    if (flips < 0 || flips > pair_count)
        throw std::invalid_argument("perturb: flips exceeds pair count");

    // pair index k (lex order) -> pair {u,v}
    auto pair_of = [n](long long k) {
        long long u = 0;
        long long remaining = k;
        long long row = n - 1;
        while (remaining >= row) {
            remaining -= row;
            ++u;
            --row;
        }
        return std::pair<int, int>{static_cast<int>(u), static_cast<int>(u + 1 + remaining)};
    };

    SplitMix64 rng(seed);
    std::vector<long long> indices(static_cast<std::size_t>(pair_count));
    std::iota(indices.begin(), indices.end(), 0);
    std::vector<std::pair<int, int>> chosen;
    chosen.reserve(static_cast<std::size_t>(flips));
    for (long long i = 0; i < flips; ++i) {
        std::uint64_t j = rng.bounded(static_cast<std::uint64_t>(pair_count - i));
        std::swap(indices[static_cast<std::size_t>(i)],
                  indices[static_cast<std::size_t>(i) + static_cast<std::size_t>(j)]);
        chosen.push_back(pair_of(indices[static_cast<std::size_t>(i)]));
    }
    return g.with_toggled_pairs(chosen);
}

}  // namespace rcm
