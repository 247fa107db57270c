#ifndef RCM_VERTEX_SET_HPP
#define RCM_VERTEX_SET_HPP

#include <bit>
#include <cassert>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace rcm {

// Bit-packed set of vertices over a fixed ambient range 0..n-1.
// Words beyond the ambient range are kept zero so equality and hashing
// can work word-wise.
class VertexSet {
public:
    VertexSet() = default;

    explicit VertexSet(std::size_t ambient)
        : n_(ambient), words_((ambient + 63) / 64, 0) {}

    static VertexSet full(std::size_t ambient) {
        VertexSet s(ambient);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    std::size_t ambient_size() const { return n_; }

    bool test(int v) const {
        assert(in_range(v));
        return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
    }

    void set(int v) {
        assert(in_range(v));
        words_[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
    }

    void reset(int v) {
        assert(in_range(v));
        words_[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    bool any() const { return !empty(); }

    // Smallest member, or -1.
    int first() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<int>(i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i])));
        return -1;
    }

    // Smallest member >= v, or -1.
    int next(int v) const {
        if (v < 0) v = 0;
        auto idx = static_cast<std::size_t>(v) >> 6;
        if (idx >= words_.size()) return -1;
        std::uint64_t w = words_[idx] & (~std::uint64_t{0} << (v & 63));
        while (true) {
            if (w) return static_cast<int>(idx * 64 + static_cast<std::size_t>(std::countr_zero(w)));
            if (++idx >= words_.size()) return -1;
            w = words_[idx];
        }
    }

    bool is_superset_of(const VertexSet& other) const {
        assert(n_ == other.n_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (other.words_[i] & ~words_[i]) return false;
        return true;
    }

    bool intersects(const VertexSet& other) const {
        assert(n_ == other.n_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    std::size_t intersection_count(const VertexSet& other) const {
        assert(n_ == other.n_);
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
        return c;
    }

    VertexSet& operator&=(const VertexSet& other) {
        assert(n_ == other.n_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }

    VertexSet& operator|=(const VertexSet& other) {
        assert(n_ == other.n_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    // Clears every member strictly below v.
    void remove_below(int v) {
        if (v <= 0) return;
        auto idx = static_cast<std::size_t>(v) >> 6;
        for (std::size_t i = 0; i < idx && i < words_.size(); ++i) words_[i] = 0;
        if (idx < words_.size() && (v & 63))
            words_[idx] &= ~std::uint64_t{0} << (v & 63);
    }

    VertexSet& and_not(const VertexSet& other) {
        assert(n_ == other.n_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }

    VertexSet complement() const {
        VertexSet s = full(n_);
        s.and_not(*this);
        return s;
    }

    bool operator==(const VertexSet& other) const = default;

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for (int v = first(); v >= 0; v = next(v + 1)) out.push_back(v);
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (int v = first(); v >= 0; v = next(v + 1)) f(v);
    }

    std::size_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto w : words_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }

private:
    bool in_range(int v) const { return v >= 0 && static_cast<std::size_t>(v) < n_; }

    void trim() {
        if (n_ % 64 != 0 && !words_.empty())
            words_.back() &= (~std::uint64_t{0}) >> (64 - (n_ % 64));
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace rcm

#endif
