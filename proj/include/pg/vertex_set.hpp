#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "pg/types.hpp"

namespace pg {

/// Dense vertex set over [0, universe). Membership and insert are O(1);
/// iteration yields ascending vertex indices.
class VertexSet {
public:
    VertexSet() = default;

    explicit VertexSet(vertex_t universe)
        : words_((static_cast<std::size_t>(universe) + 63) / 64), universe_(universe) {}

    VertexSet(vertex_t universe, std::initializer_list<vertex_t> vs) : VertexSet(universe) {
        for (vertex_t v : vs) insert(v);
    }

    vertex_t universe_size() const { return universe_; }

    bool contains(vertex_t v) const {
        return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
    }

    /// Returns true if v was newly inserted.
    bool insert(vertex_t v) {
        std::uint64_t& w = words_[static_cast<std::size_t>(v) >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (v & 63);
        if (w & bit) return false;
        w |= bit;
        ++count_;
        return true;
    }

    bool erase(vertex_t v) {
        std::uint64_t& w = words_[static_cast<std::size_t>(v) >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (v & 63);
        if (!(w & bit)) return false;
        w &= ~bit;
        --count_;
        return true;
    }

    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    void clear() {
        std::fill(words_.begin(), words_.end(), 0);
        count_ = 0;
    }

    void fill() {
        if (universe_ == 0) return;
        std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
        const int rem = universe_ & 63;
        if (rem != 0) words_.back() &= (std::uint64_t{1} << rem) - 1;
        count_ = static_cast<std::size_t>(universe_);
    }

    bool is_subset_of(const VertexSet& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    bool intersects(const VertexSet& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    std::vector<vertex_t> to_vector() const {
        std::vector<vertex_t> out;
        out.reserve(count_);
        for (vertex_t v : *this) out.push_back(v);
        return out;
    }

    class const_iterator {
    public:
        using value_type = vertex_t;
        using difference_type = std::ptrdiff_t;

        const_iterator(const VertexSet* set, vertex_t pos) : set_(set), pos_(pos) { advance(); }

        vertex_t operator*() const { return pos_; }

        const_iterator& operator++() {
            ++pos_;
            advance();
            return *this;
        }

        const_iterator operator++(int) {
            const_iterator tmp = *this;
            ++*this;
            return tmp;
        }

        bool operator==(const const_iterator& o) const { return pos_ == o.pos_; }
        bool operator!=(const const_iterator& o) const { return pos_ != o.pos_; }

    private:
        void advance() {
            const vertex_t n = set_->universe_;
            while (pos_ < n) {
                std::uint64_t w = set_->words_[static_cast<std::size_t>(pos_) >> 6] >> (pos_ & 63);
                if (w != 0) {
                    pos_ += static_cast<vertex_t>(std::countr_zero(w));
                    return;
                }
                pos_ = (pos_ | 63) + 1;
            }
            pos_ = n;
        }

        const VertexSet* set_;
        vertex_t pos_;
    };

    const_iterator begin() const { return const_iterator(this, 0); }
    const_iterator end() const { return const_iterator(this, universe_); }

    bool operator==(const VertexSet& o) const {
        return universe_ == o.universe_ && words_ == o.words_;
    }

private:
    std::vector<std::uint64_t> words_;
    vertex_t universe_ = 0;
    std::size_t count_ = 0;
};

} // namespace pg
