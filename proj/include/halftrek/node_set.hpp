#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace halftrek {

inline constexpr int max_nodes = 64;

// Set of node indices (0-based) in a graph with at most 64 nodes.
class NodeSet {
public:
    constexpr NodeSet() = default;
    constexpr explicit NodeSet(std::uint64_t bits) : bits_(bits) {}
    NodeSet(std::initializer_list<int> nodes) {
        for (int v : nodes) insert(v);
    }

    static constexpr NodeSet full(int m) {
        return NodeSet(m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1));
    }
    static constexpr NodeSet single(int v) { return NodeSet(std::uint64_t{1} << v); }

    constexpr bool contains(int v) const { return (bits_ >> v) & 1U; }
    constexpr void insert(int v) { bits_ |= std::uint64_t{1} << v; }
    constexpr void erase(int v) { bits_ &= ~(std::uint64_t{1} << v); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool subset_of(NodeSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool intersects(NodeSet o) const { return (bits_ & o.bits_) != 0; }

    constexpr NodeSet operator|(NodeSet o) const { return NodeSet(bits_ | o.bits_); }
    constexpr NodeSet operator&(NodeSet o) const { return NodeSet(bits_ & o.bits_); }
    constexpr NodeSet operator-(NodeSet o) const { return NodeSet(bits_ & ~o.bits_); }
    constexpr NodeSet& operator|=(NodeSet o) { bits_ |= o.bits_; return *this; }
    constexpr NodeSet& operator&=(NodeSet o) { bits_ &= o.bits_; return *this; }
    constexpr NodeSet& operator-=(NodeSet o) { bits_ &= ~o.bits_; return *this; }
    constexpr bool operator==(const NodeSet&) const = default;

    class iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = int;
        using difference_type = std::ptrdiff_t;
        using pointer = const int*;
        using reference = int;

        constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
        constexpr int operator*() const { return std::countr_zero(rest_); }
        constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
        constexpr iterator operator++(int) { iterator old = *this; ++*this; return old; }
        constexpr bool operator!=(const iterator& o) const { return rest_ != o.rest_; }
        constexpr bool operator==(const iterator& o) const { return rest_ == o.rest_; }

    private:
        std::uint64_t rest_;
    };
    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

    std::vector<int> to_vector() const { return {begin(), end()}; }

private:
    std::uint64_t bits_ = 0;
};

}  // namespace halftrek
