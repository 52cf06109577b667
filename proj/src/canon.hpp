#pragma once

#include <cstdint>
#include <vector>

#include "halftrek/graph.hpp"

namespace halftrek::detail {

// Edge sets packed into two words: directed u->v at bit u*m+v, bidirected
// {a,b} (a<b) at bit a*m+b. Requires m <= 8.
struct EdgeMasks {
    std::uint64_t directed = 0;
    std::uint64_t bidirected = 0;
    auto operator<=>(const EdgeMasks&) const = default;
};

struct EdgeMasksHash {
    std::size_t operator()(const EdgeMasks& k) const noexcept {
        std::uint64_t h = k.directed * 0x9E3779B97F4A7C15ULL;
        h ^= k.bidirected + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

EdgeMasks to_masks(const MixedGraph& g);
MixedGraph from_masks(int m, const EdgeMasks& k);

// Lexicographic minimum of EdgeMasks over all m! relabelings, with the
// permuted bit positions precomputed per permutation.
class Canonizer {
public:
    explicit Canonizer(int m);
    int size() const { return m_; }
    EdgeMasks canonical(const EdgeMasks& k) const;

private:
    int m_;
    std::vector<std::vector<std::uint8_t>> slot_maps_;  // per permutation: bit -> bit
};

// Directed part acyclic, computed from the mask alone.
bool masks_acyclic(int m, std::uint64_t directed);

}  // namespace halftrek::detail
