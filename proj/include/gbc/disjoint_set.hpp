#ifndef GBC_DISJOINT_SET_HPP
#define GBC_DISJOINT_SET_HPP

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace gbc {

// Union by size with path halving.
class DisjointSet {
public:
    explicit DisjointSet(std::size_t size) : parent_(size), size_(size, 1)
    {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        if (size_[a] < size_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    std::size_t size() const { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace gbc

#endif  // GBC_DISJOINT_SET_HPP
