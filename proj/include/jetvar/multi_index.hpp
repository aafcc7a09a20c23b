#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace jetvar {

// Sorted multiset of base indices: the derivative address of a jet coordinate.
// Ordered by length first, then lexicographically.
class MultiIndex {
public:
    static constexpr int kMaxOrder = 15;

    MultiIndex() = default;
    MultiIndex(std::initializer_list<int> indices);
    explicit MultiIndex(const std::vector<int>& indices);

    int order() const { return size_; }
    bool empty() const { return size_ == 0; }
    int operator[](int i) const { return idx_[i]; }
    const std::uint8_t* begin() const { return idx_.data(); }
    const std::uint8_t* end() const { return idx_.data() + size_; }

    MultiIndex plus(int lambda) const;
    MultiIndex plus(const MultiIndex& other) const;
    // Multiset difference; requires contains(sub).
    MultiIndex minus(const MultiIndex& sub) const;
    bool contains(const MultiIndex& sub) const;
    int count(int lambda) const;
    int max_index() const { return size_ == 0 ? -1 : idx_[size_ - 1]; }
    std::vector<int> indices() const { return {begin(), end()}; }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
        return a.size_ == b.size_ && a.idx_ == b.idx_;
    }
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

private:
    std::array<std::uint8_t, kMaxOrder> idx_{};
    std::uint8_t size_ = 0;
};

// Sorted insertion of lambda; IndexOutOfRange unless 0 <= lambda < n.
MultiIndex multiindex_add(int lambda, const MultiIndex& index, int n);

// All multi-indices over n base indices with order exactly k / at most k,
// in canonical order.
std::vector<MultiIndex> multi_indices_of_order(int n, int k);
std::vector<MultiIndex> multi_indices_up_to(int n, int max_order);

// Number of distinct orderings of the multiset.
long long permutation_count(const MultiIndex& index);

}  // namespace jetvar
