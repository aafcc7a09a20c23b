#include "jetvar/multi_index.hpp"

#include <algorithm>

#include "jetvar/error.hpp"

namespace jetvar {

namespace {

void check_capacity(int size) {
    if (size > MultiIndex::kMaxOrder)
        throw Error(ErrorCode::IndexOutOfRange,
                    "jet order exceeds the supported maximum of " + std::to_string(MultiIndex::kMaxOrder));
}

}  // namespace

MultiIndex::MultiIndex(std::initializer_list<int> indices) : MultiIndex(std::vector<int>(indices)) {}

MultiIndex::MultiIndex(const std::vector<int>& indices) {
    check_capacity(static_cast<int>(indices.size()));
    std::vector<int> sorted = indices;
    std::sort(sorted.begin(), sorted.end());
    for (int v : sorted) {
        if (v < 0 || v > 255) throw Error(ErrorCode::IndexOutOfRange, "base index out of range");
        idx_[size_++] = static_cast<std::uint8_t>(v);
    }
}

MultiIndex MultiIndex::plus(int lambda) const {
    check_capacity(size_ + 1);
    if (lambda < 0 || lambda > 255) throw Error(ErrorCode::IndexOutOfRange, "base index out of range");
    MultiIndex r;
    int i = 0;
    while (i < size_ && idx_[i] <= lambda) r.idx_[r.size_++] = idx_[i++];
    r.idx_[r.size_++] = static_cast<std::uint8_t>(lambda);
    while (i < size_) r.idx_[r.size_++] = idx_[i++];
    return r;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
    check_capacity(size_ + other.size_);
    MultiIndex r;
    std::merge(begin(), end(), other.begin(), other.end(), r.idx_.begin());
    r.size_ = static_cast<std::uint8_t>(size_ + other.size_);
    return r;
}

bool MultiIndex::contains(const MultiIndex& sub) const {
    return std::includes(begin(), end(), sub.begin(), sub.end());
}

MultiIndex MultiIndex::minus(const MultiIndex& sub) const {
    MultiIndex r;
    auto out = std::set_difference(begin(), end(), sub.begin(), sub.end(), r.idx_.begin());
    r.size_ = static_cast<std::uint8_t>(out - r.idx_.begin());
    return r;
}

int MultiIndex::count(int lambda) const {
    return static_cast<int>(std::count(begin(), end(), lambda));
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (a.size_ != b.size_) return a.size_ <=> b.size_;
    for (int i = 0; i < a.size_; ++i)
        if (a.idx_[i] != b.idx_[i]) return a.idx_[i] <=> b.idx_[i];
    return std::strong_ordering::equal;
}

MultiIndex multiindex_add(int lambda, const MultiIndex& index, int n) {
    if (lambda < 0 || lambda >= n)
        throw Error(ErrorCode::IndexOutOfRange,
                    "base index " + std::to_string(lambda) + " out of range for base dimension " + std::to_string(n));
    return index.plus(lambda);
}

std::vector<MultiIndex> multi_indices_of_order(int n, int k) {
    std::vector<MultiIndex> out;
    std::vector<int> cur;
    auto rec = [&](auto& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.emplace_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            self(self, v);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int max_order) {
    std::vector<MultiIndex> out;
    for (int k = 0; k <= max_order; ++k) {
        auto level = multi_indices_of_order(n, k);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

long long permutation_count(const MultiIndex& index) {
    long long result = 1;
    int placed = 0;
    int i = 0;
    while (i < index.order()) {
        int j = i;
        while (j < index.order() && index[j] == index[i]) ++j;
        // multiply by C(placed + run, run)
        for (int r = 1; r <= j - i; ++r) {
            ++placed;
            result = result * placed / r;
        }
        i = j;
    }
    return result;
}

}  // namespace jetvar
