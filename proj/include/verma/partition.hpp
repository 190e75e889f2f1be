#pragma once

#include <algorithm>
#include <map>
#include <vector>

namespace verma {

// Integer partition in canonical nonincreasing order; empty = vacuum label.
using Partition = std::vector<int>;

inline int partition_level(const Partition& p) {
    int s = 0;
    for (int x : p) s += x;
    return s;
}

inline bool is_canonical_partition(const Partition& p) {
    for (size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i] < p[i + 1]) return false;
    return p.empty() || p.back() >= 1;
}

// All partitions of n with parts in [min_part, n], in descending
// lexicographic order: (n), (n-1,1), ..., (1,1,...,1).
inline std::vector<Partition> partitions_of(int n, int min_part = 1) {
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, int rem, int maxp) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(rem, maxp); part >= min_part; --part) {
            cur.push_back(part);
            self(self, rem - part, part);
            cur.pop_back();
        }
    };
    if (n >= 0) rec(rec, n, n);
    return out;
}

inline int partition_count(int n, int min_part = 1) {
    if (n < 0) return 0;
    return static_cast<int>(partitions_of(n, min_part).size());
}

}  // namespace verma
