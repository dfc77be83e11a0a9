#include "lcc/types.hpp"

#include <algorithm>
#include <unordered_map>

namespace lcc {

int Partition::num_clusters() const {
    if (labels.empty()) return 0;
    return *std::max_element(labels.begin(), labels.end()) + 1;
}

void Partition::compact() {
    std::unordered_map<int, int> remap;
    remap.reserve(labels.size());
    int next = 0;
    for (int& l : labels) {
        auto [it, inserted] = remap.emplace(l, next);
        if (inserted) ++next;
        l = it->second;
    }
}

} // namespace lcc
