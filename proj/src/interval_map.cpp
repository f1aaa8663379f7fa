#include "terravis/interval_map.hpp"

#include <algorithm>
#include <iterator>

namespace terravis {

IdSet apply_delta(const IdSet& set, const SetDelta& delta) {
    IdSet tmp;
    std::set_difference(set.begin(), set.end(), delta.lost.begin(), delta.lost.end(),
                        std::back_inserter(tmp));
    IdSet out;
    std::set_union(tmp.begin(), tmp.end(), delta.gained.begin(), delta.gained.end(),
                   std::back_inserter(out));
    return out;
}

DeltaMap::DeltaMap(std::vector<TerrainPoint> breakpoints, IdSet initial, std::vector<SetDelta> deltas)
    : breakpoints_(std::move(breakpoints)), initial_(std::move(initial)), deltas_(std::move(deltas)) {}

IntervalMap<IdSet> DeltaMap::materialize() const {
    std::vector<IdSet> labels;
    labels.reserve(size());
    labels.push_back(initial_);
    for (const SetDelta& d : deltas_) labels.push_back(apply_delta(labels.back(), d));
    return IntervalMap<IdSet>(breakpoints_, std::move(labels));
}

bool DeltaMap::check_invariants(const Terrain& terrain) const {
    if (breakpoints_.size() != deltas_.size() + 2) return false;
    IdSet cur = initial_;
    for (const SetDelta& d : deltas_) {
        if (d.gained.empty() && d.lost.empty()) return false;
        for (std::size_t g : d.gained) {
            if (std::binary_search(d.lost.begin(), d.lost.end(), g)) return false;
            if (std::binary_search(cur.begin(), cur.end(), g)) return false;
        }
        for (std::size_t l : d.lost) {
            if (!std::binary_search(cur.begin(), cur.end(), l)) return false;
        }
        cur = apply_delta(cur, d);
    }
    return materialize().is_partition_of(terrain);
}

DeltaMap delta_map_from_labels(const IntervalMap<IdSet>& labels) {
    const IntervalMap<IdSet> m = labels.merged();
    std::vector<SetDelta> deltas;
    for (std::size_t i = 1; i < m.size(); ++i) {
        SetDelta d;
        const IdSet& a = m.label(i - 1);
        const IdSet& b = m.label(i);
        std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(d.gained));
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d.lost));
        deltas.push_back(std::move(d));
    }
    return DeltaMap(m.breakpoints(), m.label(0), std::move(deltas));
}

}  // namespace terravis
