#pragma once

#include "terravis/terrain.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

namespace terravis {

/// Partition of the terrain into maximal intervals, each carrying a label.
/// breakpoints().size() == labels().size() + 1; the first breakpoint is the
/// leftmost terrain point and the last is the rightmost.
template <typename L>
class IntervalMap {
public:
    using Label = L;

    IntervalMap() = default;
    IntervalMap(std::vector<TerrainPoint> breakpoints, std::vector<L> labels)
        : breakpoints_(std::move(breakpoints)), labels_(std::move(labels)) {
        assert(breakpoints_.size() == labels_.size() + 1);
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<TerrainPoint>& breakpoints() const { return breakpoints_; }
    const std::vector<L>& labels() const { return labels_; }
    const TerrainPoint& left(std::size_t i) const { return breakpoints_[i]; }
    const TerrainPoint& right(std::size_t i) const { return breakpoints_[i + 1]; }
    decltype(auto) label(std::size_t i) const { return labels_[i]; }

    /// Interval containing x; a breakpoint belongs to the interval on its right
    /// (the last breakpoint to the last interval).
    std::size_t index_at(double x) const {
        auto it = std::upper_bound(breakpoints_.begin() + 1, breakpoints_.end() - 1, x,
                                   [](double v, const TerrainPoint& p) { return v < p.x; });
        return static_cast<std::size_t>(it - (breakpoints_.begin() + 1));
    }
    decltype(auto) label_at(double x) const { return labels_[index_at(x)]; }

    /// Distance from x to the nearest breakpoint.
    double distance_to_breakpoint(double x) const {
        auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x,
                                   [](const TerrainPoint& p, double v) { return p.x < v; });
        double best = INFINITY;
        if (it != breakpoints_.end()) best = std::min(best, std::abs(it->x - x));
        if (it != breakpoints_.begin()) best = std::min(best, std::abs(std::prev(it)->x - x));
        return best;
    }

    /// Relabel and re-merge equal neighbours.
    template <typename F>
    auto transform(F&& f) const -> IntervalMap<std::decay_t<std::invoke_result_t<F, const L&>>> {
        using R = std::decay_t<std::invoke_result_t<F, const L&>>;
        std::vector<TerrainPoint> bps{breakpoints_.front()};
        std::vector<R> out;
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            R r = f(labels_[i]);
            if (!out.empty() && out.back() == r) {
                bps.back() = breakpoints_[i + 1];
                continue;
            }
            out.push_back(std::move(r));
            bps.push_back(breakpoints_[i + 1]);
        }
        return IntervalMap<R>(std::move(bps), std::move(out));
    }

    IntervalMap merged() const {
        return transform([](const L& l) { return l; });
    }

    /// Structural check: tiles [x_min, x_max], strictly increasing, maximal.
    bool is_partition_of(const Terrain& terrain) const {
        if (labels_.empty() || breakpoints_.size() != labels_.size() + 1) return false;
        const double eps = terrain.eps();
        if (std::abs(breakpoints_.front().x - terrain.x_min()) > eps) return false;
        if (std::abs(breakpoints_.back().x - terrain.x_max()) > eps) return false;
        for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
            if (!(breakpoints_[i + 1].x > breakpoints_[i].x)) return false;
        }
        for (std::size_t i = 0; i + 1 < labels_.size(); ++i) {
            if (labels_[i] == labels_[i + 1]) return false;
        }
        return true;
    }

private:
    std::vector<TerrainPoint> breakpoints_;
    std::vector<L> labels_;
};

/// Left-to-right builder that keeps the result maximal and drops intervals
/// shorter than eps.
template <typename L>
class IntervalMapBuilder {
public:
    IntervalMapBuilder(const TerrainPoint& start, L label, double eps) : eps_(eps) {
        breakpoints_.push_back(start);
        labels_.push_back(std::move(label));
    }

    /// The label changes to `label` at `at`.
    void cut(const TerrainPoint& at, L label) {
        if (labels_.back() == label) return;
        if (at.x - breakpoints_.back().x <= eps_) {
            // Zero-length piece: overwrite it, then re-merge with the left neighbour.
            labels_.back() = std::move(label);
            if (labels_.size() > 1 && labels_[labels_.size() - 2] == labels_.back()) {
                labels_.pop_back();
                breakpoints_.pop_back();
            }
            return;
        }
        breakpoints_.push_back(at);
        labels_.push_back(std::move(label));
    }

    const L& current() const { return labels_.back(); }

    IntervalMap<L> finish(const TerrainPoint& end) && {
        while (labels_.size() > 1 && end.x - breakpoints_.back().x <= eps_) {
            labels_.pop_back();
            breakpoints_.pop_back();
        }
        breakpoints_.push_back(end);
        return IntervalMap<L>(std::move(breakpoints_), std::move(labels_));
    }

private:
    double eps_;
    std::vector<TerrainPoint> breakpoints_;
    std::vector<L> labels_;
};

/// Sorted set of viewpoint vertex indices.
using IdSet = std::vector<std::size_t>;

struct SetDelta {
    IdSet gained;
    IdSet lost;
};

/// Interval partition stored as the first label plus per-breakpoint deltas.
/// Used for both the colored visibility map and k-th order maps.
class DeltaMap {
public:
    DeltaMap() = default;
    DeltaMap(std::vector<TerrainPoint> breakpoints, IdSet initial, std::vector<SetDelta> deltas);

    std::size_t size() const { return deltas_.size() + 1; }
    const std::vector<TerrainPoint>& breakpoints() const { return breakpoints_; }
    const IdSet& initial() const { return initial_; }
    /// deltas()[i] applies at breakpoints()[i + 1].
    const std::vector<SetDelta>& deltas() const { return deltas_; }

    /// Replays the deltas into full labels.
    IntervalMap<IdSet> materialize() const;

    /// Checks tiling, gained/lost disjointness, and that every replay step is
    /// well-formed (gains absent before, losses present before).
    bool check_invariants(const Terrain& terrain) const;

private:
    std::vector<TerrainPoint> breakpoints_;
    IdSet initial_;
    std::vector<SetDelta> deltas_;
};

/// Builds a DeltaMap from full labels, dropping empty deltas.
DeltaMap delta_map_from_labels(const IntervalMap<IdSet>& labels);

IdSet apply_delta(const IdSet& set, const SetDelta& delta);

}  // namespace terravis
