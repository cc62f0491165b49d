#pragma once

#include <vector>

namespace cftpp {

/// Strictly increasing event times on [0, horizon].
struct EventSequence {
    std::vector<double> times;
    double horizon = 0.0;

    EventSequence() = default;
    EventSequence(std::vector<double> times, double horizon);

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
    bool contains(double t) const;

    /// Number of events at or before t (right-continuous counting process).
    std::size_t count_at(double t) const;

    /// Throws std::invalid_argument unless sorted, unique, and within
    /// [0, horizon].
    void validate() const;
};

/// Merges two disjoint sequences over the same horizon.
EventSequence merge(const EventSequence& a, const EventSequence& b);

}  // namespace cftpp
