#include "cftpp/event_sequence.hpp"

#include <algorithm>
#include <stdexcept>

namespace cftpp {

EventSequence::EventSequence(std::vector<double> times_in, double horizon_in)
    : times(std::move(times_in)), horizon(horizon_in) {
    validate();
}

bool EventSequence::contains(double t) const {
    return std::binary_search(times.begin(), times.end(), t);
}

std::size_t EventSequence::count_at(double t) const {
    return static_cast<std::size_t>(
        std::upper_bound(times.begin(), times.end(), t) - times.begin());
}

void EventSequence::validate() const {
    if (horizon < 0.0) {
        throw std::invalid_argument("EventSequence: negative horizon");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0 && times[i] <= horizon)) {
            throw std::invalid_argument("EventSequence: time outside [0, horizon]");
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw std::invalid_argument("EventSequence: times must be strictly increasing");
        }
    }
}

EventSequence merge(const EventSequence& a, const EventSequence& b) {
    if (a.horizon != b.horizon) {
        throw std::invalid_argument("merge: horizons differ");
    }
    std::vector<double> out;
    out.reserve(a.times.size() + b.times.size());
    std::merge(a.times.begin(), a.times.end(), b.times.begin(), b.times.end(),
               std::back_inserter(out));
    return EventSequence(std::move(out), a.horizon);
}

}  // namespace cftpp
