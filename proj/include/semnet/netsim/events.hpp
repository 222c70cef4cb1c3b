// Discrete-event queue with deterministic (time, sequence) ordering.
#pragma once

#include <cstdint>
#include <queue>
#include <vector>

namespace semnet {

enum class EventKind {
    msg_arrival = 0,
    pkt_depart,
    pkt_deliver,
    mobility_update,
    telemetry_tick,
    control_tick,
    bg_toggle,
    bg_chunk,
    phase_transition,
    drift_event,
};

const char* event_kind_name(EventKind k);

struct Event {
    double time = 0.0;
    std::uint64_t seq = 0;  // tie-break: insertion order
    EventKind kind = EventKind::msg_arrival;
    int a = -1;       // node / source index, kind-specific
    int b = -1;       // packet id / auxiliary
    double x = 0.0;   // auxiliary payload
};

class EventQueue {
public:
    void push(double time, EventKind kind, int a = -1, int b = -1, double x = 0.0) {
        heap_.push(Event{time, next_seq_++, kind, a, b, x});
    }
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    Event pop() {
        Event e = heap_.top();
        heap_.pop();
        return e;
    }
    const Event& peek() const { return heap_.top(); }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };
    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_seq_ = 0;
};

}  // namespace semnet
