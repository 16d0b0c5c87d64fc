#pragma once

#include <string>
#include <vector>

#include "admctl/rational.hpp"

namespace admctl {

enum class EventKind {
  Arrive,
  AcceptPermanent,
  RejectImmediate,
  Preempt,
  RejectOnArrival,
  WeightAugment,
  AlphaDouble,
  SetChosen,
};

const char* event_kind_name(EventKind kind);

struct TraceEvent {
  EventKind kind;
  long subject;    // request id, set id, or edge id for WeightAugment
  Rat delta;       // cost delta carried by the event
  Rat cumulative;  // online cost after the event
};

// Append-only decision log. The owning run decides which deltas count toward
// the cumulative online cost (e.g. a randomized run logs fractional-layer
// augmentations for inspection without charging them).
class DecisionTrace {
 public:
  void append(EventKind kind, long subject, const Rat& delta, bool charged);

  const std::vector<TraceEvent>& events() const { return events_; }
  const Rat& total_cost() const { return total_; }

  std::string to_jsonl() const;

  // Rejection is irrevocable: no accept-type event for a subject after a
  // reject/preempt event for the same subject.
  bool irrevocable() const;

  // Recomputes cumulative costs from charged deltas and compares.
  bool replay_consistent() const;

 private:
  std::vector<TraceEvent> events_;
  std::vector<char> charged_;
  Rat total_ = 0;
};

}  // namespace admctl
