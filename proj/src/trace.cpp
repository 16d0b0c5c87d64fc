#include "admctl/trace.hpp"

#include <map>
#include <sstream>

namespace admctl {

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::Arrive: return "Arrive";
    case EventKind::AcceptPermanent: return "AcceptPermanent";
    case EventKind::RejectImmediate: return "RejectImmediate";
    case EventKind::Preempt: return "Preempt";
    case EventKind::RejectOnArrival: return "RejectOnArrival";
    case EventKind::WeightAugment: return "WeightAugment";
    case EventKind::AlphaDouble: return "AlphaDouble";
    case EventKind::SetChosen: return "SetChosen";
  }
  return "?";
}

void DecisionTrace::append(EventKind kind, long subject, const Rat& delta, bool charged) {
  if (charged) total_ += delta;
  events_.push_back(TraceEvent{kind, subject, delta, total_});
  charged_.push_back(charged ? 1 : 0);
}

std::string DecisionTrace::to_jsonl() const {
  std::ostringstream out;
  for (const TraceEvent& ev : events_) {
    out << "{\"event\":\"" << event_kind_name(ev.kind) << "\",\"id\":" << ev.subject
        << ",\"delta\":\"" << rat_str(ev.delta) << "\",\"cum\":\"" << rat_str(ev.cumulative)
        << "\"}\n";
  }
  return out.str();
}

bool DecisionTrace::irrevocable() const {
  std::map<long, bool> rejected;
  for (const TraceEvent& ev : events_) {
    switch (ev.kind) {
      case EventKind::RejectImmediate:
      case EventKind::Preempt:
      case EventKind::RejectOnArrival:
        rejected[ev.subject] = true;
        break;
      case EventKind::AcceptPermanent:
        if (rejected.count(ev.subject)) return false;
        break;
      default:
        break;
    }
  }
  return true;
}

bool DecisionTrace::replay_consistent() const {
  Rat running = 0;
  for (size_t k = 0; k < events_.size(); ++k) {
    if (charged_[k]) running += events_[k].delta;
    if (events_[k].cumulative != running) return false;
  }
  return running == total_;
}

}  // namespace admctl
