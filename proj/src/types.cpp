#include "mecsim/types.hpp"

namespace mecsim {

const char* to_string(SlotAction a) {
  switch (a) {
    case SlotAction::Local: return "local";
    case SlotAction::Offload: return "offload";
    case SlotAction::Edge: return "edge";
    case SlotAction::Cloud: return "cloud";
  }
  return "unknown";
}

const char* to_string(Urgency u) {
  return u == Urgency::Urgent ? "urgent" : "normal";
}

}  // namespace mecsim
