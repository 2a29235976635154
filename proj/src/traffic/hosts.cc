#include "footprint/traffic/hosts.h"

namespace footprint::traffic {

std::optional<TrackingDomainDb::Hit> TrackingDomainDb::lookup(std::string_view host) const {
  // Walk from the full host towards shorter suffixes; the first hit is the
  // longest matching domain.
  for (std::string_view probe = host; !probe.empty();) {
    if (auto it = domains_.find(std::string(probe)); it != domains_.end()) return Hit{it->first, it->second};
    auto dot = probe.find('.');
    if (dot == std::string_view::npos) break;
    probe.remove_prefix(dot + 1);
  }
  return std::nullopt;
}

HostClassification classify_hosts(const TrafficCapture& capture, const TrackingDomainDb& db) {
  HostClassification out;
  for (const auto& t : capture.transactions) {
    if (!out.all_hosts.insert(t.host).second) continue;
    if (auto hit = db.lookup(t.host)) out.tracking_hosts.emplace(t.host, hit->company_id);
  }
  return out;
}

}  // namespace footprint::traffic
