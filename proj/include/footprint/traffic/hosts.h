#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "footprint/traffic/capture.h"

namespace footprint::traffic {

// Registrable domain -> owning company_id. Built from the company database.
class TrackingDomainDb {
 public:
  TrackingDomainDb() = default;
  explicit TrackingDomainDb(std::map<std::string, std::string> domains) : domains_(std::move(domains)) {}

  struct Hit {
    std::string domain;
    std::string company_id;
  };

  // Longest DB domain equal to `host` or a dot-suffix of it.
  std::optional<Hit> lookup(std::string_view host) const;
  const std::map<std::string, std::string>& domains() const { return domains_; }

 private:
  std::map<std::string, std::string> domains_;
};

struct HostClassification {
  std::set<std::string> all_hosts;
  std::map<std::string, std::string> tracking_hosts;  // host -> company_id
};

HostClassification classify_hosts(const TrafficCapture& capture, const TrackingDomainDb& db);

}  // namespace footprint::traffic
