#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "footprint/traffic/hosts.h"

namespace footprint::companies {

struct Company {
  std::string company_id;
  std::string display_name;
  std::optional<std::string> parent_id;
  std::string country;  // ISO 3166-1 alpha-2
  std::vector<std::string> domains;
  std::string note;
};

struct HostOwner {
  std::string company_id;
  std::string root_id;
  std::string domain;
};

bool is_iso_country(std::string_view code);

class CompanyGraph {
 public:
  // Throws SchemaError, UnknownParent, CycleDetected or DuplicateDomain.
  static CompanyGraph load(std::string_view json);
  static CompanyGraph load_file(const std::filesystem::path& path);

  const std::map<std::string, Company, std::less<>>& companies() const { return companies_; }
  const Company* find(std::string_view id) const;
  // Throws UnknownCompany.
  const Company& at(std::string_view id) const;

  // Parentless ancestor; a parentless company is its own root.
  const Company& resolve_root(std::string_view id) const;
  // The company itself first, its root last.
  std::vector<const Company*> chain(std::string_view id) const;

  // Longest owned domain equal to, or a dot-suffix of, `host`.
  std::optional<HostOwner> company_for_host(std::string_view host) const;

  // Countries of `ids`, or of their whole parent chains.
  std::set<std::string> jurisdictions(const std::set<std::string>& ids, bool include_chain) const;

  const traffic::TrackingDomainDb& tracking_domains() const { return domains_; }

 private:
  std::map<std::string, Company, std::less<>> companies_;
  traffic::TrackingDomainDb domains_;
};

}  // namespace footprint::companies
