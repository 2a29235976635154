#include "footprint/companies/company_graph.h"

#include <algorithm>

#include "footprint/common.h"
#include "footprint/error.h"
#include "json_util.h"

namespace footprint::companies {
namespace {

// Officially assigned ISO 3166-1 alpha-2 codes, sorted.
constexpr std::string_view kCountries =
    "AD AE AF AG AI AL AM AO AQ AR AS AT AU AW AX AZ BA BB BD BE BF BG BH BI BJ BL BM BN BO BQ BR BS BT BV BW "
    "BY BZ CA CC CD CF CG CH CI CK CL CM CN CO CR CU CV CW CX CY CZ DE DJ DK DM DO DZ EC EE EG EH ER ES ET FI "
    "FJ FK FM FO FR GA GB GD GE GF GG GH GI GL GM GN GP GQ GR GS GT GU GW GY HK HM HN HR HT HU ID IE IL IM IN "
    "IO IQ IR IS IT JE JM JO JP KE KG KH KI KM KN KP KR KW KY KZ LA LB LC LI LK LR LS LT LU LV LY MA MC MD ME "
    "MF MG MH MK ML MM MN MO MP MQ MR MS MT MU MV MW MX MY MZ NA NC NE NF NG NI NL NO NP NR NU NZ OM PA PE PF "
    "PG PH PK PL PM PN PR PS PT PW PY QA RE RO RS RU RW SA SB SC SD SE SG SH SI SJ SK SL SM SN SO SR SS ST SV "
    "SX SY SZ TC TD TF TG TH TJ TK TL TM TN TO TR TT TV TW TZ UA UG UM US UY UZ VA VC VE VG VI VN VU WF WS YE "
    "YT ZA ZM ZW";

bool valid_domain(std::string_view d) {
  if (d.empty() || d.front() == '.' || d.back() == '.' || d.find("..") != std::string_view::npos) return false;
  return std::all_of(d.begin(), d.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '.';
  });
}

}  // namespace

bool is_iso_country(std::string_view code) {
  if (code.size() != 2) return false;
  for (std::size_t i = 0; i + 2 <= kCountries.size(); i += 3)
    if (kCountries.substr(i, 2) == code) return true;
  return false;
}

CompanyGraph CompanyGraph::load(std::string_view text) {
  auto doc = json_util::parse(text, ErrorCode::kSchemaError, "company database");
  if (!doc.is_array()) throw Error(ErrorCode::kSchemaError, "company database must be a JSON array");
  CompanyGraph g;
  std::map<std::string, std::string> domain_owner;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    json_util::Reader r(doc[i], "company entry " + std::to_string(i));
    r.allow_only({"company_id", "display_name", "parent_id", "country", "domains", "note"});
    Company c;
    c.company_id = r.string("company_id");
    if (c.company_id.empty()) r.fail("empty company_id");
    c.display_name = r.string("display_name");
    if (r.has("parent_id")) c.parent_id = r.string("parent_id");
    c.country = r.string("country");
    if (!is_iso_country(c.country)) r.fail("country \"" + c.country + "\" is not an ISO 3166 alpha-2 code");
    c.domains = r.has("domains") ? r.strings("domains") : std::vector<std::string>{};
    c.note = r.string_or("note", "");
    if (c.parent_id == c.company_id) throw Error(ErrorCode::kCycleDetected, c.company_id + " is its own parent");
    for (auto& d : c.domains) {
      d = to_lower_ascii(trim(d));
      if (!valid_domain(d)) r.fail("bad domain \"" + d + "\"");
      auto [it, fresh] = domain_owner.emplace(d, c.company_id);
      if (!fresh) throw Error(ErrorCode::kDuplicateDomain, d + " owned by " + it->second + " and " + c.company_id);
    }
    if (g.companies_.count(c.company_id)) r.fail("duplicate company_id \"" + c.company_id + "\"");
    g.companies_.emplace(c.company_id, std::move(c));
  }
  for (const auto& [id, c] : g.companies_)
    if (c.parent_id && !g.companies_.count(*c.parent_id))
      throw Error(ErrorCode::kUnknownParent, id + " -> " + *c.parent_id);
  // Any walk longer than the company count revisits a node.
  for (const auto& [id, c] : g.companies_) {
    const Company* cur = &c;
    for (std::size_t steps = 0; cur->parent_id; ++steps) {
      if (steps > g.companies_.size()) throw Error(ErrorCode::kCycleDetected, "ownership chain of " + id);
      cur = &g.companies_.find(*cur->parent_id)->second;
    }
  }
  g.domains_ = traffic::TrackingDomainDb(std::move(domain_owner));
  return g;
}

CompanyGraph CompanyGraph::load_file(const std::filesystem::path& path) { return load(read_text_file(path)); }

const Company* CompanyGraph::find(std::string_view id) const {
  auto it = companies_.find(id);
  return it == companies_.end() ? nullptr : &it->second;
}

const Company& CompanyGraph::at(std::string_view id) const {
  const Company* c = find(id);
  if (!c) throw Error(ErrorCode::kUnknownCompany, std::string(id));
  return *c;
}

std::vector<const Company*> CompanyGraph::chain(std::string_view id) const {
  std::vector<const Company*> out{&at(id)};
  while (out.back()->parent_id) out.push_back(&at(*out.back()->parent_id));
  return out;
}

const Company& CompanyGraph::resolve_root(std::string_view id) const { return *chain(id).back(); }

std::optional<HostOwner> CompanyGraph::company_for_host(std::string_view host) const {
  auto hit = domains_.lookup(host);
  if (!hit) return std::nullopt;
  return HostOwner{hit->company_id, resolve_root(hit->company_id).company_id, hit->domain};
}

std::set<std::string> CompanyGraph::jurisdictions(const std::set<std::string>& ids, bool include_chain) const {
  std::set<std::string> out;
  for (const auto& id : ids) {
    if (!include_chain) {
      out.insert(at(id).country);
      continue;
    }
    for (const Company* c : chain(id)) out.insert(c->country);
  }
  return out;
}

}  // namespace footprint::companies
