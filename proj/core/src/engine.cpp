#include "afcsim/engine.hpp"

#include <cmath>
#include <map>

namespace afcsim::afc {

ReferenceEngine::ReferenceEngine(std::string name, IncumbentDatabase db,
                                 propagation::PropagationConfig pcfg,
                                 propagation::ProtectionConfig prot)
    : name_(std::move(name)), db_(std::move(db)), pcfg_(pcfg), prot_(prot) {}

std::vector<ChannelGrant> ReferenceEngine::compute(const geo::LocationEllipse& loc,
                                                   std::span<const int> bandwidths) const {
  return compute_availability(loc, bandwidths, db_, pcfg_, prot_);
}

DivergenceReport differential_compare(std::span<const SpectrumInquiryRequest> requests,
                                      const AvailabilityEngine& engine_a,
                                      const AvailabilityEngine& engine_b, double tolerance_db) {
  DivergenceReport report{engine_a.name(), engine_b.name(), tolerance_db, {}};
  for (const auto& req : requests) {
    std::map<spectrum::ChannelId, double> a, b;
    for (const auto& g : engine_a.compute(req.location, req.inquired_bandwidths)) {
      a[g.channel] = g.max_eirp_dbm;
    }
    for (const auto& g : engine_b.compute(req.location, req.inquired_bandwidths)) {
      b[g.channel] = g.max_eirp_dbm;
    }

    RequestDivergence div{req.request_id, {}, {}, {}};
    for (const auto& [ch, eirp] : a) {
      auto it = b.find(ch);
      if (it == b.end()) {
        div.only_in_a.push_back({ch, eirp, std::nullopt});
      } else if (std::abs(eirp - it->second) > tolerance_db) {
        div.eirp_deltas.push_back({ch, eirp, it->second});
      }
    }
    for (const auto& [ch, eirp] : b) {
      if (!a.contains(ch)) div.only_in_b.push_back({ch, std::nullopt, eirp});
    }
    if (!div.only_in_a.empty() || !div.only_in_b.empty() || !div.eirp_deltas.empty()) {
      report.requests.push_back(std::move(div));
    }
  }
  return report;
}

}  // namespace afcsim::afc
