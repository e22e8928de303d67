#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "afcsim/afc_server.hpp"

namespace afcsim::afc {

// Anything that can answer the availability question for a location. Used to
// compare independent implementations request by request.
class AvailabilityEngine {
 public:
  virtual ~AvailabilityEngine() = default;
  virtual std::string name() const = 0;
  virtual std::vector<ChannelGrant> compute(const geo::LocationEllipse& loc,
                                            std::span<const int> bandwidths) const = 0;
};

// compute_availability over a fixed database and configuration.
class ReferenceEngine final : public AvailabilityEngine {
 public:
  ReferenceEngine(std::string name, IncumbentDatabase db, propagation::PropagationConfig pcfg,
                  propagation::ProtectionConfig prot);

  std::string name() const override { return name_; }
  std::vector<ChannelGrant> compute(const geo::LocationEllipse& loc,
                                    std::span<const int> bandwidths) const override;

 private:
  std::string name_;
  IncumbentDatabase db_;
  propagation::PropagationConfig pcfg_;
  propagation::ProtectionConfig prot_;
};

struct ChannelDivergence {
  spectrum::ChannelId channel;
  std::optional<double> eirp_a_dbm;
  std::optional<double> eirp_b_dbm;
};

struct RequestDivergence {
  std::string request_id;
  std::vector<ChannelDivergence> only_in_a;
  std::vector<ChannelDivergence> only_in_b;
  std::vector<ChannelDivergence> eirp_deltas;
};

struct DivergenceReport {
  std::string engine_a;
  std::string engine_b;
  double tolerance_db = 0.1;
  std::vector<RequestDivergence> requests;  // only requests that diverge

  bool empty() const noexcept { return requests.empty(); }
};

DivergenceReport differential_compare(std::span<const SpectrumInquiryRequest> requests,
                                      const AvailabilityEngine& engine_a,
                                      const AvailabilityEngine& engine_b,
                                      double tolerance_db = 0.1);

}  // namespace afcsim::afc
