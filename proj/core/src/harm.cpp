#include "afcsim/harm.hpp"

#include <algorithm>
#include <set>

#include "afcsim/errors.hpp"

namespace afcsim::scenario {

HarmAssessment assess_harm(const std::vector<TransmitterInput>& inputs, const World& world) {
  HarmAssessment out;
  std::set<std::pair<std::string, spectrum::ChannelId>> violating;

  for (const auto& tx : inputs) {
    if (tx.phase != ap::Phase::kAuthorized || !tx.operating) continue;
    for (const auto& link : world.incumbents.fs_links) {
      if (!propagation::is_co_channel(link, tx.operating->channel)) continue;

      const double raw = geo::haversine_distance(tx.true_position, link.rx_location);
      double gain = link.max_gain_dbi;
      if (raw >= 1e-6) gain = propagation::rx_gain_dbi(link, tx.true_position);

      HarmRow row;
      row.ap_id = tx.ap_id;
      row.link_id = link.id;
      row.channel = tx.operating->channel;
      row.eirp_dbm = tx.operating->max_eirp_dbm;
      row.distance_m = raw;
      row.i_over_n_db = propagation::i_over_n_db(link, row.eirp_dbm, std::max(1.0, raw), gain,
                                                 world.propagation);
      row.violated = row.i_over_n_db > world.protection.i_over_n_limit_db;

      auto [it, inserted] = out.metrics.worst_i_over_n_db.try_emplace(link.id, row.i_over_n_db);
      if (!inserted) it->second = std::max(it->second, row.i_over_n_db);
      if (row.violated) violating.emplace(tx.ap_id, row.channel);
      out.rows.push_back(std::move(row));
    }
  }
  out.metrics.violation_count = static_cast<int>(violating.size());
  return out;
}

}  // namespace afcsim::scenario
